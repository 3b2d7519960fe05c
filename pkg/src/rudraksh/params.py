"""Named parameter sets and the byte sizes derived from them."""

from __future__ import annotations

import os
from dataclasses import dataclass, field


class ConfigError(ValueError):
    """Raised for unknown or inconsistent parameter sets."""


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def _prime_factors(x: int) -> list[int]:
    out = []
    i = 2
    while i * i <= x:
        if x % i == 0:
            out.append(i)
            while x % i == 0:
                x //= i
        i += 1
    if x > 1:
        out.append(x)
    return out


def smallest_root_of_unity(order: int, q: int) -> int:
    """Smallest element of Z_q* with multiplicative order exactly `order`."""
    if (q - 1) % order:
        raise ConfigError(f"no element of order {order} modulo {q}")
    factors = _prime_factors(order)
    for g in range(2, q):
        if pow(g, order, q) == 1 and all(pow(g, order // f, q) != 1 for f in factors):
            return g
    raise ConfigError(f"no element of order {order} modulo {q}")


@dataclass(frozen=True)
class ParamSet:
    name: str
    ell: int
    n: int
    q: int
    log_q: int
    log_p: int
    log_t: int
    B: int
    eta1: int = 2
    eta2: int = 2
    len_K: int = 128
    repeat: int = 1
    zeta: int = field(init=False)

    def __post_init__(self):
        n, q = self.n, self.q
        if n < 2 or n & (n - 1):
            raise ConfigError(f"{self.name}: n must be a power of two")
        if not _is_prime(q) or (q - 1) % (2 * n):
            raise ConfigError(f"{self.name}: q must be a prime with 2n | q-1")
        if self.log_q != (q - 1).bit_length():
            raise ConfigError(f"{self.name}: log_q must be ceil(log2 q)")
        if self.n * self.B != self.len_K * self.repeat:
            raise ConfigError(f"{self.name}: n*B must equal len_K*repeat")
        if not self.log_t + self.B <= self.log_p <= self.log_q:
            raise ConfigError(f"{self.name}: need log_t+B <= log_p <= log_q")
        if self.len_K % 8:
            raise ConfigError(f"{self.name}: len_K must be a whole number of bytes")
        object.__setattr__(self, "zeta", smallest_root_of_unity(2 * n, q))

    @property
    def log_v(self) -> int:
        """Bits per coefficient of the second ciphertext component."""
        return self.log_t + self.B

    @property
    def seed_bytes(self) -> int:
        return self.len_K // 8


@dataclass(frozen=True)
class SizeReport:
    pk_bytes: int
    sk_bytes: int
    ct_bytes: int
    u_bytes: int
    v_bytes: int


PARAMSETS = {
    "KEM-poly32": ParamSet("KEM-poly32", ell=21, n=32, q=31873, log_q=15, log_p=12, log_t=3, B=4),
    "KEM-poly64": ParamSet("KEM-poly64", ell=9, n=64, q=7681, log_q=13, log_p=10, log_t=3, B=2),
    "KEM-poly128": ParamSet("KEM-poly128", ell=4, n=128, q=3329, log_q=12, log_p=10, log_t=2, B=1),
}

DEFAULT_PARAMS = "KEM-poly64"
ENV_VAR = "RUDRAKSH_PARAMS"


def paramset(name: str) -> ParamSet:
    """Look up a set by full name ("KEM-poly64") or short name ("poly64")."""
    key = name if name.startswith("KEM-") else "KEM-" + name
    try:
        return PARAMSETS[key]
    except KeyError:
        raise ConfigError(f"unknown parameter set {name!r}") from None


def default_paramset_name() -> str:
    return os.environ.get(ENV_VAR) or DEFAULT_PARAMS


def _packed_bytes(count: int, bits: int) -> int:
    return (count * bits + 7) // 8


def derived_sizes(ps: ParamSet) -> SizeReport:
    poly_q = _packed_bytes(ps.n, ps.log_q)
    pk = ps.seed_bytes + ps.ell * poly_q
    u = ps.ell * _packed_bytes(ps.n, ps.log_p)
    v = _packed_bytes(ps.n, ps.log_v)
    sk = ps.ell * poly_q + 2 * ps.seed_bytes + pk
    return SizeReport(pk_bytes=pk, sk_bytes=sk, ct_bytes=u + v, u_bytes=u, v_bytes=v)
