"""Decryption-failure analysis by exact convolution of noise distributions,
repetition-code failure combinators, and the working-memory model.

Distributions are stored as integer weights in fixed point: probability of
value lo + i is weights[i] / 2**PREC. Convolutions multiply the weight vectors
as big integers (Kronecker substitution) and round back to PREC bits, so the
only error is one rounding step per operation, far below 2**-400.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from .codec import centered, compress, decompress
from .params import PARAMSETS, ParamSet, derived_sizes

PREC = 512
MAX_SUPPORT = 1 << 20

ASCON_STATE_BITS = 320
KECCAK_STATE_BITS = 1600


class AnalysisError(ArithmeticError):
    pass


@dataclass(frozen=True)
class NoiseDistribution:
    lo: int
    weights: tuple[int, ...]

    @classmethod
    def from_pmf(cls, pmf: dict[int, Fraction]) -> NoiseDistribution:
        lo, hi = min(pmf), max(pmf)
        w = [0] * (hi - lo + 1)
        for v, p in pmf.items():
            w[v - lo] = round(Fraction(p) * (1 << PREC))
        return cls(lo, tuple(w))._trimmed()

    def _trimmed(self) -> NoiseDistribution:
        w = self.weights
        a, b = 0, len(w)
        while a < b and w[a] == 0:
            a += 1
        while b > a and w[b - 1] == 0:
            b -= 1
        if a == b:
            raise AnalysisError("distribution lost all mass")
        if b - a > MAX_SUPPORT:
            raise AnalysisError(f"support of {b - a} values exceeds {MAX_SUPPORT}")
        return NoiseDistribution(self.lo + a, tuple(w[a:b]))

    @property
    def hi(self) -> int:
        return self.lo + len(self.weights) - 1

    def prob(self, v: int) -> Fraction:
        i = v - self.lo
        return Fraction(self.weights[i], 1 << PREC) if 0 <= i < len(self.weights) else Fraction(0)

    def pmf(self) -> dict[int, Fraction]:
        return {self.lo + i: Fraction(w, 1 << PREC) for i, w in enumerate(self.weights) if w}

    def total(self) -> Fraction:
        return Fraction(sum(self.weights), 1 << PREC)

    def moment(self, k: int, about: Fraction = Fraction(0)) -> Fraction:
        s = sum(w * (self.lo + i - about) ** k for i, w in enumerate(self.weights))
        return Fraction(s) / (1 << PREC) / self.total()

    def mean(self) -> Fraction:
        return self.moment(1)

    def variance(self) -> Fraction:
        return self.moment(2, self.mean())

    def tail(self, bound: Fraction) -> Fraction:
        """P(|X| > bound)."""
        s = sum(w for i, w in enumerate(self.weights) if abs(self.lo + i) > bound)
        return Fraction(s, 1 << PREC)

    def __neg__(self) -> NoiseDistribution:
        return NoiseDistribution(-self.hi, tuple(reversed(self.weights)))


def _rescale(w: int) -> int:
    return (w + (1 << (PREC - 1))) >> PREC


def _kronecker_mul(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    """Coefficients of the polynomial product of two nonnegative integer sequences."""
    width = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length()
    nbytes = (width + 7) // 8

    def pack(seq):
        return gmpy2.mpz(int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in seq), "little"))

    size = len(a) + len(b) - 1
    raw = (pack(a) * pack(b)).to_bytes(size * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(size)]


def convolve(a: NoiseDistribution, b: NoiseDistribution) -> NoiseDistribution:
    """Distribution of X + Y for independent X ~ a, Y ~ b."""
    if len(a.weights) + len(b.weights) - 1 > MAX_SUPPORT:
        raise AnalysisError("convolution support too large")
    w = _kronecker_mul(a.weights, b.weights)
    return NoiseDistribution(a.lo + b.lo, tuple(_rescale(x) for x in w))._trimmed()


def product_dist(a: NoiseDistribution, b: NoiseDistribution) -> NoiseDistribution:
    """Distribution of X * Y for independent X ~ a, Y ~ b."""
    acc: dict[int, int] = {}
    for i, wa in enumerate(a.weights):
        for j, wb in enumerate(b.weights):
            v = (a.lo + i) * (b.lo + j)
            acc[v] = acc.get(v, 0) + wa * wb
    lo, hi = min(acc), max(acc)
    return NoiseDistribution(lo, tuple(_rescale(acc.get(v, 0)) for v in range(lo, hi + 1)))._trimmed()


def convolve_power(d: NoiseDistribution, k: int) -> NoiseDistribution:
    """k-fold self-convolution by repeated squaring."""
    if k < 1:
        raise ValueError("k must be positive")
    result = None
    while k:
        if k & 1:
            result = d if result is None else convolve(result, d)
        k >>= 1
        if k:
            d = convolve(d, d)
    return result


def point_mass(v: int = 0) -> NoiseDistribution:
    return NoiseDistribution(v, (1 << PREC,))


def cbd_dist(eta: int) -> NoiseDistribution:
    """popcount(a) - popcount(b) for independent uniform eta-bit a and b."""
    if eta < 1:
        raise ValueError("eta must be at least 1")
    den = 4 ** eta
    return NoiseDistribution.from_pmf(
        {k: Fraction(math.comb(2 * eta, eta + k), den) for k in range(-eta, eta + 1)})


def rounding_dist(d: int, q: int) -> NoiseDistribution:
    """Centered error x - decompress(compress(x, d), d) over uniform x in [0, q)."""
    x = np.arange(q, dtype=np.int64)
    if d >= (q - 1).bit_length():
        return point_mass(0)
    err = centered(x - decompress(compress(x, d, q), d, q), q)
    values, counts = np.unique(err, return_counts=True)
    return NoiseDistribution.from_pmf({int(v): Fraction(int(c), q) for v, c in zip(values, counts)})


def decryption_noise_dist(ps: ParamSet) -> NoiseDistribution:
    """Per-coefficient distribution of e^T s' - s^T (e' + du) + e'' + dv."""
    k = ps.ell * ps.n
    cbd1, cbd2 = cbd_dist(ps.eta1), cbd_dist(ps.eta2)
    es = convolve_power(product_dist(cbd1, cbd1), k)
    su = convolve_power(product_dist(cbd1, convolve(cbd2, rounding_dist(ps.log_p, ps.q))), k)
    total = convolve(es, -su)
    total = convolve(total, cbd2)
    # dv is decompressed minus original, the negation of rounding_dist
    return convolve(total, -rounding_dist(ps.log_v, ps.q))


def coefficient_failure(noise: NoiseDistribution, ps: ParamSet) -> Fraction:
    return noise.tail(Fraction(ps.q, 1 << (ps.B + 1)))


def repeat_failure(f, repeat: int):
    """Probability that a majority vote over `repeat` noisy copies is wrong.

    Each copy fails independently with probability f; for even repeat a tie
    is resolved by a fair coin, so it counts with weight one half.
    """
    if repeat < 1:
        raise ValueError("repeat must be positive")
    g = 1 - f
    total = sum(math.comb(repeat, k) * f ** k * g ** (repeat - k) for k in range(repeat // 2 + 1, repeat + 1))
    if repeat % 2 == 0:
        h = repeat // 2
        total += Fraction(1, 2) * math.comb(repeat, h) * f ** h * g ** h
    return total


def _log2(p: Fraction) -> float:
    if p == 0:
        return -math.inf
    return math.log2(p.numerator) - math.log2(p.denominator)


def failure_probability(ps: ParamSet, noise: NoiseDistribution | None = None) -> float:
    """log2 of the union bound on the probability that decapsulation fails."""
    noise = noise if noise is not None else decryption_noise_dist(ps)
    per_bit = repeat_failure(coefficient_failure(noise, ps), ps.repeat)
    coeffs = Fraction(ps.len_K * ps.repeat, ps.B)
    return _log2(min(Fraction(1), coeffs * per_bit))


@dataclass(frozen=True)
class SchemeShape:
    """Just enough of a scheme to feed the memory model."""
    name: str
    ell: int
    n: int
    log_q: int
    xof_state_bits: int


COMPARISON_SCHEMES = (
    SchemeShape("Kyber", ell=2, n=256, log_q=12, xof_state_bits=KECCAK_STATE_BITS),
    SchemeShape("NewHope", ell=1, n=512, log_q=14, xof_state_bits=KECCAK_STATE_BITS),
)

# design-time figures that are not recomputed here: log2 failure and
# (quantum, classical) core-SVP security
REFERENCE_FAILURE_LOG2 = {"KEM-poly32": -113, "KEM-poly64": -128, "KEM-poly128": -179}
REFERENCE_SECURITY = {"KEM-poly32": (105, 116), "KEM-poly64": (104, 114), "KEM-poly128": (101, 111)}


def memory_estimate(ps, xof_state_bits: int = ASCON_STATE_BITS) -> int:
    """Bits for four polynomials, one vector of polynomials, and the sponge
    state plus an equally sized buffer for hash outputs and z."""
    poly = ps.n * ps.log_q
    return 4 * poly + ps.ell * poly + 2 * xof_state_bits


def memory_comparison() -> list[tuple[str, int]]:
    rows = [(ps.name, memory_estimate(ps, ASCON_STATE_BITS)) for ps in PARAMSETS.values()]
    rows += [(s.name, memory_estimate(s, s.xof_state_bits)) for s in COMPARISON_SCHEMES]
    return rows


def parameter_report(names=None) -> list[dict]:
    rows = []
    for name in names or PARAMSETS:
        ps = PARAMSETS[name]
        sizes = derived_sizes(ps)
        rows.append({
            "name": ps.name, "ell": ps.ell, "n": ps.n, "q": ps.q,
            "log_q": ps.log_q, "log_p": ps.log_p, "log_t": ps.log_t, "B": ps.B,
            "eta1": ps.eta1, "eta2": ps.eta2,
            "failure_log2": failure_probability(ps),
            "reference_failure_log2": REFERENCE_FAILURE_LOG2.get(ps.name),
            "pk_bytes": sizes.pk_bytes, "sk_bytes": sizes.sk_bytes, "ct_bytes": sizes.ct_bytes,
            "memory_bits": memory_estimate(ps),
            "security_not_recomputed": REFERENCE_SECURITY.get(ps.name),
        })
    return rows
