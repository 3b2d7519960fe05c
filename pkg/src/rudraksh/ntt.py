"""Negacyclic NTT over Z_q[x]/(x^n + 1).

Forward transforms take natural-order coefficients and emit evaluations in
bit-reversed order: ntt(x)[i] = sum_j x[j] * zeta**((2*brv(i) + 1) * j).
Everything that lives in the NTT domain (the sampled matrix, keys) uses this
ordering, and intt consumes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

from .field import div_by_2, mod_add, mod_mul, mod_sub
from .params import ParamSet


def bitrev(x: int, bits: int) -> int:
    return int(format(x, f"0{bits}b")[::-1], 2) if bits else 0


@dataclass(frozen=True, eq=False)
class TwiddleTable:
    q: int
    n: int
    zeta: int
    zetas: np.ndarray  # zetas[m] = zeta**brv(m), m = 0..n-1; the forward pass reads m = 1..n-1
    inv_zetas: np.ndarray  # inv_zetas[m] = -zeta**(-brv(m)), consumed by the inverse pass

    @property
    def butterflies(self) -> int:
        return (self.n // 2) * (self.n.bit_length() - 1)


@lru_cache(maxsize=None)
def build_twiddles(ps: ParamSet) -> TwiddleTable:
    q, n, zeta = ps.q, ps.n, ps.zeta
    bits = n.bit_length() - 1
    zetas = np.array([pow(zeta, bitrev(m, bits), q) for m in range(n)], dtype=np.int64)
    inv_zetas = np.array([(-pow(zeta, -bitrev(m, bits), q)) % q for m in range(n)], dtype=np.int64)
    zetas.flags.writeable = False
    inv_zetas.flags.writeable = False
    return TwiddleTable(q, n, zeta, zetas, inv_zetas)


@njit(cache=True)
def ntt_rows(x, zetas, q):
    """In-place Cooley-Tukey transform of every row of a 2-D int64 array."""
    n = x.shape[1]
    for r in range(x.shape[0]):
        m = 1
        d = n >> 1
        while d >= 1:
            for start in range(0, n, 2 * d):
                zeta = zetas[m]
                m += 1
                for j in range(start, start + d):
                    t = mod_mul(zeta, x[r, j + d], q)
                    x[r, j + d] = mod_sub(x[r, j], t, q)
                    x[r, j] = mod_add(x[r, j], t, q)
            d >>= 1


@njit(cache=True)
def intt_rows(x, inv_zetas, q):
    """In-place Gentleman-Sande inverse with a halving folded into each butterfly."""
    n = x.shape[1]
    for r in range(x.shape[0]):
        m = n - 1
        d = 1
        while d < n:
            for start in range(n - 2 * d, -1, -2 * d):
                zeta = inv_zetas[m]
                m -= 1
                for j in range(start, start + d):
                    t = x[r, j]
                    x[r, j] = div_by_2(mod_add(x[r, j + d], t, q), q)
                    x[r, j + d] = div_by_2(mod_mul(zeta, mod_sub(x[r, j + d], t, q), q), q)
            d <<= 1


@njit(cache=True)
def pointwise_rows(a, b, q):
    out = np.empty_like(a)
    for r in range(a.shape[0]):
        for i in range(a.shape[1]):
            out[r, i] = mod_mul(a[r, i], b[r, i], q)
    return out


@njit(cache=True)
def pwm_acc_rows(a, b, q):
    n = a.shape[1]
    acc = np.zeros(n, dtype=np.int64)
    for r in range(a.shape[0]):
        for i in range(n):
            acc[i] = mod_add(acc[i], mod_mul(a[r, i], b[r, i], q), q)
    return acc


def _as_rows(x) -> tuple[np.ndarray, bool]:
    arr = np.array(x, dtype=np.int64)  # always a fresh copy
    if arr.ndim == 1:
        return arr[None, :], True
    return arr, False


def ntt(x, ps: ParamSet) -> np.ndarray:
    """Forward transform of a polynomial (1-D) or a vector of polynomials (2-D)."""
    tw = build_twiddles(ps)
    rows, single = _as_rows(x)
    ntt_rows(rows, tw.zetas, ps.q)
    return rows[0] if single else rows


def intt(xh, ps: ParamSet) -> np.ndarray:
    tw = build_twiddles(ps)
    rows, single = _as_rows(xh)
    intt_rows(rows, tw.inv_zetas, ps.q)
    return rows[0] if single else rows


def pointwise_mul(ah, bh, ps: ParamSet) -> np.ndarray:
    a, single = _as_rows(ah)
    b, _ = _as_rows(bh)
    out = pointwise_rows(a, b, ps.q)
    return out[0] if single else out


def pwm_acc(ah_vec, bh_vec, ps: ParamSet) -> np.ndarray:
    """Inner product of two NTT-domain vectors: sum_i ah_vec[i] o bh_vec[i]."""
    a = np.asarray(ah_vec, dtype=np.int64)
    b = np.asarray(bh_vec, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError(f"vector shape mismatch: {a.shape} vs {b.shape}")
    return pwm_acc_rows(a, b, ps.q)


def poly_mul(a, b, ps: ParamSet) -> np.ndarray:
    """Negacyclic product a*b in Z_q[x]/(x^n + 1)."""
    return intt(pointwise_mul(ntt(a, ps), ntt(b, ps), ps), ps)
