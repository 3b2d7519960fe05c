"""Constant-time arithmetic modulo the scheme primes.

Every function here is compiled with numba and written without data-dependent
branches; conditional corrections are arithmetic selects driven by sign masks.
They accept Python ints, numpy int64 scalars, or int64 arrays (elementwise).
"""

from __future__ import annotations

from numba import njit

Q7681 = 7681


@njit(cache=True)
def _sub_if_ge(d, q):
    # t < 0 exactly when d < q; add q back in that case only
    t = d - q
    return t + q * ((t >> 62) & 1)


@njit(cache=True)
def reduce_shift_add(c):
    """Reduce c in [0, 7680**2] modulo 7681 with adds and shifts only.

    The input is split into 13 + 4 + 4 + 4 + 1 bits and folded using
    2**13 = -1 - 2**9 (mod 7681).
    """
    c0 = c & 0x1FFF
    c1 = (c >> 13) & 0xF
    c2 = (c >> 17) & 0xF
    c3 = (c >> 21) & 0xF
    c4 = (c >> 25) & 0x1
    t0 = c4 + c3
    t1 = t0 + c2
    t2 = t1 + c1
    t3 = (t2 << 1) - t0
    t4 = (t3 << 4) - t1
    t5 = (t4 << 4) - t2
    t6 = t5 + c0
    d = -(c4 << 12) + t6
    # d lies in [-3857, 26866]: one conditional add, then three conditional subtracts
    d = d + Q7681 * ((d >> 62) & 1)
    d = _sub_if_ge(d, Q7681)
    d = _sub_if_ge(d, Q7681)
    d = _sub_if_ge(d, Q7681)
    return d


@njit(cache=True)
def _bitlen(x):
    b = 0
    while x:
        x >>= 1
        b += 1
    return b


@njit(cache=True)
def reduce_barrett(c, q):
    """Reduce 0 <= c < q**2 modulo q using a precomputed reciprocal."""
    k = 2 * _bitlen(q - 1)
    m = (1 << k) // q
    r = c - ((c * m) >> k) * q
    return _sub_if_ge(r, q)


@njit(cache=True)
def mod_add(a, b, q):
    return _sub_if_ge(a + b, q)


@njit(cache=True)
def mod_sub(a, b, q):
    d = a - b
    return d + q * ((d >> 62) & 1)


@njit(cache=True)
def mod_mul(a, b, q):
    c = a * b
    if q == Q7681:  # branch on the public modulus only
        return reduce_shift_add(c)
    return reduce_barrett(c, q)


@njit(cache=True)
def div_by_2(x, q):
    """Halve x modulo odd q: (x >> 1) + ((q + 1) / 2) * (x & 1)."""
    return (x >> 1) + ((q + 1) >> 1) * (x & 1)
