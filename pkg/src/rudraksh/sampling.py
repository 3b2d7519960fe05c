"""Seed expansion: the uniform public matrix and the binomial secrets.

Both samplers read the XOF stream LSB-first within each byte, bytes in stream
order. Matrix entries come out directly in the NTT domain.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .ascon import RATE, XOF_INIT_STATE, Xof, absorb_all, nonce_bytes, prf, squeeze_block, xof_kernel
from .field import mod_add, mod_mul
from .params import ParamSet


class BitReader:
    """Reads fixed-width little-endian bit chunks from a byte source.

    `source` is either a bytes object (finite) or an object with a
    `squeeze(n)` method, which is asked for more bytes on demand.
    """

    def __init__(self, source):
        if isinstance(source, (bytes, bytearray)):
            self._buf, self._more = bytes(source), None
        else:
            self._buf, self._more = b"", source
        self.cursor = 0  # in bits

    def read(self, bits: int) -> int:
        end = self.cursor + bits
        need = (end + 7) // 8
        if need > len(self._buf):
            if self._more is None:
                raise EOFError("bit source exhausted")
            self._buf += self._more.squeeze(max(need - len(self._buf), RATE))
        lo, hi = self.cursor // 8, need
        word = int.from_bytes(self._buf[lo:hi], "little") >> (self.cursor % 8)
        self.cursor = end
        return word & ((1 << bits) - 1)


def rejection_sample(reader: BitReader, count: int, q: int, bits: int) -> list[int]:
    """Draw `count` values below q from consecutive `bits`-wide chunks."""
    out = []
    while len(out) < count:
        chunk = reader.read(bits)
        if chunk < q:
            out.append(chunk)
    return out


def _matrix_input(seed_A: bytes, row: int, col: int) -> bytes:
    return bytes(seed_A) + nonce_bytes((row, col))


def sample_uniform_poly_reference(seed_A: bytes, row: int, col: int, ps: ParamSet) -> np.ndarray:
    """Straightforward rendering of the matrix sampler (used to check the kernel)."""
    x = Xof()
    x.absorb(_matrix_input(seed_A, row, col))
    return np.array(rejection_sample(BitReader(x), ps.n, ps.q, ps.log_q), dtype=np.int64)


@njit(cache=True)
def uniform_kernel(init, data, q, bits, out):
    """Fill `out` by rejection sampling from xof(data); returns chunks consumed."""
    s = init.copy()
    absorb_all(s, data)
    block = np.empty(RATE, dtype=np.uint8)
    pos = RATE
    acc = 0
    nacc = 0
    drawn = 0
    filled = 0
    mask = (1 << bits) - 1
    while filled < len(out):
        while nacc < bits:
            if pos == RATE:
                squeeze_block(s, block, 0)
                pos = 0
            acc |= np.int64(block[pos]) << nacc
            nacc += 8
            pos += 1
        chunk = acc & mask
        acc >>= bits
        nacc -= bits
        drawn += 1
        if chunk < q:
            out[filled] = chunk
            filled += 1
    return drawn


@njit(cache=True)
def matvec_kernel(init, seed, vec_hat, transposed, q, bits):
    """Row i of the result is sum_j A[i][j] o vec_hat[j], with A expanded one entry at a time."""
    ell, n = vec_hat.shape
    data = np.empty(len(seed) + 2, dtype=np.uint8)
    data[: len(seed)] = seed
    poly = np.empty(n, dtype=np.int64)
    out = np.zeros((ell, n), dtype=np.int64)
    for i in range(ell):
        for j in range(ell):
            if transposed:
                data[len(seed)] = j
                data[len(seed) + 1] = i
            else:
                data[len(seed)] = i
                data[len(seed) + 1] = j
            uniform_kernel(init, data, q, bits, poly)
            for k in range(n):
                out[i, k] = mod_add(out[i, k], mod_mul(poly[k], vec_hat[j, k], q), q)
    return out


def sample_uniform_poly(seed_A: bytes, row: int, col: int, ps: ParamSet) -> np.ndarray:
    out = np.empty(ps.n, dtype=np.int64)
    data = np.frombuffer(_matrix_input(seed_A, row, col), dtype=np.uint8)
    uniform_kernel(XOF_INIT_STATE, data, ps.q, ps.log_q, out)
    return out


def gen_matrix(seed_A: bytes, transposed: bool, ps: ParamSet) -> np.ndarray:
    """Materialize the ell x ell matrix (shape (ell, ell, n)); entry (i, j) uses nonce [i, j]."""
    A = np.empty((ps.ell, ps.ell, ps.n), dtype=np.int64)
    for i in range(ps.ell):
        for j in range(ps.ell):
            A[i, j] = sample_uniform_poly(seed_A, j, i, ps) if transposed else sample_uniform_poly(seed_A, i, j, ps)
    return A


def matrix_vector(seed_A: bytes, vec_hat: np.ndarray, transposed: bool, ps: ParamSet) -> np.ndarray:
    """A o vec_hat (or A^T o vec_hat) without storing the matrix."""
    seed = np.frombuffer(bytes(seed_A), dtype=np.uint8)
    return matvec_kernel(XOF_INIT_STATE, seed, np.ascontiguousarray(vec_hat, dtype=np.int64),
                         transposed, ps.q, ps.log_q)


def cbd_from_bytes(buf: bytes, n: int, q: int) -> np.ndarray:
    """Binomial (eta = 2) coefficients from nibbles: popcount(bits 0,1) - popcount(bits 2,3)."""
    out = np.empty(n, dtype=np.int64)
    cbd_nibbles(np.frombuffer(bytes(buf), dtype=np.uint8), q, out)
    return out


@njit(cache=True)
def cbd_nibbles(buf, q, out):
    for k in range(len(out)):
        nib = (np.int64(buf[k >> 1]) >> (4 * (k & 1))) & 0xF
        val = (nib & 1) + ((nib >> 1) & 1) - ((nib >> 2) & 1) - ((nib >> 3) & 1)
        out[k] = val + q * ((val >> 62) & 1)


@njit(cache=True)
def cbd_vec_kernel(init, seed, first_nonce, count, n, q):
    data = np.empty(len(seed) + 1, dtype=np.uint8)
    data[: len(seed)] = seed
    out = np.empty((count, n), dtype=np.int64)
    for i in range(count):
        data[len(seed)] = first_nonce + i
        cbd_nibbles(xof_kernel(init, data, n // 2), q, out[i])
    return out


def _check_eta(ps: ParamSet) -> None:
    if ps.eta1 != 2 or ps.eta2 != 2:
        raise NotImplementedError("only the eta = 2 binomial sampler is implemented")


def sample_cbd_poly(seed: bytes, nonce: int, ps: ParamSet) -> np.ndarray:
    _check_eta(ps)
    return cbd_from_bytes(prf(seed, nonce, ps.n // 2), ps.n, ps.q)


def sample_cbd_vec(seed: bytes, first_nonce: int, count: int, ps: ParamSet) -> np.ndarray:
    """Polynomials for nonces first_nonce .. first_nonce + count - 1, one per row."""
    _check_eta(ps)
    return cbd_vec_kernel(XOF_INIT_STATE, np.frombuffer(bytes(seed), dtype=np.uint8),
                          first_nonce, count, ps.n, ps.q)


def expand_secret_error(seed_se: bytes, ps: ParamSet) -> tuple[np.ndarray, np.ndarray]:
    """Secret vector from nonces 0..ell-1, error vector from ell..2*ell-1."""
    both = sample_cbd_vec(seed_se, 0, 2 * ps.ell, ps)
    return both[: ps.ell], both[ps.ell:]
