"""Ascon-Xof (v1.2) and the hash, PRF and DRBG roles built on it.

State words are big-endian 64-bit integers; the rate is the first word.
"""

from __future__ import annotations

import numpy as np
from numba import njit

RATE = 8
ROUNDS = 12
XOF_IV = 0x00400C0000000000  # key 0, rate 64, 12 rounds, unlimited output

_ROUND_CONSTANTS = np.array([0xF0 - r * 0x10 + r for r in range(12)], dtype=np.uint64)
_M64 = (1 << 64) - 1


@njit(cache=True)
def _rotr(x, r):
    return (x >> np.uint64(r)) | (x << np.uint64(64 - r))


@njit(cache=True)
def permute(s, rounds):
    """Apply the last `rounds` rounds of the Ascon permutation to s in place."""
    for r in range(12 - rounds, 12):
        s[2] ^= _ROUND_CONSTANTS[r]
        # substitution layer, bitsliced
        s[0] ^= s[4]
        s[4] ^= s[3]
        s[2] ^= s[1]
        t0 = ~s[0] & s[1]
        t1 = ~s[1] & s[2]
        t2 = ~s[2] & s[3]
        t3 = ~s[3] & s[4]
        t4 = ~s[4] & s[0]
        s[0] ^= t1
        s[1] ^= t2
        s[2] ^= t3
        s[3] ^= t4
        s[4] ^= t0
        s[1] ^= s[0]
        s[0] ^= s[4]
        s[3] ^= s[2]
        s[2] = ~s[2]
        # linear diffusion layer
        s[0] ^= _rotr(s[0], 19) ^ _rotr(s[0], 28)
        s[1] ^= _rotr(s[1], 61) ^ _rotr(s[1], 39)
        s[2] ^= _rotr(s[2], 1) ^ _rotr(s[2], 6)
        s[3] ^= _rotr(s[3], 10) ^ _rotr(s[3], 17)
        s[4] ^= _rotr(s[4], 7) ^ _rotr(s[4], 41)


def permute_p12(state):
    """Return p12 applied to five 64-bit words (any int sequence); input is untouched."""
    s = np.array([int(w) & _M64 for w in state], dtype=np.uint64)
    permute(s, ROUNDS)
    return tuple(int(w) for w in s)


def _initial_state() -> np.ndarray:
    s = np.array([XOF_IV, 0, 0, 0, 0], dtype=np.uint64)
    permute(s, ROUNDS)
    s.flags.writeable = False
    return s


XOF_INIT_STATE = _initial_state()


@njit(cache=True)
def _load_be(buf, off, length):
    w = np.uint64(0)
    for i in range(length):
        w |= np.uint64(buf[off + i]) << np.uint64(56 - 8 * i)
    return w


@njit(cache=True)
def absorb_all(s, data):
    """Absorb a complete message with 10* padding, permuting after every block."""
    nfull = len(data) // RATE
    for b in range(nfull):
        s[0] ^= _load_be(data, b * RATE, RATE)
        permute(s, ROUNDS)
    rem = len(data) - nfull * RATE
    s[0] ^= _load_be(data, nfull * RATE, rem)
    s[0] ^= np.uint64(0x80) << np.uint64(56 - 8 * rem)
    permute(s, ROUNDS)


@njit(cache=True)
def squeeze_block(s, out, off):
    """Write one rate block (or what fits) of output at out[off:], then permute."""
    w = s[0]
    for i in range(min(RATE, len(out) - off)):
        out[off + i] = np.uint8((w >> np.uint64(56 - 8 * i)) & np.uint64(0xFF))
    permute(s, ROUNDS)


@njit(cache=True)
def xof_kernel(init, data, out_len):
    s = init.copy()
    absorb_all(s, data)
    out = np.empty(out_len, dtype=np.uint8)
    for off in range(0, out_len, RATE):
        squeeze_block(s, out, off)
    return out


def _u8(data) -> np.ndarray:
    return np.frombuffer(bytes(data), dtype=np.uint8)


def xof(data: bytes, out_len: int) -> bytes:
    return xof_kernel(XOF_INIT_STATE, _u8(data), out_len).tobytes()


class Xof:
    """Incremental Ascon-Xof: any number of absorb() calls, then squeeze() calls."""

    def __init__(self):
        self._s = XOF_INIT_STATE.copy()
        self._pending = b""
        self._squeezing = False
        self._out = b""

    def absorb(self, data: bytes) -> None:
        if self._squeezing:
            raise RuntimeError("cannot absorb after squeezing has started")
        buf = self._pending + bytes(data)
        nfull = len(buf) // RATE
        for b in range(nfull):
            self._s[0] ^= np.uint64(int.from_bytes(buf[b * RATE:(b + 1) * RATE], "big"))
            permute(self._s, ROUNDS)
        self._pending = buf[nfull * RATE:]

    def squeeze(self, n: int) -> bytes:
        if not self._squeezing:
            absorb_all(self._s, _u8(self._pending))
            self._pending = b""
            self._squeezing = True
        out = bytearray(self._out)
        block = np.empty(RATE, dtype=np.uint8)
        while len(out) < n:
            squeeze_block(self._s, block, 0)
            out += block.tobytes()
        self._out = bytes(out[n:])
        return bytes(out[:n])


def hash_H(data: bytes, out_len: int = 16) -> bytes:
    return xof(data, out_len)


def hash_G(data: bytes, half_len: int = 16) -> tuple[bytes, bytes]:
    out = xof(data, 2 * half_len)
    return out[:half_len], out[half_len:]


def nonce_bytes(nonce) -> bytes:
    """Normalize a nonce given as an int (one byte) or a (row, col) pair."""
    if isinstance(nonce, int):
        return bytes([nonce])
    return bytes(nonce)


def prf(seed: bytes, nonce, out_len: int) -> bytes:
    return xof(bytes(seed) + nonce_bytes(nonce), out_len)


class KatDrbg:
    """Deterministic byte source: call i returns xof(seed || le32(i), length)."""

    def __init__(self, seed: bytes):
        self.seed = bytes(seed)
        self.counter = 0

    def random_bytes(self, length: int) -> bytes:
        out = xof(self.seed + self.counter.to_bytes(4, "little"), length)
        self.counter += 1
        return out
