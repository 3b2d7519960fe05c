"""Compression, message encoding and bit packing.

All coefficient functions work elementwise on numpy arrays as well as on ints.
Bit order is LSB-first everywhere: coefficient 0 occupies the lowest bits of
byte 0, and message bit k is bit k % 8 of byte k // 8.
"""

from __future__ import annotations

import numpy as np

from .ascon import hash_H
from .params import ParamSet


class FormatError(ValueError):
    """Raised when a byte string does not parse as the expected object."""


def compress(x, d: int, q: int):
    """round(2**d * x / q) mod 2**d, with the rounding offset q >> 1."""
    return (((np.asarray(x, dtype=np.int64) << d) + (q >> 1)) // q) & ((1 << d) - 1)


def decompress(y, d: int, q: int):
    """round(q * y / 2**d) as (q*y + 2**(d-1)) >> d."""
    return (q * np.asarray(y, dtype=np.int64) + (1 << (d - 1))) >> d


def compress_coeff(x: int, d: int, q: int) -> int:
    return int(compress(x, d, q))


def decompress_coeff(y: int, d: int, q: int) -> int:
    return int(decompress(y, d, q))


def encode(m, ps: ParamSet):
    """Scale B-bit message values up to multiples of about q / 2**B."""
    return (ps.q * np.asarray(m, dtype=np.int64) + (1 << (ps.B - 1))) >> ps.B


def decode(x, ps: ParamSet):
    return (((np.asarray(x, dtype=np.int64) << ps.B) + (ps.q >> 1)) // ps.q) & ((1 << ps.B) - 1)


def encode_coeff(m: int, ps: ParamSet) -> int:
    return int(encode(m, ps))


def decode_coeff(x: int, ps: ParamSet) -> int:
    return int(decode(x, ps))


def centered(x, q: int):
    """Representative of x mod q in (-q/2, q/2]."""
    x = np.asarray(x, dtype=np.int64) % q
    return x - q * (x > q // 2)


def _bytes_to_bits(data: bytes) -> np.ndarray:
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8), bitorder="little")


def arrange_msg(msg: bytes, ps: ParamSet) -> np.ndarray:
    """Spread a len_K-bit message over n coefficients of B bits each.

    With repeat > 1 each message bit is written repeat times in a row.
    """
    if len(msg) != ps.len_K // 8:
        raise FormatError(f"message must be {ps.len_K // 8} bytes")
    bits = np.repeat(_bytes_to_bits(msg), ps.repeat).reshape(ps.n, ps.B).astype(np.int64)
    return (bits << np.arange(ps.B)).sum(axis=1)


def original_msg(mp, ps: ParamSet, tie_key: bytes = b"") -> bytes:
    """Inverse of arrange_msg; with repetition, majority vote per message bit.

    Ties (even repeat only) take bit 0 of H(tie_key || le16(index)).
    """
    mp = np.asarray(mp, dtype=np.int64)
    bits = ((mp[:, None] >> np.arange(ps.B)) & 1).reshape(ps.len_K, ps.repeat)
    ones = bits.sum(axis=1)
    out = (2 * ones > ps.repeat).astype(np.uint8)
    if ps.repeat % 2 == 0:
        for k in np.flatnonzero(2 * ones == ps.repeat):
            out[k] = hash_H(tie_key + int(k).to_bytes(2, "little"))[0] & 1
    return np.packbits(out, bitorder="little").tobytes()


def packed_len(count: int, bits: int) -> int:
    return (count * bits + 7) // 8


def pack_rows(x, bits: int) -> bytes:
    """Pack each row of a 2-D array separately (each row padded to whole bytes)."""
    x = np.asarray(x, dtype=np.int64)
    if x.size and (x.min() < 0 or x.max() >> bits):
        raise ValueError(f"coefficient does not fit in {bits} bits")
    b = ((x[..., None] >> np.arange(bits)) & 1).astype(np.uint8).reshape(x.shape[0], -1)
    return np.packbits(b, axis=1, bitorder="little").tobytes()


def unpack_rows(data: bytes, bits: int, count: int, n: int) -> np.ndarray:
    step = packed_len(n, bits)
    if len(data) != count * step:
        raise FormatError(f"expected {count * step} bytes, got {len(data)}")
    raw = np.frombuffer(bytes(data), dtype=np.uint8).reshape(count, step)
    b = np.unpackbits(raw, axis=1, bitorder="little")
    if b[:, n * bits:].any():
        raise FormatError("nonzero padding bits")
    b = b[:, : n * bits].reshape(count, n, bits).astype(np.int64)
    return (b << np.arange(bits)).sum(axis=2)


def pack_poly(x, bits: int) -> bytes:
    return pack_rows(np.asarray(x)[None, :], bits)


def unpack_poly(data: bytes, bits: int, n: int) -> np.ndarray:
    return unpack_rows(data, bits, 1, n)[0]


pack_vec = pack_rows
unpack_vec = unpack_rows
