"""CPA-secure public-key encryption: the inner scheme of the KEM.

The public key and secret key live in the NTT domain; the matrix is expanded
one entry at a time from its seed and never stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import codec
from .codec import FormatError
from .field import mod_add, mod_sub
from .ntt import intt, ntt, pwm_acc
from .params import ParamSet, derived_sizes
from .sampling import expand_secret_error, matrix_vector, sample_cbd_poly


@dataclass(frozen=True, eq=False)
class PkePublicKey:
    seed_A: bytes
    b_hat: np.ndarray  # (ell, n), NTT domain


@dataclass(frozen=True, eq=False)
class PkeSecretKey:
    s_hat: np.ndarray  # (ell, n), NTT domain


@dataclass(frozen=True, eq=False)
class Ciphertext:
    u: np.ndarray  # (ell, n), log_p-bit values
    v: np.ndarray  # (n,), (log_t + B)-bit values


def pke_keygen(seed_A: bytes, seed_se: bytes, ps: ParamSet, *, with_error: bool = True):
    """b_hat = A o s_hat + e_hat. `with_error=False` drops e (testing hook)."""
    s, e = expand_secret_error(seed_se, ps)
    s_hat = ntt(s, ps)
    b_hat = matrix_vector(seed_A, s_hat, False, ps)
    if with_error:
        b_hat = mod_add(b_hat, ntt(e, ps), ps.q)
    return PkePublicKey(bytes(seed_A), b_hat), PkeSecretKey(s_hat)


def encryption_noise(r: bytes, ps: ParamSet):
    """The (s', e', e'') triple derived from the encryption coin r."""
    s1, e1 = expand_secret_error(r, ps)
    return s1, e1, sample_cbd_poly(r, 2 * ps.ell, ps)


def pke_enc(pk: PkePublicKey, m, r: bytes, ps: ParamSet) -> Ciphertext:
    q = ps.q
    s1, e1, e2 = encryption_noise(r, ps)
    s1_hat = ntt(s1, ps)
    b1 = mod_add(intt(matrix_vector(pk.seed_A, s1_hat, True, ps), ps), e1, q)
    c_m = mod_add(intt(pwm_acc(pk.b_hat, s1_hat, ps), ps), e2, q)
    c_m = mod_add(c_m, codec.encode(m, ps), q)
    return Ciphertext(codec.compress(b1, ps.log_p, q), codec.compress(c_m, ps.log_v, q))


def pke_dec_raw(sk: PkeSecretKey, c: Ciphertext, ps: ParamSet) -> np.ndarray:
    """The noisy encoded message v' - intt(u'^T o s_hat), before decoding."""
    q = ps.q
    u1 = codec.decompress(c.u, ps.log_p, q)
    v1 = codec.decompress(c.v, ps.log_v, q)
    return mod_sub(v1, intt(pwm_acc(ntt(u1, ps), sk.s_hat, ps), ps), q)


def pke_dec(sk: PkeSecretKey, c: Ciphertext, ps: ParamSet) -> np.ndarray:
    return codec.decode(pke_dec_raw(sk, c, ps), ps)


def decryption_noise(sk: PkeSecretKey, c: Ciphertext, m, ps: ParamSet) -> np.ndarray:
    """Centered per-coefficient difference between the decrypted value and encode(m)."""
    return codec.centered(pke_dec_raw(sk, c, ps) - codec.encode(m, ps), ps.q)


def serialize_pk(pk: PkePublicKey, ps: ParamSet) -> bytes:
    return pk.seed_A + codec.pack_vec(pk.b_hat, ps.log_q)


def _check_range(x: np.ndarray, q: int, what: str) -> np.ndarray:
    if x.size and x.max() >= q:
        raise FormatError(f"{what} coefficient out of range")
    return x


def deserialize_pk(data: bytes, ps: ParamSet) -> PkePublicKey:
    if len(data) != derived_sizes(ps).pk_bytes:
        raise FormatError(f"public key must be {derived_sizes(ps).pk_bytes} bytes, got {len(data)}")
    sb = ps.seed_bytes
    b_hat = codec.unpack_vec(data[sb:], ps.log_q, ps.ell, ps.n)
    return PkePublicKey(bytes(data[:sb]), _check_range(b_hat, ps.q, "public key"))


def serialize_pke_sk(sk: PkeSecretKey, ps: ParamSet) -> bytes:
    return codec.pack_vec(sk.s_hat, ps.log_q)


def deserialize_pke_sk(data: bytes, ps: ParamSet) -> PkeSecretKey:
    s_hat = codec.unpack_vec(data, ps.log_q, ps.ell, ps.n)
    return PkeSecretKey(_check_range(s_hat, ps.q, "secret key"))


def serialize_ct(c: Ciphertext, ps: ParamSet) -> bytes:
    return codec.pack_vec(c.u, ps.log_p) + codec.pack_poly(c.v, ps.log_v)


def deserialize_ct(data: bytes, ps: ParamSet) -> Ciphertext:
    sizes = derived_sizes(ps)
    if len(data) != sizes.ct_bytes:
        raise FormatError(f"ciphertext must be {sizes.ct_bytes} bytes, got {len(data)}")
    u = codec.unpack_vec(data[: sizes.u_bytes], ps.log_p, ps.ell, ps.n)
    v = codec.unpack_poly(data[sizes.u_bytes:], ps.log_v, ps.n)
    return Ciphertext(u, v)
