"""CCA-secure KEM via the Fujisaki-Okamoto transform with implicit rejection."""

from __future__ import annotations

import hmac
from dataclasses import dataclass

import numpy as np

from . import codec
from .ascon import hash_G, hash_H
from .codec import FormatError
from .params import ParamSet, derived_sizes
from .pke import (
    Ciphertext,
    PkePublicKey,
    PkeSecretKey,
    deserialize_pk,
    deserialize_pke_sk,
    pke_dec,
    pke_enc,
    pke_keygen,
    serialize_ct,
    serialize_pk,
    serialize_pke_sk,
)


@dataclass(frozen=True, eq=False)
class KemSecretKey:
    s_hat: np.ndarray
    z: bytes
    pkh: bytes
    pk: PkePublicKey


def kem_keygen(coins: bytes, ps: ParamSet) -> tuple[PkePublicKey, KemSecretKey]:
    """coins = seed_A || seed_se || z."""
    sb = ps.seed_bytes
    if len(coins) != 3 * sb:
        raise ValueError(f"keygen needs {3 * sb} bytes of coins")
    pk, sk = pke_keygen(coins[:sb], coins[sb:2 * sb], ps)
    pkh = hash_H(serialize_pk(pk, ps), sb)
    return pk, KemSecretKey(sk.s_hat, bytes(coins[2 * sb:]), pkh, pk)


def kem_encaps(pk: PkePublicKey, coins: bytes, ps: ParamSet) -> tuple[Ciphertext, bytes]:
    """coins is the random message itself."""
    sb = ps.seed_bytes
    if len(coins) != sb:
        raise ValueError(f"encapsulation needs {sb} bytes of coins")
    key, r = hash_G(hash_H(serialize_pk(pk, ps), sb) + bytes(coins), sb)
    return pke_enc(pk, codec.arrange_msg(coins, ps), r, ps), key


def _select(flag: int, a: bytes, b: bytes) -> bytes:
    """a if flag == 1 else b, without branching on flag."""
    mask = -flag & 0xFF
    return bytes((x & mask) | (y & ~mask & 0xFF) for x, y in zip(a, b))


def kem_decaps(sk: KemSecretKey, c: Ciphertext, ps: ParamSet) -> bytes:
    sb = ps.seed_bytes
    m1 = pke_dec(PkeSecretKey(sk.s_hat), c, ps)
    msg = codec.original_msg(m1, ps, tie_key=sk.pkh)
    key, r = hash_G(sk.pkh + msg, sb)
    m2 = codec.arrange_msg(msg, ps)
    if ps.repeat == 1:
        assert np.array_equal(m1, m2)
    c_bytes = serialize_ct(c, ps)
    same = hmac.compare_digest(c_bytes, serialize_ct(pke_enc(sk.pk, m2, r, ps), ps))
    return _select(int(same), key, hash_H(c_bytes + sk.z, sb))


def serialize_sk(sk: KemSecretKey, ps: ParamSet) -> bytes:
    return serialize_pke_sk(PkeSecretKey(sk.s_hat), ps) + sk.z + sk.pkh + serialize_pk(sk.pk, ps)


def deserialize_sk(data: bytes, ps: ParamSet) -> KemSecretKey:
    sizes = derived_sizes(ps)
    if len(data) != sizes.sk_bytes:
        raise FormatError(f"secret key must be {sizes.sk_bytes} bytes, got {len(data)}")
    sb = ps.seed_bytes
    cut = sizes.sk_bytes - sizes.pk_bytes - 2 * sb
    s = deserialize_pke_sk(data[:cut], ps)
    z, pkh = bytes(data[cut:cut + sb]), bytes(data[cut + sb:cut + 2 * sb])
    return KemSecretKey(s.s_hat, z, pkh, deserialize_pk(data[cut + 2 * sb:], ps))
