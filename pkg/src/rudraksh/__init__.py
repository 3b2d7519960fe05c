"""Rudraksh: a compact module-lattice KEM built on Ascon-Xof."""

from .kem import KemSecretKey, deserialize_sk, kem_decaps, kem_encaps, kem_keygen, serialize_sk
from .params import PARAMSETS, ConfigError, ParamSet, SizeReport, derived_sizes, paramset
from .pke import Ciphertext, PkePublicKey, deserialize_ct, deserialize_pk, serialize_ct, serialize_pk

__all__ = [
    "PARAMSETS", "ConfigError", "ParamSet", "SizeReport", "derived_sizes", "paramset",
    "KemSecretKey", "kem_keygen", "kem_encaps", "kem_decaps", "serialize_sk", "deserialize_sk",
    "Ciphertext", "PkePublicKey", "serialize_pk", "deserialize_pk", "serialize_ct", "deserialize_ct",
]
