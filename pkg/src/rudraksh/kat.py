"""Known-answer test records in the NIST .rsp text layout.

Record i uses seed_i = random_bytes(48) from KatDrbg(bytes(range(48))), the
i-th output of the master generator. From seed_i a fresh KatDrbg yields the 48
keygen coins and then the 16 encapsulation coins.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .ascon import KatDrbg
from .kem import kem_decaps, kem_encaps, kem_keygen, serialize_sk
from .params import ParamSet, paramset
from .pke import serialize_ct, serialize_pk

MASTER_ENTROPY = bytes(range(48))
SEED_BYTES = 48


class KatMismatch(Exception):
    pass


@dataclass(frozen=True)
class KatRecord:
    count: int
    seed: bytes
    pk: bytes
    sk: bytes
    ct: bytes
    ss: bytes


def record_coins(seed: bytes, ps: ParamSet) -> tuple[bytes, bytes]:
    drbg = KatDrbg(seed)
    return drbg.random_bytes(3 * ps.seed_bytes), drbg.random_bytes(ps.seed_bytes)


def make_record(count: int, seed: bytes, ps: ParamSet) -> KatRecord:
    kg_coins, enc_coins = record_coins(seed, ps)
    pk, sk = kem_keygen(kg_coins, ps)
    ct, ss = kem_encaps(pk, enc_coins, ps)
    if kem_decaps(sk, ct, ps) != ss:
        raise AssertionError(f"record {count}: decapsulation disagrees with encapsulation")
    return KatRecord(count, seed, serialize_pk(pk, ps), serialize_sk(sk, ps), serialize_ct(ct, ps), ss)


def record_seeds(count: int) -> list[bytes]:
    master = KatDrbg(MASTER_ENTROPY)
    return [master.random_bytes(SEED_BYTES) for _ in range(count)]


def generate(ps: ParamSet, count: int) -> list[KatRecord]:
    return [make_record(i, seed, ps) for i, seed in enumerate(record_seeds(count))]


def format_rsp(ps: ParamSet, records: list[KatRecord]) -> str:
    lines = [f"# {ps.name}", f"# params = {ps.name}",
             "# seed_i = Ascon-Xof(00..2f || le32(i), 48); coins = Ascon-Xof(seed_i || le32(0), 48),"
             " Ascon-Xof(seed_i || le32(1), 16)", ""]
    for r in records:
        lines.append(f"count = {r.count}")
        for f in fields(KatRecord)[1:]:
            lines.append(f"{f.name} = {getattr(r, f.name).hex().upper()}")
        lines.append("")
    return "\n".join(lines)


def parse_rsp(text: str) -> tuple[ParamSet, list[KatRecord]]:
    ps = None
    records, cur = [], {}
    names = [f.name for f in fields(KatRecord)]

    def flush():
        if cur:
            missing = [k for k in names if k not in cur]
            if missing:
                raise ValueError(f"record {cur.get('count')} is missing {', '.join(missing)}")
            records.append(KatRecord(**cur))
            cur.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            key, _, val = line[1:].partition("=")
            if key.strip() == "params":
                ps = paramset(val.strip())
            continue
        if not line:
            continue
        key, sep, val = (s.strip() for s in line.partition("="))
        if not sep or key not in names:
            raise ValueError(f"line {lineno}: unexpected {line[:40]!r}")
        if key == "count":
            flush()
            cur["count"] = int(val)
        else:
            cur[key] = bytes.fromhex(val)
    flush()
    if ps is None:
        raise ValueError("missing '# params = ...' header")
    return ps, records


def verify(ps: ParamSet, records: list[KatRecord]) -> None:
    """Regenerate every record; raise KatMismatch naming the first divergent field."""
    seeds = record_seeds(max((r.count for r in records), default=-1) + 1)
    for r in records:
        if r.seed != seeds[r.count]:
            raise KatMismatch(f"count {r.count}: field seed differs")
        fresh = make_record(r.count, r.seed, ps)
        for f in fields(KatRecord)[2:]:
            if getattr(fresh, f.name) != getattr(r, f.name):
                raise KatMismatch(f"count {r.count}: field {f.name} differs")
