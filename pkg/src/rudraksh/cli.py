"""Command-line front end: rudraksh {keygen,encaps,decaps,kat,kat-verify,analyze,bench}."""

from __future__ import annotations

import argparse
import os
import statistics
import sys
import time

from . import kat
from .analysis import memory_comparison, parameter_report
from .codec import FormatError
from .kem import deserialize_sk, kem_decaps, kem_encaps, kem_keygen, serialize_sk
from .params import PARAMSETS, ConfigError, default_paramset_name, paramset
from .pke import deserialize_ct, deserialize_pk, serialize_ct, serialize_pk


class CliError(Exception):
    pass


def _hex(value: str, length: int, what: str) -> bytes:
    try:
        b = bytes.fromhex(value)
    except ValueError:
        raise CliError(f"{what} is not valid hex") from None
    if len(b) != length:
        raise CliError(f"{what} must be {length} bytes, got {len(b)}")
    return b


def _read(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def _write(path: str, data: bytes) -> None:
    with open(path, "wb") as f:
        f.write(data)


def cmd_keygen(args) -> None:
    ps = paramset(args.params)
    if args.seed is not None:
        coins, _ = kat.record_coins(_hex(args.seed, kat.SEED_BYTES, "--seed"), ps)
    else:
        coins = os.urandom(3 * ps.seed_bytes)
    pk, sk = kem_keygen(coins, ps)
    _write(args.out_pk, serialize_pk(pk, ps))
    _write(args.out_sk, serialize_sk(sk, ps))


def cmd_encaps(args) -> None:
    ps = paramset(args.params)
    pk = deserialize_pk(_read(args.pk), ps)
    coins = _hex(args.coins, ps.seed_bytes, "--coins") if args.coins is not None else os.urandom(ps.seed_bytes)
    ct, ss = kem_encaps(pk, coins, ps)
    _write(args.out_ct, serialize_ct(ct, ps))
    _write(args.out_ss, ss)


def cmd_decaps(args) -> None:
    ps = paramset(args.params)
    sk = deserialize_sk(_read(args.sk), ps)
    ct = deserialize_ct(_read(args.ct), ps)
    _write(args.out_ss, kem_decaps(sk, ct, ps))


def cmd_kat(args) -> None:
    ps = paramset(args.params)
    text = kat.format_rsp(ps, kat.generate(ps, args.count))
    with open(args.out, "w") as f:
        f.write(text)


def cmd_kat_verify(args) -> None:
    with open(args.file) as f:
        ps, records = kat.parse_rsp(f.read())
    try:
        kat.verify(ps, records)
    except kat.KatMismatch as e:
        raise CliError(str(e)) from None
    print(f"{len(records)} {ps.name} records verified")


def _fmt_rows(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        return "\n".join(",".join(str(c) for c in r) for r in [header] + rows)
    out = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    out += ["| " + " | ".join(str(c) for c in r) + " |" for r in rows]
    return "\n".join(out)


def cmd_analyze(args) -> None:
    names = list(PARAMSETS) if args.all else [paramset(args.params).name]
    header = ["set", "ell", "n", "q", "log_p", "log_t", "B", "failure_log2", "reference",
              "pk", "sk", "ct", "memory_bits", "security (not recomputed)"]
    rows = [[r["name"], r["ell"], r["n"], r["q"], r["log_p"], r["log_t"], r["B"],
             f"{r['failure_log2']:.2f}", r["reference_failure_log2"], r["pk_bytes"], r["sk_bytes"],
             r["ct_bytes"], r["memory_bits"], "/".join(map(str, r["security_not_recomputed"]))]
            for r in parameter_report(names)]
    print(_fmt_rows(header, rows, args.format))
    print()
    print(_fmt_rows(["scheme", "memory_bits"], [list(r) for r in memory_comparison()], args.format))


def cmd_bench(args) -> None:
    ps = paramset(args.params)
    times = {"keygen": [], "encaps": [], "decaps": []}
    for i in range(args.iters + 1):
        t0 = time.perf_counter()
        pk, sk = kem_keygen(os.urandom(3 * ps.seed_bytes), ps)
        t1 = time.perf_counter()
        ct, ss = kem_encaps(pk, os.urandom(ps.seed_bytes), ps)
        t2 = time.perf_counter()
        kem_decaps(sk, ct, ps)
        t3 = time.perf_counter()
        if i:  # the first pass includes JIT warm-up
            times["keygen"].append(t1 - t0)
            times["encaps"].append(t2 - t1)
            times["decaps"].append(t3 - t2)
    for op, ts in times.items():
        print(f"{ps.name} {op}: median {statistics.median(ts) * 1e6:.1f} us over {args.iters} runs")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rudraksh", description="Rudraksh KEM tool")
    sub = p.add_subparsers(dest="command", required=True)
    default = default_paramset_name()

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    def params_flag(sp):
        sp.add_argument("--params", default=default,
                        help="poly32, poly64 or poly128 (default: $RUDRAKSH_PARAMS or poly64)")

    sp = add("keygen", cmd_keygen, "generate a key pair")
    params_flag(sp)
    sp.add_argument("--out-pk", required=True)
    sp.add_argument("--out-sk", required=True)
    sp.add_argument("--seed", help="48-byte hex KAT seed (default: OS randomness)")

    sp = add("encaps", cmd_encaps, "encapsulate to a public key")
    params_flag(sp)
    sp.add_argument("--pk", required=True)
    sp.add_argument("--out-ct", required=True)
    sp.add_argument("--out-ss", required=True)
    sp.add_argument("--coins", help="16-byte hex message (default: OS randomness)")

    sp = add("decaps", cmd_decaps, "decapsulate a ciphertext")
    params_flag(sp)
    sp.add_argument("--sk", required=True)
    sp.add_argument("--ct", required=True)
    sp.add_argument("--out-ss", required=True)

    sp = add("kat", cmd_kat, "write known-answer records")
    params_flag(sp)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--out", required=True)

    sp = add("kat-verify", cmd_kat_verify, "regenerate and compare a KAT file")
    sp.add_argument("--file", required=True)

    sp = add("analyze", cmd_analyze, "failure probability, sizes and memory table")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--params", default=default)
    group.add_argument("--all", action="store_true")
    sp.add_argument("--format", choices=["markdown", "csv"], default="markdown")

    sp = add("bench", cmd_bench, "median wall time of keygen/encaps/decaps")
    params_flag(sp)
    sp.add_argument("--iters", type=int, default=100)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CliError, ConfigError, FormatError, ValueError, OSError) as e:
        print(f"rudraksh {args.command}: error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
