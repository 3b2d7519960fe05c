import subprocess
import sys

import pytest

from rudraksh.ascon import hash_H
from rudraksh.cli import main
from rudraksh.kem import deserialize_sk
from rudraksh.params import paramset

SEED = "00" * 48
COINS = "11" * 16


def run(*args):
    return main([str(a) for a in args])


def test_keygen_sizes_and_determinism(tmp_path):
    for name, pk_len in [("poly64", 952), ("poly128", 784)]:
        assert run("keygen", "--params", name, "--out-pk", tmp_path / "pk", "--out-sk", tmp_path / "sk", "--seed", SEED) == 0
        pk1, sk1 = (tmp_path / "pk").read_bytes(), (tmp_path / "sk").read_bytes()
        assert len(pk1) == pk_len
        run("keygen", "--params", name, "--out-pk", tmp_path / "pk", "--out-sk", tmp_path / "sk", "--seed", SEED)
        assert (tmp_path / "pk").read_bytes() == pk1 and (tmp_path / "sk").read_bytes() == sk1


def test_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv("RUDRAKSH_PARAMS", "poly128")
    assert run("keygen", "--out-pk", tmp_path / "pk", "--out-sk", tmp_path / "sk") == 0
    assert len((tmp_path / "pk").read_bytes()) == 784


def test_encaps_decaps_roundtrip(tmp_path):
    p = tmp_path
    run("keygen", "--out-pk", p / "pk", "--out-sk", p / "sk", "--seed", SEED)
    assert run("encaps", "--pk", p / "pk", "--out-ct", p / "ct", "--out-ss", p / "ss1", "--coins", COINS) == 0
    assert len((p / "ct").read_bytes()) == 760
    assert run("decaps", "--sk", p / "sk", "--ct", p / "ct", "--out-ss", p / "ss2") == 0
    assert (p / "ss1").read_bytes() == (p / "ss2").read_bytes()
    assert run("encaps", "--pk", p / "pk", "--out-ct", p / "ct2", "--out-ss", p / "ss3") == 0
    run("decaps", "--sk", p / "sk", "--ct", p / "ct2", "--out-ss", p / "ss4")
    assert (p / "ss3").read_bytes() == (p / "ss4").read_bytes()


def test_tampered_ciphertext_exits_zero(tmp_path):
    p = tmp_path
    run("keygen", "--out-pk", p / "pk", "--out-sk", p / "sk", "--seed", SEED)
    run("encaps", "--pk", p / "pk", "--out-ct", p / "ct", "--out-ss", p / "ss1", "--coins", COINS)
    ct = bytearray((p / "ct").read_bytes())
    ct[0] ^= 0xFF
    (p / "ct").write_bytes(bytes(ct))
    assert run("decaps", "--sk", p / "sk", "--ct", p / "ct", "--out-ss", p / "ss2") == 0
    sk = deserialize_sk((p / "sk").read_bytes(), paramset("poly64"))
    assert (p / "ss2").read_bytes() == hash_H(bytes(ct) + sk.z) != (p / "ss1").read_bytes()


def test_malformed_inputs_fail(tmp_path, capsys):
    p = tmp_path
    run("keygen", "--out-pk", p / "pk", "--out-sk", p / "sk", "--seed", SEED)
    run("encaps", "--pk", p / "pk", "--out-ct", p / "ct", "--out-ss", p / "ss")
    (p / "short").write_bytes((p / "ct").read_bytes()[:-1])
    assert run("decaps", "--sk", p / "sk", "--ct", p / "short", "--out-ss", p / "x") != 0
    assert "ciphertext" in capsys.readouterr().err
    assert run("keygen", "--out-pk", p / "pk", "--out-sk", p / "sk", "--seed", "zz") != 0
    assert run("keygen", "--out-pk", p / "pk", "--out-sk", p / "sk", "--seed", "00") != 0
    assert run("encaps", "--pk", p / "missing", "--out-ct", p / "c", "--out-ss", p / "s") != 0
    assert run("keygen", "--params", "poly999", "--out-pk", p / "pk", "--out-sk", p / "sk") != 0
    assert run("keygen", "--out-pk", p / "nodir" / "pk", "--out-sk", p / "sk") != 0


def test_kat_roundtrip_and_tamper(tmp_path, capsys):
    f = tmp_path / "kat.rsp"
    assert run("kat", "--params", "poly64", "--count", 100, "--out", f) == 0
    text = f.read_text()
    assert text.count("count = ") == 100
    assert run("kat-verify", "--file", f) == 0
    lines = text.splitlines()
    i = next(k for k, line in enumerate(lines) if line.startswith("pk = "))
    lines[i] = lines[i][:-1] + ("0" if lines[i][-1] != "0" else "1")
    f.write_text("\n".join(lines))
    assert run("kat-verify", "--file", f) != 0
    assert "count 0: field pk differs" in capsys.readouterr().err


def test_keygen_seed_matches_kat(tmp_path):
    from rudraksh import kat
    rec = kat.generate(paramset("poly64"), 2)[1]
    run("keygen", "--out-pk", tmp_path / "pk", "--out-sk", tmp_path / "sk", "--seed", rec.seed.hex())
    assert (tmp_path / "pk").read_bytes() == rec.pk and (tmp_path / "sk").read_bytes() == rec.sk


def test_analyze_all(capsys):
    assert run("analyze", "--all") == 0
    out = capsys.readouterr().out
    for name in ("KEM-poly32", "KEM-poly64", "KEM-poly128", "Kyber", "NewHope"):
        assert name in out
    assert "11456" in out
    assert run("analyze", "--params", "poly64", "--format", "csv") == 0
    assert capsys.readouterr().out.startswith("set,ell,")


def test_bench(capsys):
    assert run("bench", "--params", "poly128", "--iters", 3) == 0
    out = capsys.readouterr().out
    assert out.count("median") == 3


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "rudraksh", "analyze", "--params", "poly128"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "KEM-poly128" in r.stdout


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
