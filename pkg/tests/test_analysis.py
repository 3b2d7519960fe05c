import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cbd_pmf_by_enumeration, majority_failure_by_enumeration, rounding_counts, sum_pmf_by_enumeration
from rudraksh.analysis import (
    PREC,
    AnalysisError,
    NoiseDistribution,
    cbd_dist,
    convolve,
    convolve_power,
    decryption_noise_dist,
    failure_probability,
    memory_comparison,
    memory_estimate,
    point_mass,
    product_dist,
    repeat_failure,
    rounding_dist,
    parameter_report,
)
from rudraksh.params import paramset

TOL = Fraction(1, 2 ** (PREC - 20))


def close(a: Fraction, b: Fraction, tol=TOL) -> bool:
    return abs(a - b) <= tol


def pmf_close(d: NoiseDistribution, pmf: dict) -> bool:
    keys = set(pmf) | set(d.pmf())
    return all(close(d.prob(k), pmf.get(k, Fraction(0))) for k in keys)


def test_cbd_eta2():
    d = cbd_dist(2)
    assert d.pmf() == {-2: Fraction(1, 16), -1: Fraction(4, 16), 0: Fraction(6, 16), 1: Fraction(4, 16), 2: Fraction(1, 16)}
    assert d.variance() == 1


def test_cbd_eta1():
    assert cbd_dist(1).pmf() == {-1: Fraction(1, 4), 0: Fraction(1, 2), 1: Fraction(1, 4)}


@pytest.mark.parametrize("eta", [1, 2, 3, 4])
def test_cbd_matches_enumeration(eta):
    d = cbd_dist(eta)
    assert d.pmf() == cbd_pmf_by_enumeration(eta)
    assert d.variance() == Fraction(eta, 2)


def test_convolve_identity():
    d = cbd_dist(3)
    assert convolve(point_mass(0), d) == d


def test_product_support():
    p = product_dist(cbd_dist(2), cbd_dist(2))
    assert p.lo >= -4 and p.hi <= 4
    assert p.total() == 1


def test_product_matches_enumeration():
    a, b = cbd_pmf_by_enumeration(2), cbd_pmf_by_enumeration(3)
    expected = {}
    for x, p in a.items():
        for y, r in b.items():
            expected[x * y] = expected.get(x * y, 0) + p * r
    assert pmf_close(product_dist(cbd_dist(2), cbd_dist(3)), expected)


def test_convolve_power_matches_enumeration():
    base = product_dist(cbd_dist(2), cbd_dist(2))
    oracle = sum_pmf_by_enumeration([base.pmf()] * 7)
    assert pmf_close(convolve_power(base, 7), oracle)


def test_means_and_variances_add():
    a = convolve(cbd_dist(2), rounding_dist(5, 7681))
    b = product_dist(cbd_dist(2), a)
    c = convolve(a, b)
    assert close(c.mean(), a.mean() + b.mean())
    assert close(c.variance(), a.variance() + b.variance())


def test_rounding_dist_matches_enumeration():
    for d, q in [(10, 7681), (5, 7681), (12, 31873), (7, 31873), (10, 3329), (3, 3329)]:
        counts = rounding_counts(d, q)
        dist = rounding_dist(d, q)
        assert pmf_close(dist, {k: Fraction(c, q) for k, c in counts.items()})
        bound = -(-q // 2 ** (d + 1))
        assert -bound <= dist.lo and dist.hi <= bound


def test_rounding_dist_poly64_u():
    d = rounding_dist(10, 7681)
    assert max(-d.lo, d.hi) == max(abs(k) for k in rounding_counts(10, 7681)) == 4


def test_rounding_lossless():
    assert rounding_dist(13, 7681) == point_mass(0)


def test_normalization(ps):
    noise = decryption_noise_dist(ps)
    assert abs(noise.total() - 1) < Fraction(1, 2 ** 80)


def test_noise_is_symmetric_up_to_rounding_bias():
    noise = decryption_noise_dist(paramset("poly64"))
    assert noise.lo == -noise.hi
    assert abs(noise.mean()) < Fraction(1, 10)


@pytest.mark.parametrize("name,published", [("poly64", -128), ("poly32", -113), ("poly128", -179)])
def test_failure_within_three_bits(name, published):
    assert abs(failure_probability(paramset(name)) - published) <= 3


def test_more_reconciliation_bits_lowers_failure():
    for name in ("poly64", "poly32", "poly128"):
        ps = paramset(name)
        fields = {f.name: getattr(ps, f.name) for f in dataclasses.fields(ps) if f.init}
        finer = type(ps)(**{**fields, "name": name + "+1", "log_t": ps.log_t + 1})
        assert failure_probability(finer) < failure_probability(ps)


def test_repeat_examples():
    assert repeat_failure(0, 3) == 0 and repeat_failure(0, 4) == 0
    assert repeat_failure(Fraction(1, 2), 3) == Fraction(1, 2)
    f = Fraction(1, 2 ** 10)
    assert repeat_failure(f, 4) == 3 * f ** 2 * (1 - f) ** 2 + 4 * f ** 3 * (1 - f) + f ** 4
    assert abs(repeat_failure(f, 4) / (3 * f ** 2) - 1) < Fraction(1, 100)
    assert repeat_failure(f, 1) == f
    assert repeat_failure(f, 3) == 3 * f ** 2 * (1 - f) + f ** 3


@settings(max_examples=40)
@given(st.fractions(0, 1), st.integers(1, 8))
def test_repeat_matches_enumeration(f, r):
    assert repeat_failure(f, r) == majority_failure_by_enumeration(f, r)


def test_support_overflow(monkeypatch):
    import rudraksh.analysis as an
    monkeypatch.setattr(an, "MAX_SUPPORT", 100)
    with pytest.raises(AnalysisError):
        convolve_power(product_dist(cbd_dist(2), cbd_dist(2)), 64)


def test_memory_poly64():
    assert memory_estimate(paramset("poly64"), 320) == 4 * 832 + 9 * 832 + 640 == 11456


def test_memory_ranking():
    mem = dict(memory_comparison())
    assert all(mem["KEM-poly64"] < v for k, v in mem.items() if k != "KEM-poly64")
    assert mem["Kyber"] == 4 * 256 * 12 + 2 * 256 * 12 + 2 * 1600


def test_parameter_report_rows():
    rows = parameter_report()
    assert len(rows) == 3
    for r in rows:
        assert abs(r["failure_log2"] - r["reference_failure_log2"]) <= 3
    p64 = next(r for r in rows if r["name"] == "KEM-poly64")
    assert (p64["pk_bytes"], p64["sk_bytes"], p64["ct_bytes"]) == (952, 1920, 760)
