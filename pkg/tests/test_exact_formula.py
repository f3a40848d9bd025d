import math

import pytest

from seqfree import bigseries as bs
from seqfree import exact_formula as ef
from seqfree.numerics import PASS, mp, workprec


@pytest.fixture(scope="module")
def p():
    return bs.partition_table(200)


def test_rademacher_examples(p):
    assert ef.rademacher_p(1, 5).rounded == 1
    assert ef.rademacher_p(10, 5).rounded == 42 == p[10]


def test_rademacher_calibration(p):
    for n in range(1, 201):
        r = ef.rademacher_p(n, math.isqrt(n - 1) + 6, target=p[n])
        assert r.reconstructed, (n, r.residual)
        assert r.imag_part < 1e-40


def test_p2_smallest_case(table):
    r = ef.p2_exact_formula(1, 3, target=table[1])
    assert r.rounded == 1 and r.reconstructed


@pytest.mark.parametrize("n", [10, 50, 100, 500, 1000])
def test_p2_reconstruction(n, table):
    r = ef.p2_exact_formula(n, 40, 192, target=table[n])
    assert r.reconstructed, (r.rounded, table[n], r.residual)
    assert r.error_budget < 1e-15
    assert r.imag_part < 1e-40


def test_residual_trend(table):
    res = {k: ef.p2_exact_formula(100, k, target=table[100]) for k in (5, 10, 20, 40)}
    assert all(r.reconstructed for r in res.values())
    assert res[40].residual < res[5].residual
    # frozen from the computation itself; the sequence is not monotone (10 -> 20 rises)
    assert [round(float(res[k].residual), 4) for k in (5, 10, 20, 40)] == [0.0994, 0.0052, 0.0193, 0.0128]


def test_family_sums_sum_to_total(table):
    r = ef.p2_exact_formula(200, 20, target=table[200])
    with workprec(256):
        assert abs(sum(r.family_sums.values()) - r.total) < 1e-30


def test_per_term_screen(table):
    r = ef.p2_exact_formula(300, 30, target=table[300])
    assert ef.per_term_screen(r).verdict == PASS


def test_tail_bound_examples():
    assert ef.tail_bound_large_k(1) == 46500
    assert ef.tail_bound_large_k(2**16) == 46500 * 2**15
    with workprec(128):
        assert abs(ef.small_k_bound(1) - 200 * mp.exp(mp.sqrt(3) * mp.pi / 3)) < 1e-30
        expected = 200 * mp.mpf(100) ** (mp.mpf(1) / 16) * mp.exp(10 * mp.sqrt(3) * mp.pi / 3)
        assert abs(ef.small_k_bound(100) / expected - 1) < 1e-30


@pytest.mark.parametrize("n,k_lo,k_hi", [(25, 2, 40), (25, 300, 320), (100, 60, 75)])
def test_float_tail_agrees_with_mpmath(n, k_lo, k_hi):
    exact, fam = ef.tail_sum(n, k_lo, k_hi)
    fl, fam_fl = ef.tail_sum_float(n, k_lo, k_hi)
    assert float(exact) <= fl <= float(exact) * (1 + 2e-9)
    for key in fam:
        assert abs(float(fam[key]) - fam_fl[key]) <= 2e-9 * max(fl, 1e-300)


def test_tail_bounds_n25():
    rep = ef.verify_tail_bounds(25)
    assert rep.verdict == PASS
    assert rep.witness["large_k_sum"] < 1 and rep.witness["small_k_sum"] < 100


@pytest.mark.slow
def test_tail_bounds_n100():
    assert ef.verify_tail_bounds(100).verdict == PASS


@pytest.mark.parametrize("n", [10, 100, 1000, 5000])
def test_lehmer_decomposition(n, table):
    rep = ef.lehmer_decomposition(n, table[n])
    assert rep.verdict == PASS


def test_main_term_ratio_tends_to_one(table):
    dev = [abs(ef.lehmer_decomposition(n, table[n]).witness["main_over_p2"] - 1) for n in (10, 100, 1000, 5000)]
    assert dev == sorted(dev, reverse=True) and dev[-1] < 1e-12


def test_report_is_json_ready(table):
    import json

    d = ef.p2_exact_formula(50, 10, target=table[50]).as_dict()
    assert json.loads(json.dumps(d))["rounded"] == table[50]


def test_invalid_arguments():
    with pytest.raises(ValueError):
        ef.p2_exact_formula(0, 5)
    with pytest.raises(ValueError):
        ef.rademacher_p(5, 0)
