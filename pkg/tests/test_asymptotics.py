import mpmath
import pytest

from seqfree import asymptotics as asy
from seqfree import bigseries as bs
from seqfree.numerics import PASS, mp, workprec


def independent_scaled_error(n, p2n, dps=120):
    """n^3 |p2(n) e^{-(2pi/3)sqrt n} - P(n)| evaluated with mpmath.mp.workdps from scratch."""
    with mpmath.workdps(dps):
        pi, s2, s3 = mpmath.pi, mpmath.sqrt(2), mpmath.sqrt(3)
        a = [1 / (4 * s3), 1 / (18 * s2), -3 * s3 / (64 * pi), -(324 + 5 * pi**2) / (3888 * s2 * pi),
             -45 * s3 / (2048 * pi**2), (1080 + 17 * pi**2) / (186624 * s2), -945 * s3 / (32768 * pi**3),
             -(349920 + 33048 * pi**2 + 455 * pi**4) / (40310784 * s2 * pi), -127575 * s3 / (2097152 * pi**4)]
        P = mpmath.fsum(c * mpmath.mpf(n) ** (-mpmath.mpf(k + 3) / 4) for k, c in enumerate(a))
        return mpmath.mpf(n) ** 3 * abs(p2n * mpmath.exp(-2 * pi / 3 * mpmath.sqrt(n)) - P)


def test_leading_coefficient():
    e = asy.AsymptoticExpansion.at(192)
    with workprec(192):
        assert abs(e.a[0] - 1 / (4 * mp.sqrt(3))) < mp.mpf(2) ** -190


def test_coefficient_signs():
    assert asy.AsymptoticExpansion.at(128).signs() == (1, 1, -1, -1, -1, 1, -1, -1, -1)


def test_two_terms_match_known_form():
    for n in (1, 10, 1234):
        with workprec(192):
            assert abs(asy.p2_asymptotic(n, terms=2) / asy.bringmann_mahlburg(n) - 1) < mp.mpf(2) ** -180


def test_relative_error_at_ten_thousand():
    t = bs.g2_table(10_000)
    with workprec(192):
        r = abs(asy.p2_asymptotic(10_000) / t[10_000] - 1)
    assert r < 1e-4
    assert r < 1e-10  # actual: about 2.3e-11


@pytest.mark.parametrize("n", [1, 2, 84, 500, 1999])
def test_scaled_error_against_independent_evaluation(n, table):
    got = asy.scaled_error(n, table[n])
    ref = independent_scaled_error(n, bs.p2_oracle(n) if n <= 500 else table[n])
    assert abs(got - ref) < mp.mpf(10) ** -25 * max(1, ref)


def test_single_point_range(table):
    rep = asy.verify_error_sup(table, 1, 1)
    assert rep.verdict == PASS and rep.witness["argmax"] == 1


def test_error_sup_to_2000(table):
    rep = asy.verify_error_sup(table, 1, 2000)
    assert rep.verdict == PASS
    assert rep.witness["argmax"] == 84
    assert abs(float(rep.witness["sup"]) - 14.886034121) < 1e-8


def test_envelope_examples():
    e = asy.AsymptoticExpansion.at(128)
    with workprec(128):
        assert e.poly(8) > asy.error_envelope(8)
        assert e.poly(1) > 0
        assert e.poly(7) <= asy.error_envelope(7)


def test_envelope_sweep():
    rep = asy.verify_envelope(5000)
    assert rep.verdict == PASS
    assert rep.witness["at"] == 8
    assert rep.witness["p_le_e_below_threshold"] == [1, 2, 3, 4, 5, 6, 7]


def test_sweep_rows(table):
    rows = list(asy.sweep_rows(table, 1, 3))
    assert [r[0] for r in rows] == [1, 2, 3] and [r[1] for r in rows] == [1, 2, 2]


def test_rejects_bad_range(table):
    with pytest.raises(ValueError):
        asy.error_sup(table, 0, 5)
    with pytest.raises(ValueError):
        asy.p2_asymptotic(0)
