import cmath
import math
from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from seqfree import kloosterman as kl
from seqfree import multiplier as mu
from seqfree.numerics import PASS


def brute_sum(phases):
    """Float oracle: sum of exp(2 pi i x) over rational exponents x."""
    return sum(cmath.exp(2j * math.pi * float(x)) for x in phases)


def test_A1_and_calK1():
    for n in range(0, 30):
        assert abs(kl.A_k(1, n).value - 1) < 1e-50
    for n in range(1, 30):
        assert abs(kl.calK(1, n).value - 1) < 1e-50


@pytest.mark.parametrize("k,n", [(5, 3), (7, 10), (12, 5), (25, 99)])
def test_A_k_against_float_oracle(k, n):
    phases = [mu.omega(h, k).exponent - Fraction(n * h, k) for h in range(k) if gcd(h, k) == 1]
    assert abs(complex(kl.A_k(k, n).value) - brute_sum(phases)) < 1e-9


@pytest.mark.parametrize("family,k,nu,n", [("K4", 10, 3, 17), ("K6", 9, 4, 50), ("K8", 5, 2, 11), ("K8", 13, 12, 100)])
def test_family_against_float_oracle(family, k, nu, n):
    _, d, s = kl.FAMILIES[family]
    mult = {"K4": mu.multiplier_k4, "K6": mu.multiplier_k6, "K8": mu.multiplier_k8}[family]
    phases = []
    for h in range(k):
        if gcd(h, k) == 1:
            hp = mu.select_hprime(h, k, d)
            q = -3 * nu * nu + s * nu
            phases.append(mult(h, k).exponent + Fraction(q * hp, 2 * k) - Fraction(n * h, k))
    assert abs(complex(kl.kloosterman_family(family, k, nu, n).value) - brute_sum(phases)) < 1e-9


def test_K8_k1_single_term():
    v = kl.K8(1, 0, 37)
    assert v.n_terms == 1 and abs(abs(v.value) - 1) < 1e-50


@pytest.mark.parametrize("k", [5, 7, 11, 13, 25])
def test_calK_trivial_bound(k):
    for n in range(1, 101):
        assert kl.calK(k, n).abs <= k


@pytest.mark.parametrize("family,constant", [("K4", 26), ("K6", 27), ("K8", 9)])
def test_family_bounds_grid(family, constant):
    ks = {"K4": [2, 4, 8, 10], "K6": [3, 9, 15], "K8": [1, 5, 7, 11]}[family]
    for k in ks:
        for nu in range(k):
            for n in range(1, 101, 7):
                v = kl.kloosterman_family(family, k, nu, n)
                assert v.abs <= constant * math.sqrt(n) * k**0.75


def test_family_domain_errors():
    with pytest.raises(ValueError):
        kl.K4(3, 0, 1)
    with pytest.raises(ValueError):
        kl.K8(5, 5, 1)
    with pytest.raises(ValueError):
        kl.calK(6, 1)


@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(1, 120))
def test_classical_K_real(a, b, k):
    v = kl.classical_K(a, b, k)
    assert v.imag_abs < mpmath.mpf(2) ** (8 - 192)


@given(st.sampled_from(["K4", "K6", "K8"]), st.integers(1, 40), st.integers(0, 1000), st.integers(1, 500))
def test_hprime_shift_has_no_effect(family, j, nu, n):
    g = kl.FAMILIES[family][0]
    k = next(m for m in range(j, j + 12) if gcd(m, 6) == g)
    assert kl.hprime_shift_effect(family, k, nu % k, n) < mpmath.mpf(2) ** -150


def test_realness_of_families():
    for family, ks in {"K4": [2, 4, 10], "K6": [3, 9], "K8": [5, 7]}.items():
        for k in ks:
            for n in (1, 17, 64):
                total = sum((kl.kloosterman_family(family, k, nu, n).value for nu in range(k)), mpmath.mpc(0))
                assert abs(total.imag) < 1e-40


def test_divisor_bound_examples():
    assert kl.tau(720720) == 240
    assert kl.tau(720720) ** 4 <= 6561 * 720720
    rep = kl.divisor_bound_check(10**6)
    assert rep.verdict == PASS and rep.witness["violations"] == []


def test_divisor_counts_against_tau():
    t = kl.divisor_counts(500)
    assert [int(x) for x in t[1:]] == [kl.tau(n) for n in range(1, 501)]


def test_weil_bound():
    rep = kl.weil_bound_check(200, [(1, 1), (2, 3), (5, 7), (6, 12)])
    assert rep.verdict == PASS


def test_kloosterman_bounds_small_grid():
    rep = kl.verify_kloosterman_bounds(15, 20)
    assert rep.verdict == PASS
    assert rep.witness["settled_by_term_count"] >= 20  # |calK_1(n)| = 1 for every n


def test_sums_deterministic():
    a = kl.calK(35, 77, keep_terms=True)
    b = kl.calK(35, 77, keep_terms=True)
    assert a.value == b.value and a.exact_terms == b.exact_terms
