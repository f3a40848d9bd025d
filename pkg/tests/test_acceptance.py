"""Acceptance criteria 1-9; the terminal summary prints one PASS/FAIL line per criterion."""

import math
import time

import pytest

from seqfree import asymptotics as asy
from seqfree import bigseries as bs
from seqfree import cli
from seqfree import exact_formula as ef
from seqfree import inequalities as ineq
from seqfree import kloosterman as kl
from seqfree import special_functions as sf
from seqfree.numerics import PASS, mp


@pytest.fixture
def criterion(record_property):
    start = time.perf_counter()

    def report(number, detail):
        record_property("criterion", number)
        record_property("detail", f"{detail} [{time.perf_counter() - start:.1f}s]")
        return time.perf_counter() - start

    return report


def test_1_oracle_equivalence(criterion):
    t = bs.g2_table(500)
    oracle = bs.p2_oracle_table(500)
    bad = [n for n in range(501) if t[n] != oracle[n]]
    elapsed = criterion(1, f"g2_table(500) vs DP oracle: {len(bad)} mismatches")
    assert not bad and elapsed < 60


def test_2_rademacher_calibration(criterion):
    p = bs.partition_table(200)
    bad = []
    worst = 0
    for n in range(1, 201):
        r = ef.rademacher_p(n, math.ceil(math.sqrt(n)) + 5, 192, p[n])
        worst = max(worst, float(r.residual))
        if not r.reconstructed:
            bad.append(n)
    elapsed = criterion(2, f"p(n), n<=200: {len(bad)} failures, max residual {worst:.2e}")
    assert not bad and elapsed < 60


def test_3_exact_formula_reconstruction(criterion, table):
    tol = 2.0**-64
    rows = []
    for n in cli.RECONSTRUCTION_SAMPLES:
        r = ef.p2_exact_formula(n, 40, 192, sf.QuadratureConfig(abs_tol=tol), table[n])
        rows.append((n, r.reconstructed and r.residual < 0.5, float(r.residual), float(r.error_budget)))
    failed = [n for n, ok, _, _ in rows if not ok]
    worst = max(rows, key=lambda x: x[2])
    elapsed = criterion(3, f"{len(rows)} samples in [10, 2000], k_max=40: {len(failed)} failures, "
                           f"max residual {worst[2]:.3g} at n={worst[0]}, max budget {max(r[3] for r in rows):.1e}")
    assert len(rows) == 20 and all(10 <= n <= 2000 for n, *_ in rows)
    assert not failed and elapsed < 600


def test_4_asymptotic_error_sup(criterion, table):
    t0 = time.perf_counter()
    rep = asy.verify_error_sup(table, 1, 2000)
    ci_time = time.perf_counter() - t0
    full_table = bs.g2_table(31745)
    full = asy.verify_error_sup(full_table, 1, 31745)
    criterion(4, f"sup on [1,2000] = {mp.nstr(rep.witness['sup'], 10)} at n={rep.witness['argmax']} ({ci_time:.1f}s); "
                 f"full [1,31745]: {full.verdict}, sup {mp.nstr(full.witness['sup'], 10)} at n={full.witness['argmax']}")
    assert rep.verdict == PASS and ci_time < 300
    assert full.verdict == PASS


def test_5_logconcavity(criterion, table):
    rep = ineq.verify_logconcavity(table, 5000)
    w = rep.witness
    fails = w["failure_set_below_threshold"]
    elapsed = criterion(5, f"[482,5000] and even n<482: {rep.verdict}; failure set below 482: {len(fails)} n, "
                           f"all odd={w['all_failures_odd']}, largest {w['largest_failure']}")
    assert rep.verdict == PASS and w["all_failures_odd"] and elapsed < 120


def test_6_kloosterman_bounds(criterion):
    rep = kl.verify_kloosterman_bounds(50, 100)
    ratios = {f: round(float(v["ratio"]), 3) for f, v in rep.witness["worst"].items()}
    elapsed = criterion(6, f"k<=50, n<=100: {rep.verdict}; worst |value|/bound {ratios}")
    assert rep.verdict == PASS and elapsed < 300


def test_7_analytic_lemmas(criterion):
    rep = cli.suite_analytic(cli.RunConfig())
    parts = {k: v["verdict"] for k, v in rep.witness.items()}
    bad = [k for k, v in parts.items() if v != PASS]
    elapsed = criterion(7, f"{len(parts)} checks, non-pass: {bad or 'none'}")
    assert rep.verdict == PASS and elapsed < 300


def _structure(rep):
    """Finite failure set followed by an all-hyperbolic tail inside the scan."""
    return rep.verdict == PASS


def test_8_turan_scan(criterion, table):
    d2 = ineq.degree2_matches_logconcavity(2000, table)
    d3 = ineq.minimal_hyperbolic_shift(3, 2000, table)
    d4 = ineq.minimal_hyperbolic_shift(4, 2000, table)
    # beyond the criterion's range: where the d = 4 failures actually stop
    wide = bs.g2_table(3400)
    tail4 = ineq.hyperbolicity_scan(4, 3396, wide, n_min=3200)
    last4 = max((c.n for c in tail4 if not c.hyperbolic), default=None)
    elapsed = criterion(8, f"d=2 mismatches {len(d2.witness['mismatches'])}; "
                           f"d=3 last failure {d3.witness['largest_failure']} ({d3.verdict}); "
                           f"d=4 last failure {d4.witness['largest_failure']} of 2000 ({d4.verdict}), "
                           f"extended scan: last d=4 failure {last4}, hyperbolic after")
    assert d2.verdict == PASS
    assert _structure(d3)
    assert _structure(d4), "d=4: every shift up to 2000 is non-hyperbolic; no hyperbolic tail within n <= 2000"
    assert elapsed < 600


def test_9_closing_inequality(criterion):
    rep = ineq.verify_closing_range()
    w = rep.witness
    criterion(9, f"positive at 7667 and {rep.params['samples'] - 1} larger samples up to {w['largest_sample']:.2e}: "
                 f"{rep.verdict}; smallest positive n = {w['smallest_positive']}")
    assert rep.verdict == PASS and w["smallest_positive"] <= 7667
