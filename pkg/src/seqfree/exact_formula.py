"""Truncations of the exact formula for p2(n) and of Rademacher's series for p(n)."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import kloosterman as kl
from .numerics import GUARD_BITS, INCONCLUSIVE, PASS, Report, check_le, combine, mp, workprec
from .special_functions import (
    QuadratureConfig,
    QuadratureError,
    _magnitude_bits,
    a_kv,
    bessel_I1,
    bessel_I32,
    curly_I_batch,
)

# name, gcd(k, 6), b, Kloosterman family, prefactor numerator/denominator of pi/sqrt(6n)
FAMILIES = (
    ("K8", 1, Fraction(1, 18), Fraction(1, 18)),
    ("K4", 2, Fraction(5, 36), Fraction(5, 36)),
    ("K6", 3, Fraction(1, 6), Fraction(1, 6)),
)
KLOOSTERMAN_C = kl.KLOOSTERMAN_BOUND_CONSTANTS


def default_k_max(n: int) -> int:
    return min(200, max(10, math.ceil(2 * math.sqrt(n))))


def tail_bound_large_k(n: int):
    """Bound for the k >= 2 pi sqrt(n) part of all four sums."""
    return 46500 * mp.mpf(n) ** (mp.mpf(15) / 16)


def small_k_bound(n: int):
    """Bound for the 2 <= k < 2 pi sqrt(n) part of all four sums."""
    return 200 * mp.mpf(n) ** (mp.mpf(1) / 16) * mp.exp(mp.sqrt(3) * mp.pi / 3 * mp.sqrt(n))


@dataclass
class TruncationReport:
    n: int
    k_max: int
    family_sums: dict
    total: object
    rounded: int
    residual: object
    error_budget: object
    tail_bound: object
    imag_part: object
    target: int | None = None
    per_k: list = field(default_factory=list)

    @property
    def reconstructed(self) -> bool:
        ok = self.residual + self.error_budget < mp.mpf(1) / 2
        return bool(ok and (self.target is None or self.rounded == self.target))

    def as_dict(self):
        from .numerics import jsonable

        return jsonable({
            "n": self.n, "k_max": self.k_max, "family_sums": self.family_sums, "total": self.total,
            "rounded": self.rounded, "residual": self.residual, "error_budget": self.error_budget,
            "tail_bound": self.tail_bound, "imag_part": self.imag_part, "target": self.target,
            "reconstructed": self.reconstructed,
        })


def _nearest(x) -> int:
    return int(mp.floor(x + mp.mpf(1) / 2))


def rademacher_p(n: int, k_max: int, prec: int = 192, target: int | None = None) -> TruncationReport:
    """Rademacher's series for p(n) through k_max, using the closed form of I_{3/2}."""
    if n < 1 or k_max < 1:
        raise ValueError("need n >= 1 and k_max >= 1")
    m = 24 * n - 1
    with workprec(prec + GUARD_BITS):
        sm = mp.sqrt(m)
        wp = prec + GUARD_BITS + _magnitude_bits(mp.pi * sm / 6)
    with workprec(wp):
        sm = mp.sqrt(m)
        pref = 2 * mp.pi / mp.mpf(m) ** (mp.mpf(3) / 4)
        total = mp.mpc(0)
        budget = mp.mpf(0)
        for k in range(1, k_max + 1):
            A = kl.A_k(k, n, wp)
            bess = bessel_I32(mp.pi * sm / (6 * k))
            total += A.value / k * bess
            budget += A.error_bound / k * bess
        total *= pref
        budget = budget * pref + abs(total) * mp.mpf(2) ** (4 - wp)
        rounded = _nearest(total.real)
        return TruncationReport(
            n, k_max, {"A": total.real}, total.real, rounded, abs(total.real - rounded), budget,
            None, abs(total.imag), target,
        )


def _family1_term(n: int, k: int, wp: int):
    K = kl.calK(k, n, wp)
    arg = 2 * mp.pi * mp.sqrt(n) / (3 * k)
    i1 = bessel_I1(arg, wp)
    # weight-0 Rademacher term: the circle integral gives one factor 1/k
    val = K.value / k * i1
    err = K.error_bound / k * i1
    bound = i1  # |calK_k| <= k
    return val, err, bound, K.n_terms <= k


def _kfamily_term(name: str, b: Fraction, n: int, k: int, wp: int, cfg: QuadratureConfig, prec: int):
    ints = curly_I_batch(b, k, range(k), n, cfg, prec)
    val = mp.mpc(0)
    err = mp.mpf(0)
    for nu, q in enumerate(ints):
        K = kl.kloosterman_family(name, k, nu, n, wp)
        s = -1 if nu % 2 else 1
        val += s * K.value * q.value
        err += abs(K.value) * q.err + K.error_bound * abs(q.value)
    # per-term screen: Kloosterman bound times the curly-I bound
    c = 2 * mp.pi / k * mp.sqrt(2 * mp.mpf(b.numerator) / b.denominator * n)
    i1 = bessel_I1(c, wp)
    bound = sum(abs(2 / mp.cos(a_kv(k, nu))) for nu in range(k)) * i1
    bound *= KLOOSTERMAN_C[name] * mp.sqrt(n) * mp.mpf(k) ** (mp.mpf(3) / 4)
    return val / (k * k), err / (k * k), bound / (k * k)


def p2_exact_formula(n: int, k_max: int | None = None, prec: int = 192,
                     cfg: QuadratureConfig | None = None, target: int | None = None) -> TruncationReport:
    """The four-family exact formula truncated at k <= k_max.

    ``target`` (the known p2(n), if any) is only used to fill in the
    ``reconstructed`` verdict; it never influences the computed total.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    k_max = default_k_max(n) if k_max is None else k_max
    cfg = cfg or QuadratureConfig()
    with workprec(prec + GUARD_BITS):
        wp = prec + GUARD_BITS + _magnitude_bits(2 * mp.pi * mp.sqrt(n) / 3)
    with workprec(wp):
        sn = mp.sqrt(n)
        s6n = mp.sqrt(6 * n)
        sums = {"calK": mp.mpc(0), "K8": mp.mpc(0), "K4": mp.mpc(0), "K6": mp.mpc(0)}
        budget = mp.mpf(0)
        per_k = []
        pref1 = mp.pi / (6 * sn)
        for k in range(1, k_max + 1):
            g = gcd(k, 6)
            if g == 1:
                v, e, bd, settled = _family1_term(n, k, wp)
                sums["calK"] += pref1 * v
                budget += pref1 * e
                per_k.append(("calK", k, abs(pref1 * v), pref1 * bd, settled))
            for name, gk, b, num in FAMILIES:
                if g != gk:
                    continue
                pref = mp.pi * num.numerator / num.denominator / s6n
                v, e, bd = _kfamily_term(name, b, n, k, wp, cfg, prec)
                sums[name] += pref * v
                budget += pref * e
                per_k.append((name, k, abs(pref * v), pref * bd, False))
        total = sum(sums.values(), mp.mpc(0))
        budget += abs(total) * mp.mpf(2) ** (8 - wp)
        rounded = _nearest(total.real)
        if k_max >= 2 * mp.pi * sn:
            tail = tail_bound_large_k(n)
        else:
            tail = small_k_bound(n) + tail_bound_large_k(n)
        return TruncationReport(
            n, k_max, {key: v.real for key, v in sums.items()}, total.real, rounded,
            abs(total.real - rounded), budget, tail, abs(total.imag), target, per_k,
        )


def per_term_screen(report: TruncationReport, prec: int = 192) -> Report:
    """Every k-term magnitude against its bound instantiated at that k.

    A calK term whose sum has at most k unit terms meets its bound exactly,
    so an equality case (k = 1) is not left inconclusive.
    """
    verdicts = []
    worst = (mp.mpf(0), None)
    for fam, k, mag, bound, settled in report.per_k:
        v = check_le(mag, bound, prec)
        verdicts.append(PASS if v == INCONCLUSIVE and settled else v)
        r = mag / bound
        if r > worst[0]:
            worst = (r, {"family": fam, "k": k})
    return Report("per_term_screen", {"n": report.n, "k_max": report.k_max}, combine(verdicts),
                  {"max_ratio": worst[0], "at": worst[1]})


def tail_sum(n: int, k_lo: int, k_hi: int, prec: int = 128, cfg: QuadratureConfig | None = None):
    """Sum of the absolute values of the four families' k-terms for k_lo <= k <= k_hi.

    Absolute values per family and per k give an upper envelope for the
    signed tail that the bounds are stated for.
    """
    cfg = cfg or QuadratureConfig(abs_tol=mp.mpf(2) ** -40)
    with workprec(prec + GUARD_BITS):
        wp = prec + GUARD_BITS + _magnitude_bits(2 * mp.pi * mp.sqrt(n) / 3)
    with workprec(wp):
        sn, s6n = mp.sqrt(n), mp.sqrt(6 * n)
        fam_abs = {"calK": mp.mpf(0), "K8": mp.mpf(0), "K4": mp.mpf(0), "K6": mp.mpf(0)}
        for k in range(k_lo, k_hi + 1):
            g = gcd(k, 6)
            if g == 1:
                v = _family1_term(n, k, wp)[0]
                fam_abs["calK"] += abs(mp.pi / (6 * sn) * v)
            for name, gk, b, num in FAMILIES:
                if g == gk:
                    v, _, _ = _kfamily_term(name, b, n, k, wp, cfg, prec)
                    fam_abs[name] += abs(mp.pi * num.numerator / num.denominator / s6n * v)
        return sum(fam_abs.values()), fam_abs


# --------------------------------------------------------------------------
# float64 tail sums: the tail bounds have orders of magnitude of slack, so
# the long k-ranges they need are summed in double precision


def _i1_float(x: np.ndarray) -> np.ndarray:
    # power series with positive terms only; fine for the x <= 60 we meet here
    if np.max(x, initial=0.0) > 60:
        raise ValueError("float I_1 series used outside its range")
    half = x / 2
    term = half.copy()
    total = term.copy()
    for m in range(1, 200):
        term = term * half * half / (m * (m + 1))
        total += term
        if np.all(term <= 1e-17 * total):
            break
    return total


def _curly_I_float(b: float, k: int, n: int, panels: int = 4) -> np.ndarray:
    """curly-I_{b,k,nu}(n) for all nu in 0..k-1, composite Gauss-Legendre in t, x = sin t."""
    c = 2 * math.pi / k * math.sqrt(2 * b * n)
    bk = math.pi / k * math.sqrt(b / 3)
    a = math.pi / k * (np.arange(k) - 1 / 6)
    gx, gw = np.polynomial.legendre.leggauss(24)
    prev = None
    while panels <= 4096:
        edges = np.linspace(0, math.pi / 2, panels + 1)
        mid, half = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
        t = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
        w = (half[:, None] * gw[None, :]).ravel()
        base = w * np.cos(t) ** 2 * _i1_float(c * np.cos(t))
        y = bk * np.sin(t)
        # cos 2a + cosh 2y = 2 cos^2 a + 2 sinh^2 y, without the cancellation near cos a = 0
        f = 2 * np.cos(a)[:, None] * np.cosh(y)[None, :] / (np.cos(a)[:, None] ** 2 + np.sinh(y)[None, :] ** 2)
        vals = f @ base
        scale = np.abs(f) @ np.abs(base)
        if prev is not None and np.all(np.abs(vals - prev) <= 1e-12 * scale):
            return vals
        prev, panels = vals, panels * 2
    raise QuadratureError(f"float curly-I did not settle at k={k}, n={n}")


def _sum_float(counts, den: int) -> complex:
    j = np.fromiter(counts.keys(), dtype=np.float64, count=len(counts))
    c = np.fromiter(counts.values(), dtype=np.float64, count=len(counts))
    return complex(np.sum(c * np.exp(2j * np.pi * j / den)))


def tail_sum_float(n: int, k_lo: int, k_hi: int) -> tuple[float, dict]:
    """Float64 version of :func:`tail_sum`, with a 1e-9 relative safety factor."""
    sn, s6n = math.sqrt(n), math.sqrt(6 * n)
    fam_abs = {"calK": 0.0, "K8": 0.0, "K4": 0.0, "K6": 0.0}
    for k in range(k_lo, k_hi + 1):
        g = gcd(k, 6)
        if g == 1:
            D, rows = kl._calk_data(k)
            step, nk = D // k, n % k
            K = _sum_float(Counter((r - nk * h * step) % D for h, r in rows), D)
            i1 = float(_i1_float(np.array([2 * math.pi * sn / (3 * k)]))[0])
            fam_abs["calK"] += abs(math.pi / (6 * sn) * K / k * i1)
        for name, gk, b, num in FAMILIES:
            if g != gk:
                continue
            ints = _curly_I_float(float(b), k, n)
            tot = 0j
            for nu in range(k):
                counts, D = kl._family_counts(name, k, kl.nu_linear(name, nu, k), n % k)
                tot += (-1) ** nu * _sum_float(counts, D) * ints[nu]
            fam_abs[name] += abs(math.pi * float(num) / s6n * tot / (k * k))
    safety = 1 + 1e-9
    fam_abs = {key: v * safety for key, v in fam_abs.items()}
    return sum(fam_abs.values()), fam_abs


def verify_tail_bounds(n: int, factor: int = 10, prec: int = 128) -> Report:
    """Large-k and small-k bounds against direct summation up to k = factor * 2 pi sqrt(n).

    The sums are float64 envelopes (see :func:`tail_sum_float`); the
    comparison itself runs at ``prec``.
    """
    split = math.ceil(2 * math.pi * math.sqrt(n))
    top = factor * split
    large, fam_large = tail_sum_float(n, split, top)
    small, fam_small = tail_sum_float(n, 2, split - 1) if split > 2 else (0.0, {})
    with workprec(prec):
        vl = check_le(mp.mpf(large), tail_bound_large_k(n), prec)
        vs = check_le(mp.mpf(small), small_k_bound(n), prec)
        return Report("tail_bounds", {"n": n, "k_split": split, "k_top": top}, combine([vl, vs]),
                      {"large_k_sum": large, "large_k_bound": tail_bound_large_k(n),
                       "small_k_sum": small, "small_k_bound": small_k_bound(n),
                       "large_by_family": fam_large, "small_by_family": fam_small})


def lehmer_decomposition(n: int, p2n: int, prec: int = 192, cfg: QuadratureConfig | None = None) -> Report:
    """|p2(n) - (two leading terms)| against the small-k plus large-k bound."""
    cfg = cfg or QuadratureConfig()
    with workprec(prec + GUARD_BITS):
        wp = prec + GUARD_BITS + _magnitude_bits(2 * mp.pi * mp.sqrt(n) / 3)
    with workprec(wp):
        sn = mp.sqrt(n)
        t1 = mp.pi / (6 * sn) * bessel_I1(2 * mp.pi * sn / 3, wp)
        q = curly_I_batch(Fraction(1, 18), 1, [0], n, cfg, prec)[0]
        t2 = mp.pi / (18 * mp.sqrt(6 * n)) * q.value
        main = t1 + t2
        diff = abs(p2n - main)
        bound = small_k_bound(n) + tail_bound_large_k(n)
        return Report("lehmer_bound", {"n": n, "prec": prec}, check_le(diff, bound, prec),
                      {"main": main, "p2": p2n, "abs_diff": diff, "bound": bound, "main_over_p2": main / p2n})
