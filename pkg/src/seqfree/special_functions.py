"""I_1, the effective Bessel expansion, the integrals curly-I and h(z, k).

All routines take an explicit ``prec`` (bits) and work internally with
guard bits; results are mpf/mpc at the caller's current context unless
stated otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from mpmath.calculus.quadrature import GaussLegendre

from .numerics import FAIL, GUARD_BITS, PASS, Report, check_le, combine, mp, to_mpf, workprec

LOG2E = 1.4426950408889634


class QuadratureError(RuntimeError):
    """Raised when panel doubling does not reach the requested tolerance."""


# --------------------------------------------------------------------------
# I_1


def _magnitude_bits(x) -> int:
    return int(float(abs(x)) * LOG2E) + 8


def bessel_I1(x, prec: int | None = None):
    """I_1(x) for real x >= 0 from its power series, in fixed-point integers.

    Terms are accumulated until they drop below 2^-(prec+64) of the partial
    sum, so the result is accurate to about ``prec`` bits for every x.
    """
    prec = prec or mp.prec
    x = mp.mpf(x)
    if x < 0:
        raise ValueError("bessel_I1 needs x >= 0")
    if x == 0:
        return mp.mpf(0)
    # absolute fixed point: enough bits for the relative target at both ends
    small = max(0, -int(mp.floor(mp.log(x, 2)))) if x < 1 else 0
    wp = prec + GUARD_BITS + small
    with workprec(wp + _magnitude_bits(x)):
        t = int(mp.ldexp(x, wp - 1))  # x/2 in fixed point
    y = (t * t) >> wp
    term = t
    s = t
    m = 1
    while True:
        term = ((term * y) >> wp) // (m * (m + 1))
        if term == 0:
            break
        s += term
        if term < (s >> (prec + GUARD_BITS)) and m * (m + 1) > y >> (wp - 1):
            break
        m += 1
    return mp.ldexp(mp.mpf(s), -wp)


def bessel_I1_float_bounds_hold(x) -> bool:
    """I_1(x) <= x on [0, 1) and I_1(x) <= e^x on [1, oo), for one sample."""
    v = bessel_I1(x)
    return bool(v <= x) if x < 1 else bool(v <= mp.exp(x))


def bessel_I32(x):
    """Closed form sqrt(2/(pi x)) (cosh x - sinh x / x) of I_{3/2}."""
    x = mp.mpf(x)
    return mp.sqrt(2 / (mp.pi * x)) * (mp.cosh(x) - mp.sinh(x) / x)


# --------------------------------------------------------------------------
# effective asymptotic expansion of I_nu


def pochhammer_q(lam: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for j in range(n):
        out *= lam + j
    return out


def banerjee_coefficient(n: int, nu: int = 1) -> Fraction:
    """a_n(nu) = (-1)^n (1/2-nu)_n (1/2+nu)_n / (2^n n!), exactly."""
    half = Fraction(1, 2)
    v = pochhammer_q(half - nu, n) * pochhammer_q(half + nu, n) / (2 ** n * math.factorial(n))
    return -v if n % 2 else v


def banerjee_E(N: int, nu: int = 1):
    """The constant E_nu^N multiplying the first omitted term."""
    if N < 1:
        raise ValueError("N must be >= 1")
    c = (2 * nu + 1) * (nu + 2)
    L = mp.log(N + 1)
    e1 = 1 + c / L + mp.mpf(c) / (N + 2)
    return e1 / mp.sqrt(2 * mp.pi) + (mp.sqrt(2) + 1 / mp.sqrt(nu + N + mp.mpf(3) / 2)) / L


def banerjee_expansion(x, N: int, nu: int = 1):
    """(approximation, bound) for I_nu(x) truncated after the x^-N term."""
    x = mp.mpf(x)
    if x < 1:
        raise ValueError("the effective expansion is stated for x >= 1")
    if N < max(1, nu):
        raise ValueError("need N >= max(1, nu)")
    pre = mp.exp(x) / mp.sqrt(2 * mp.pi * x)
    s = mp.mpf(0)
    for k in range(N + 1):
        s += (-1) ** k * to_mpf(banerjee_coefficient(k, nu)) / x ** k
    bound = pre * banerjee_E(N, nu) * abs(to_mpf(banerjee_coefficient(N + 1, nu))) / x ** (N + 1)
    return pre * s, bound


def verify_banerjee(xs=None, Ns=range(1, 7), prec: int = 192) -> Report:
    """|I_1(x) - approx| < bound on a log grid, with the series as ground truth."""
    verdicts = []
    worst = (mp.mpf(0), None)
    with workprec(prec):
        if xs is None:
            xs = [mp.mpf(10) ** (mp.mpf(j) / 8) for j in range(0, 25)]
        for x in xs:
            with workprec(prec + _magnitude_bits(x)):
                truth = bessel_I1(x, prec + _magnitude_bits(x))
                for N in Ns:
                    approx, bound = banerjee_expansion(x, N)
                    err = abs(truth - approx)
                    verdicts.append(check_le(err, bound, prec))
                    r = err / bound
                    if r > worst[0]:
                        worst = (+r, {"x": x, "N": N})
    return Report("banerjee_bound", {"points": len(xs), "N": list(Ns), "prec": prec}, combine(verdicts),
                  {"max_err_over_bound": worst[0], "at": worst[1]})


# --------------------------------------------------------------------------
# the integrand 1/cosh(ai + bx) + 1/cosh(ai - bx)


def f_ab(a, b, x):
    """4 cos(a) cosh(bx) / (cos(2a) + cosh(2bx))."""
    return 4 * mp.cos(a) * mp.cosh(b * x) / (mp.cos(2 * a) + mp.cosh(2 * b * x))


def f_ab_direct(a, b, x):
    """The defining two-term complex sum; its imaginary part vanishes."""
    return 1 / mp.cosh(mp.mpc(b * x, a)) + 1 / mp.cosh(mp.mpc(-b * x, a))


def a_kv(k: int, nu: int):
    return mp.pi / k * (nu - mp.mpf(1) / 6)


def b_k(b, k: int):
    return mp.pi / k * mp.sqrt(to_mpf(b) / 3)


def verify_f_ab(samples: int = 1000, prec: int = 192, seed: int = 0) -> Report:
    """Closed form against the complex two-cosh sum at random admissible (a, b, x)."""
    rng = np.random.default_rng(seed)
    worst = mp.mpf(0)
    bad = 0
    with workprec(prec):
        tol = mp.mpf(2) ** (16 - prec)
        for _ in range(samples):
            k = int(rng.integers(1, 60))
            nu = int(rng.integers(0, k + 1))
            b = mp.mpf(int(rng.integers(1, 2 ** 20))) / 2 ** 21
            x = mp.mpf(int(rng.integers(0, 2 ** 30))) / 2 ** 30
            a, bb = a_kv(k, nu), b_k(b, k)
            lhs = f_ab(a, bb, x)
            rhs = f_ab_direct(a, bb, x)
            d = abs(lhs - rhs) / max(1, abs(lhs))
            worst = max(worst, d)
            if d > tol:
                bad += 1
    return Report("f_ab_closed_form", {"samples": samples, "prec": prec}, PASS if not bad else FAIL,
                  {"max_rel_diff": worst, "tolerance": mp.mpf(2) ** (16 - prec), "bad": bad})


def verify_f_monotone(grid: int = 200, prec: int = 128) -> Report:
    """|f_{a,b}| non-increasing on [0,1] for a sample of (k, nu, b)."""
    bad = []
    with workprec(prec):
        for b in (Fraction(1, 18), Fraction(5, 36), Fraction(1, 6), Fraction(1, 2)):
            for k in (1, 2, 3, 5, 8, 13, 40):
                for nu in range(0, k + 1):
                    a, bb = a_kv(k, nu), b_k(b, k)
                    prev = None
                    for i in range(grid + 1):
                        v = abs(f_ab(a, bb, mp.mpf(i) / grid))
                        if prev is not None and v > prev * (1 + mp.mpf(2) ** (-prec // 2)):
                            bad.append((str(b), k, nu, i))
                            break
                        prev = v
    return Report("f_ab_monotone", {"grid": grid}, PASS if not bad else FAIL, {"violations": bad[:10]})


# --------------------------------------------------------------------------
# composite Gauss-Legendre


@dataclass(frozen=True)
class QuadratureConfig:
    """Composite Gauss-Legendre with panel doubling.

    ``degree`` is mpmath's Gauss-Legendre degree (3 * 2^(degree-1) nodes per
    panel); the panel count starts at ``initial_panels`` and doubles up to
    ``max_refinements`` times.
    """

    abs_tol: object = field(default_factory=lambda: mp.mpf(2) ** -64)
    max_refinements: int = 8
    initial_panels: int = 2
    degree: int = 4

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.initial_panels < 1 or self.max_refinements < 1:
            raise ValueError("need at least one panel and one refinement")

    def schedule(self):
        return [self.initial_panels * 2 ** j for j in range(self.max_refinements + 1)]


@dataclass
class QuadResult:
    value: object
    err: object
    panels: int
    levels: int


_GL = {}


def _gl_nodes(degree: int, wp: int):
    key = (degree, wp)
    if key not in _GL:
        with workprec(wp):
            _GL[key] = GaussLegendre(mp).calc_nodes(degree, wp)
    return _GL[key]


@lru_cache(maxsize=64)
def _panel_nodes(lo_num, hi_num, panels: int, degree: int, wp: int, kind: str):
    """(weight, point) pairs of the composite rule on [lo, hi] at precision wp."""
    with workprec(wp):
        lo = mp.pi / 2 if lo_num == "pi/2" else mp.mpf(lo_num)
        hi = mp.pi / 2 if hi_num == "pi/2" else mp.mpf(hi_num)
        h = (hi - lo) / panels
        out = []
        for p in range(panels):
            left = lo + p * h
            for x, w in _gl_nodes(degree, wp):
                t = left + (x + 1) * h / 2
                if kind == "sincos":
                    out.append((w * h / 2, mp.sin(t), mp.cos(t)))
                else:
                    out.append((w * h / 2, t))
        return tuple(out)


def composite_gl(func, lo, hi, cfg: QuadratureConfig, prec: int) -> QuadResult:
    """Integrate a scalar function on [lo, hi] by panel doubling.

    ``err`` is |Q_P - Q_2P| plus a rounding allowance; the doubled-panel value
    is returned.
    """
    wp = prec + GUARD_BITS
    with workprec(wp):
        lo, hi = mp.mpf(lo), mp.mpf(hi)
        prev = None
        for level, P in enumerate(cfg.schedule()):
            h = (hi - lo) / P
            s = mp.mpf(0)
            scale = mp.mpf(0)
            for p in range(P):
                left = lo + p * h
                for x, w in _gl_nodes(cfg.degree, wp):
                    v = func(left + (x + 1) * h / 2)
                    s += w * v
                    scale += w * abs(v)
            s *= h / 2
            scale *= abs(h) / 2
            if prev is not None:
                err = abs(s - prev) + scale * mp.mpf(2) ** (8 - prec)
                if err <= to_mpf(cfg.abs_tol) or abs(s - prev) <= scale * mp.mpf(2) ** (8 - prec):
                    return QuadResult(s, err, P, level + 1)
            prev = s
    raise QuadratureError(f"no convergence after {cfg.max_refinements} doublings (last diff {err})")


# --------------------------------------------------------------------------
# curly-I


def _curly_wp(c, prec: int) -> int:
    return prec + GUARD_BITS + _magnitude_bits(c)


def curly_I_batch(b, k: int, nus, n: int, cfg: QuadratureConfig | None = None, prec: int = 192):
    """curly-I_{b,k,nu}(n) for several nu at once, sharing the Bessel values.

    With x = sin(t) the integral becomes
        int_0^{pi/2} f(a, b_k, sin t) cos^2 t I_1(c cos t) dt,  c = (2 pi/k) sqrt(2 b n),
    whose integrand is analytic, so plain composite Gauss-Legendre converges
    geometrically. Returns a list of QuadResult in the order of ``nus``.
    """
    cfg = cfg or QuadratureConfig()
    nus = list(nus)
    if k < 1 or any(not 0 <= v < k for v in nus):
        raise ValueError("need k >= 1 and 0 <= nu < k")
    bq = Fraction(b) if not isinstance(b, mpmath.mpf) else b
    if bq <= 0:
        raise ValueError("b must be positive")
    with workprec(prec + GUARD_BITS):
        c0 = 2 * mp.pi / k * mp.sqrt(2 * to_mpf(bq) * n)
    wp = _curly_wp(c0, prec)
    tol = to_mpf(cfg.abs_tol)
    with workprec(wp):
        c = 2 * mp.pi / k * mp.sqrt(2 * to_mpf(bq) * n)
        bk = b_k(bq, k)
        cos_a = [mp.cos(a_kv(k, v)) for v in nus]
        cos_2a = [2 * ca * ca - 1 for ca in cos_a]
        rounding = mp.mpf(2) ** (8 - wp)
        prev = None
        for level, P in enumerate(cfg.schedule()):
            nodes = _panel_nodes(0, "pi/2", P, cfg.degree, wp, "sincos")
            sums = [mp.mpf(0)] * len(nus)
            scale = [mp.mpf(0)] * len(nus)
            for w, sx, cx in nodes:
                base = w * cx * cx * bessel_I1(c * cx, wp)
                ch = mp.cosh(bk * sx)
                ch2 = 2 * ch * ch - 1
                for i in range(len(nus)):
                    term = base * 4 * cos_a[i] * ch / (cos_2a[i] + ch2)
                    sums[i] += term
                    scale[i] += abs(term)
            if prev is not None:
                diffs = [abs(s - p) for s, p in zip(sums, prev)]
                errs = [d + sc * rounding for d, sc in zip(diffs, scale)]
                if all(e <= tol for e in errs):
                    return [QuadResult(s, e, P, level + 1) for s, e in zip(sums, errs)]
            prev = sums
    raise QuadratureError(
        f"curly-I(b={b}, k={k}, n={n}) missed abs_tol {mpmath.nstr(tol, 5)} "
        f"after {cfg.max_refinements} doublings (max err {mpmath.nstr(max(errs), 5)})"
    )


def curly_I(b, k: int, nu: int, n: int, cfg: QuadratureConfig | None = None, prec: int = 192) -> QuadResult:
    return curly_I_batch(b, k, [nu], n, cfg, prec)[0]


def curly_I_direct(b, k: int, nu: int, n: int, prec: int = 128):
    """Independent evaluation over [-1, 1] from the defining integrand (mpmath.quad)."""
    with workprec(prec):
        bq = to_mpf(Fraction(b))
        c = 2 * mp.pi / k * mp.sqrt(2 * bq * n)
        a, bb = a_kv(k, nu), b_k(bq, k)

        def g(x):
            s = mp.sqrt(1 - x * x)
            return s * mp.besseli(1, c * s) / mp.cosh(mp.mpc(-bb * x, a))

        return mp.quad(g, [-1, 0, 1])


def verify_curly_I_bound(cases, cfg: QuadratureConfig | None = None, prec: int = 192) -> Report:
    """|curly-I_{b,k,nu}(n)| <= |2 sec a_{k,nu}| I_1((2 pi/k) sqrt(2 b n))."""
    verdicts = []
    worst = (mp.mpf(0), None)
    for b, k, n in cases:
        vals = curly_I_batch(b, k, range(k), n, cfg, prec)
        with workprec(prec + GUARD_BITS + 200):
            arg = 2 * mp.pi / k * mp.sqrt(2 * to_mpf(Fraction(b)) * n)
            i1 = bessel_I1(arg, prec + 200)
            for nu, q in enumerate(vals):
                bound = abs(2 / mp.cos(a_kv(k, nu))) * i1
                verdicts.append(check_le(abs(q.value) + q.err, bound, prec))
                if abs(q.value) / bound > worst[0]:
                    worst = (abs(q.value) / bound, {"b": str(b), "k": k, "nu": nu, "n": n})
    return Report("curly_I_bound", {"cases": len(cases)}, combine(verdicts),
                  {"max_ratio": worst[0], "at": worst[1]})


# --------------------------------------------------------------------------
# h(z, k)


def _cosh_sqrt(u, terms_tol):
    """cosh(sqrt(u)) = sum u^m / (2m)!, entire in u, no branch choice needed."""
    s = mp.mpc(1)
    term = mp.mpc(1)
    m = 0
    while True:
        m += 1
        term = term * u / ((2 * m - 1) * (2 * m))
        s += term
        if abs(term) < terms_tol and m > abs(u):
            return s


def _cosh_pair(z):
    t = 1 - (1 - z * z) ** 2
    tol = mp.mpf(2) ** (-mp.prec - 8)
    lam = mp.pi * mp.pi / 54
    return _cosh_sqrt(lam * t, tol), _cosh_sqrt(4 * lam * t, tol)


def h_function(z, k: int):
    """h(z, k) on |z| < 1, at the current working precision."""
    z = mp.mpc(z)
    if abs(z) >= 1:
        raise ValueError("h(z, k) is defined for |z| < 1")
    c1, c2 = _cosh_pair(z)
    w = 1 - z * z
    return 4 * mp.cos(mp.pi / 6) * c1 / (mp.cos(mp.pi / 3) + c2) * w ** (mp.mpf(3) / 2 - k) / mp.sqrt(2 - z * z)


def cosh_term(z):
    """cos(pi/3) + cosh(2 pi sqrt(1/54) sqrt(1 - (1 - z^2)^2))."""
    return mp.cos(mp.pi / 3) + _cosh_pair(mp.mpc(z))[1]


def cosh_infimum_closed_form(r):
    r = mp.mpf(r)
    inner = (mp.sqrt(4 * r ** 4 + 4 * r ** 6 + r ** 8) + 2 * r ** 2 + r ** 4) / 2
    return mp.cos(mp.pi / 3) + mp.cos(2 * mp.pi / mp.sqrt(54) * mp.sqrt(inner))


def _golden_min(g, lo, hi, iters):
    phi = (mp.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - phi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + phi * (b - a)
            gd = g(d)
    t = (a + b) / 2
    return t, g(t)


def verify_cosh_infimum(r, samples: int = 720, prec: int = 128) -> Report:
    """Minimum of |cosh_term| on |z| = r against the closed form; argmin near pi/2 or 3 pi/2."""
    with workprec(prec):
        r = to_mpf(r)
        if not 0 <= r <= 1:
            raise ValueError("need 0 <= r <= 1")
        closed = cosh_infimum_closed_form(r)

        def g(theta):
            return abs(cosh_term(r * mp.expjpi(theta / mp.pi)))

        grid = [2 * mp.pi * i / samples for i in range(samples)]
        vals = [g(t) for t in grid]
        i = min(range(samples), key=lambda j: vals[j])
        step = 2 * mp.pi / samples
        theta, best = _golden_min(g, grid[i] - step, grid[i] + step, prec)
        theta = theta % (2 * mp.pi)
        tol = mp.mpf(2) ** (-prec // 2)
        agree = abs(best - closed) <= tol * max(1, abs(closed))
        dist = min(abs(theta - mp.pi / 2), abs(theta - 3 * mp.pi / 2))
        near = True if r == 0 else dist <= mp.mpf(2) ** (-prec // 4) + step
        verdict = PASS if agree and near else FAIL
        return Report("cosh_infimum", {"r": r, "samples": samples, "prec": prec}, verdict,
                      {"numeric_min": best, "closed_form": closed, "argmin": theta,
                       "distance_to_pi_over_2": dist})


def M_factor(k: int):
    """Sup of |(1 - w^2)^(3/2 - k)| on |w| = 3/4 as used by the Taylor bound."""
    if k in (0, 1):
        return (mp.mpf(25) / 16) ** (mp.mpf(3) / 2 - k)
    return (mp.mpf(7) / 16) ** (mp.mpf(3) / 2 - k)


def h_sup_bound(k: int):
    num = 4 * mp.cos(mp.pi / 6) * mp.exp(mp.sqrt(mp.mpf(3) / 2) * mp.pi * 41 / 256)
    den = mp.mpf(1) / 2 + mp.cos(mp.sqrt(mp.mpf(41) / 6) * mp.pi / 8)
    return num / den * M_factor(k)


def verify_h_sup(k: int = 4, samples: int = 720, prec: int = 128) -> Report:
    """sup_{|w|=3/4} |h(w,k)| against the stated bound (on a grid plus local refinement)."""
    with workprec(prec):
        r = mp.mpf(3) / 4

        def g(theta):
            return -abs(h_function(r * mp.expjpi(theta / mp.pi), k))

        grid = [2 * mp.pi * i / samples for i in range(samples)]
        vals = [g(t) for t in grid]
        i = min(range(samples), key=lambda j: vals[j])
        step = 2 * mp.pi / samples
        theta, best = _golden_min(g, grid[i] - step, grid[i] + step, 80)
        sup = -best
        bound = h_sup_bound(k)
        return Report("h_sup", {"k": k, "samples": samples}, check_le(sup, bound, prec),
                      {"sup": sup, "bound": bound, "argmax": theta % (2 * mp.pi)})


def verify_taylor_bound(k: int = 4, N: int = 6, points: int = 16, prec: int = 128) -> Report:
    """Taylor remainder of h(., k) on |z| <= 1/4 against the stated bound.

    Taylor coefficients come from mpmath.taylor at the working precision.
    """
    with workprec(prec):
        coeffs = mp.taylor(lambda z: h_function(z, k), 0, N - 1)
        const = 2 * (mp.mpf(4) / 3) ** (N - 1) * h_sup_bound(k)
        verdicts = []
        worst = mp.mpf(0)
        for j in range(points):
            for rad in (mp.mpf(1) / 16, mp.mpf(1) / 8, mp.mpf(1) / 4):
                z = rad * mp.expjpi(mp.mpf(2 * j) / points)
                approx = mp.polyval(coeffs[::-1], z)
                rem = abs(h_function(z, k) - approx)
                bound = const * abs(z) ** N
                verdicts.append(check_le(rem, bound, prec))
                worst = max(worst, rem / bound)
        return Report("taylor_bound", {"k": k, "N": N}, combine(verdicts), {"max_ratio": worst})


def verify_integral_transform(R, k: int, n: int, cfg: QuadratureConfig | None = None,
                              prec: int = 192) -> Report:
    """Both sides of the substitution identity by independent quadratures.

    The left side uses the exponent (2 pi/3) sqrt(n(1 - x^2)); the result also
    records how far the left side with exponent 2 pi sqrt(n(1 - x^2)) lies
    from the right side.
    """
    cfg = cfg or QuadratureConfig()
    with workprec(prec + GUARD_BITS):
        R = to_mpf(R)
        if not 0 < R < 1:
            raise ValueError("need 0 < R < 1")
        lam = mp.pi / mp.sqrt(54)
        kk = mp.mpf(1) / 4 - mp.mpf(k) / 2
        sn = mp.sqrt(n)

        def lhs_integrand(scale):
            def g(x):
                w = 1 - x * x
                return (4 * mp.cos(mp.pi / 6) * mp.cosh(lam * x) / (mp.cos(mp.pi / 3) + mp.cosh(2 * lam * x))
                        * w ** kk * mp.exp(scale * mp.pi * mp.sqrt(n * w)))
            return g

        left = composite_gl(lhs_integrand(mp.mpf(2) / 3), 0, R, cfg, prec)
        r = mp.sqrt(R * R / (1 + mp.sqrt(1 - R * R)))  # = sqrt(1 - sqrt(1 - R^2)) without cancellation

        def rhs_integrand(x):
            return mp.re(h_function(x, k)) * mp.exp(-2 * mp.pi / 3 * sn * x * x)

        right_int = composite_gl(rhs_integrand, 0, r, cfg, prec)
        pref = 2 * mp.exp(2 * mp.pi / 3 * sn)
        right_val, right_err = pref * right_int.value, pref * right_int.err
        diff = abs(left.value - right_val)
        budget = 10 * (left.err + right_err)
        printed = composite_gl(lhs_integrand(mp.mpf(2)), 0, R, cfg, prec)
        return Report(
            "integral_transform",
            {"R": R, "k": k, "n": n, "prec": prec},
            PASS if diff <= budget else FAIL,
            {"lhs": left.value, "rhs": right_val, "diff": diff, "budget": budget, "upper_limit": r,
             "printed_exponent_lhs": printed.value,
             "printed_exponent_ratio": printed.value / right_val},
        )


def verify_sec_sum(k_max: int = 10_000) -> Report:
    """sum_{nu=1}^{k} |sec((pi/k)(nu - 1/6))| <= 8 k log k for 2 <= k <= k_max.

    Evaluated in float64; the reported minimum relative slack is far above
    double-precision rounding.
    """
    worst_k, worst = None, 0.0
    bad = []
    for k in range(2, k_max + 1):
        nu = np.arange(1, k + 1, dtype=np.float64)
        s = float(np.abs(1.0 / np.cos(np.pi / k * (nu - 1.0 / 6.0))).sum())
        rhs = 8.0 * k * math.log(k)
        ratio = s / rhs
        if ratio > worst:
            worst, worst_k = ratio, k
        if s > rhs * (1 - 1e-9):
            bad.append(k)
    return Report("sec_sum", {"k_max": k_max, "arithmetic": "float64"}, PASS if not bad else FAIL,
                  {"max_ratio": worst, "argmax": worst_k, "violations": bad[:10]})


def verify_bessel_lemma(prec: int = 128) -> Report:
    """I_1(x) <= x on (0,1), I_1(x) <= e^x on [1,100], and I_1 increasing on the grid."""
    bad = []
    with workprec(prec):
        xs = [mp.mpf(i) / 64 for i in range(1, 64)] + [mp.mpf(i) / 4 for i in range(4, 401)]
        prev = mp.mpf(0)
        for x in xs:
            with workprec(prec + _magnitude_bits(x)):
                v = bessel_I1(x, prec)
                ok = v <= x if x < 1 else v <= mp.exp(x)
            if not ok:
                bad.append(("bound", x))
            if v <= prev:
                bad.append(("monotone", x))
            prev = v
    return Report("bessel_lemma", {"points": len(xs)}, PASS if not bad else FAIL, {"violations": bad[:10]})
