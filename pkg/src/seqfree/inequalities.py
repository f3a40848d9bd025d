"""Log-concavity, the closing lower bound, and exact hyperbolicity of Jensen polynomials."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .numerics import FAIL, INCONCLUSIVE, PASS, Report, check_positive, combine, mp, workprec

LOGCONCAVE_FROM = 482
CLOSING_FROM = 7667


# --------------------------------------------------------------------------
# log-concavity


def logconcavity_check(n: int, table) -> int:
    """p2(n)^2 - p2(n-1) p2(n+1), exactly."""
    if not 1 <= n <= table.n_max - 1:
        raise IndexError(f"n={n} needs 1 <= n <= {table.n_max - 1}")
    return table[n] ** 2 - table[n - 1] * table[n + 1]


def logconcavity_signs(table, n_lo: int = 1, n_hi: int | None = None) -> dict[int, int]:
    n_hi = table.n_max - 1 if n_hi is None else n_hi
    out = {}
    for n in range(n_lo, n_hi + 1):
        d = logconcavity_check(n, table)
        out[n] = (d > 0) - (d < 0)
    return out


def verify_logconcavity(table, n_hi: int = 5000, threshold: int = LOGCONCAVE_FROM) -> Report:
    """Strict positivity on [threshold, n_hi] and at every even n < threshold.

    The witness lists every n < threshold where the difference is <= 0;
    zeros are listed separately since the inequality is strict.
    """
    signs = logconcavity_signs(table, 1, n_hi)
    above = [n for n in range(threshold, n_hi + 1) if signs[n] <= 0]
    even = [n for n in range(2, threshold, 2) if signs[n] <= 0]
    failures = [n for n in range(1, threshold) if signs[n] <= 0]
    zeros = [n for n, s in signs.items() if s == 0]
    verdict = PASS if not above and not even else FAIL
    return Report("logconcavity", {"n_hi": n_hi, "threshold": threshold}, verdict, {
        "violations_above_threshold": above,
        "even_violations": even,
        "failure_set_below_threshold": failures,
        "all_failures_odd": all(n % 2 for n in failures),
        "largest_failure": max(failures) if failures else None,
        "zeros": zeros,
    })


# --------------------------------------------------------------------------
# the six-term closing bound


def closing_terms(n, prec: int = 192) -> tuple:
    with workprec(prec):
        n = mp.mpf(n)
        return (
            mp.pi / (288 * n**3),
            mp.pi / (216 * mp.sqrt(6) * n ** (mp.mpf(13) / 4)),
            -1 / (50 * n ** (mp.mpf(7) / 2)),
            -9 / n ** (mp.mpf(15) / 4),
            -mp.mpf(5) / (2 * n**4),
            -200 / n**5,
        )


def closing_expression(n, prec: int = 192):
    with workprec(prec):
        return sum(closing_terms(n, prec), mp.mpf(0))


def verify_closing_inequality(n, prec: int = 192) -> Report:
    with workprec(prec):
        terms = closing_terms(n, prec)
        value = sum(terms, mp.mpf(0))
        scale = sum((abs(t) for t in terms), mp.mpf(0))
        return Report("closing_inequality", {"n": n, "prec": prec}, check_positive(value, scale, prec),
                      {"value": value, "n3_value": value * mp.mpf(n) ** 3})


def smallest_positive_closing(n_hi: int = CLOSING_FROM, prec: int = 128) -> int | None:
    """Least n0 <= n_hi with the closing expression positive on all of [n0, n_hi]."""
    n0 = None
    for n in range(n_hi, 0, -1):
        if verify_closing_inequality(n, prec).verdict != PASS:
            break
        n0 = n
    return n0


def verify_closing_range(samples=None, prec: int = 192) -> Report:
    """Positivity at the threshold and at sampled larger n, plus the empirical threshold."""
    samples = samples or sorted({CLOSING_FROM, *(int(CLOSING_FROM * 1.5**j) for j in range(1, 40))})
    reports = [verify_closing_inequality(n, prec) for n in samples]
    n0 = smallest_positive_closing(CLOSING_FROM, prec)
    return Report("closing_inequality_range", {"samples": len(samples), "prec": prec},
                  combine(r.verdict for r in reports),
                  {"smallest_positive": n0, "largest_sample": samples[-1],
                   "failed": [r.params["n"] for r in reports if r.verdict != PASS]})


# --------------------------------------------------------------------------
# exact polynomial arithmetic over Q; coefficient lists are low degree first


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_rem(a: list, b: list) -> list:
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = Fraction(b[-1])
    while len(a) >= len(b):
        q = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        a = _trim(a)
    return a


def poly_div(a: list, b: list) -> list:
    """Exact quotient a / b (b must divide a)."""
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        q = a[-1] / lead
        shift = len(a) - len(b)
        out[shift] = q
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        a = _trim(a)
    if a:
        raise ArithmeticError("inexact polynomial division")
    return out


def poly_monic(p: list) -> list:
    p = _trim(p)
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def poly_gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_rem(a, b)
    return poly_monic(a)


def derivative(p: list) -> list:
    return [i * c for i, c in enumerate(p)][1:]


def square_free_decomposition(p: list) -> list[tuple[list, int]]:
    """Yun's algorithm: p = lead * prod a_i^i with a_i square-free and coprime."""
    p = _trim(p)
    if not p:
        raise ValueError("zero polynomial")
    if len(p) == 1:
        return []
    a = poly_gcd(p, derivative(p))
    b = poly_div(p, a)
    c = poly_div(derivative(p), a)
    d = [x - y for x, y in _zip_pad(c, derivative(b))]
    out = []
    i = 1
    while len(_trim(b)) > 1:
        a = poly_gcd(b, d)
        b = poly_div(b, a)
        c = poly_div(d, a)
        d = [x - y for x, y in _zip_pad(c, derivative(b))]
        if len(a) > 1:
            out.append((a, i))
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def sturm_chain(p: list) -> list[list]:
    p = _trim(p)
    chain = [[Fraction(c) for c in p], [Fraction(c) for c in derivative(p)]]
    while True:
        r = poly_rem(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append([-c for c in r])


def _sign_changes(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def distinct_real_roots(p: list) -> int:
    """Number of distinct real roots of a square-free polynomial, via its Sturm chain at -inf and +inf."""
    p = _trim(p)
    if not p:
        raise ValueError("zero polynomial")
    if len(p) == 1:
        return 0
    chain = sturm_chain(p)
    at_pos = [_sign(q[-1]) for q in chain]
    at_neg = [_sign(q[-1]) * (-1 if (len(q) - 1) % 2 else 1) for q in chain]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def sturm_real_root_count(p: list) -> tuple[int, int]:
    """(distinct real roots, real roots counted with multiplicity)."""
    parts = square_free_decomposition(p)
    distinct = with_mult = 0
    for factor, mult in parts:
        r = distinct_real_roots(factor)
        distinct += r
        with_mult += mult * r
    return distinct, with_mult


# --------------------------------------------------------------------------
# Jensen polynomials


@dataclass(frozen=True)
class JensenPoly:
    d: int
    n: int
    coeffs: tuple[int, ...]  # binom(d, j) p2(n + j), j = 0..d


@dataclass(frozen=True)
class HyperbolicityCertificate:
    d: int
    n: int
    distinct_real_roots: int
    real_root_count: int
    hyperbolic: bool
    repeated_root: bool

    def as_dict(self):
        return {"d": self.d, "n": self.n, "distinct_real_roots": self.distinct_real_roots,
                "real_root_count": self.real_root_count, "hyperbolic": self.hyperbolic,
                "repeated_root": self.repeated_root}


def jensen_poly(d: int, n: int, table) -> JensenPoly:
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < 0 or n + d > table.n_max:
        raise IndexError(f"need 0 <= n and n + d <= {table.n_max}")
    return JensenPoly(d, n, tuple(comb(d, j) * table[n + j] for j in range(d + 1)))


def certify(jp: JensenPoly) -> HyperbolicityCertificate:
    distinct, total = sturm_real_root_count(list(jp.coeffs))
    return HyperbolicityCertificate(jp.d, jp.n, distinct, total, total == jp.d, distinct < total)


def _certify_args(args):
    d, n, coeffs = args
    return certify(JensenPoly(d, n, coeffs))


def hyperbolicity_scan(d: int, n_max: int, table, jobs: int = 1, n_min: int = 0) -> list[HyperbolicityCertificate]:
    """Certificates for shifts n_min..n_max; results are in shift order whatever ``jobs`` is."""
    polys = [jensen_poly(d, n, table) for n in range(n_min, n_max + 1)]
    if jobs <= 1:
        return [certify(p) for p in polys]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_certify_args, [(p.d, p.n, p.coeffs) for p in polys], chunksize=64))


def minimal_hyperbolic_shift(d: int, n_max: int, table, jobs: int = 1) -> Report:
    """Largest non-hyperbolic shift in 0..n_max, and a check that the tail above it is hyperbolic.

    Degree 2 is allowed too (it is the log-concavity cross-check).
    """
    if not 2 <= d <= 8:
        raise ValueError("desk-scale scans need 2 <= d <= 8")
    certs = hyperbolicity_scan(d, n_max, table, jobs)
    failures = [c.n for c in certs if not c.hyperbolic]
    last = max(failures) if failures else None
    tail_ok = all(c.hyperbolic for c in certs if last is None or c.n > last)
    # a failure at the very top of the range gives no evidence of a hyperbolic tail
    verdict = PASS if tail_ok and (last is None or last < n_max - max(10, n_max // 10)) else INCONCLUSIVE
    return Report("hyperbolicity", {"d": d, "n_max": n_max}, verdict, {
        "failures": failures, "largest_failure": last,
        "empirical_N": None if last is None else last + 1,
        "repeated_roots": [c.n for c in certs if c.repeated_root],
    })


def degree2_matches_logconcavity(n_max: int, table) -> Report:
    """J^{2,n-1} hyperbolic  <=>  p2(n)^2 - p2(n-1) p2(n+1) >= 0, for 1 <= n <= n_max."""
    certs = hyperbolicity_scan(2, n_max - 1, table)
    mismatches = []
    for c in certs:
        n = c.n + 1
        if c.hyperbolic != (logconcavity_check(n, table) >= 0):
            mismatches.append(n)
    return Report("degree2_equivalence", {"n_max": n_max}, FAIL if mismatches else PASS,
                  {"mismatches": mismatches, "checked": len(certs)})
