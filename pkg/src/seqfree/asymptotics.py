"""The nine-term asymptotic expansion of p2(n) and its explicit error constant."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .numerics import GUARD_BITS, PASS, Report, check_le, check_positive, combine, mp, workprec

ERROR_CONSTANT = 15
N_TERMS = 9


@lru_cache(maxsize=16)
def _closed_forms(prec: int) -> tuple:
    with workprec(prec + GUARD_BITS):
        pi, s2, s3 = mp.pi, mp.sqrt(2), mp.sqrt(3)
        a = (
            1 / (4 * s3),
            1 / (18 * s2),
            -3 * s3 / (64 * pi),
            -(324 + 5 * pi**2) / (3888 * s2 * pi),
            -45 * s3 / (2048 * pi**2),
            (1080 + 17 * pi**2) / (186624 * s2),
            -945 * s3 / (32768 * pi**3),
            -(349920 + 33048 * pi**2 + 455 * pi**4) / (40310784 * s2 * pi),
            -127575 * s3 / (2097152 * pi**4),
        )
        return tuple(+x for x in a)


@dataclass(frozen=True)
class AsymptoticExpansion:
    """a_1..a_9 evaluated from their closed forms at ``prec`` bits (plus guard bits)."""

    a: tuple
    prec: int

    @classmethod
    def at(cls, prec: int = 192) -> "AsymptoticExpansion":
        return cls(_closed_forms(prec), prec)

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if x > 0 else -1 for x in self.a)

    def poly(self, n, terms: int = N_TERMS):
        """P(n) = sum_{k <= terms} a_k n^{-(k+2)/4}."""
        with workprec(self.prec + GUARD_BITS):
            r = mp.mpf(n) ** (-mp.mpf(1) / 4)
            p = r**3
            total = mp.mpf(0)
            for k in range(terms):
                total += self.a[k] * p
                p *= r
            return total

    def poly_abs(self, n, terms: int = N_TERMS):
        with workprec(self.prec + GUARD_BITS):
            r = mp.mpf(n) ** (-mp.mpf(1) / 4)
            return sum((abs(self.a[k]) * r ** (k + 3) for k in range(terms)), mp.mpf(0))


def growth(n, prec: int = 192):
    """e^{(2 pi/3) sqrt n}."""
    with workprec(prec + GUARD_BITS):
        return mp.exp(2 * mp.pi / 3 * mp.sqrt(n))


def p2_asymptotic(n: int, prec: int = 192, terms: int = N_TERMS):
    if n < 1:
        raise ValueError("need n >= 1")
    exp = AsymptoticExpansion.at(prec)
    with workprec(prec + GUARD_BITS):
        return exp.poly(n, terms) * growth(n, prec)


def bringmann_mahlburg(n: int, prec: int = 192):
    """(1/(4 sqrt 3 n^{3/4}) + 1/(18 sqrt 2 n)) e^{(2 pi/3) sqrt n}."""
    with workprec(prec + GUARD_BITS):
        n = mp.mpf(n)
        return (1 / (4 * mp.sqrt(3) * n ** (mp.mpf(3) / 4)) + 1 / (18 * mp.sqrt(2) * n)) * growth(n, prec)


def error_envelope(n):
    """E(n) = 15 / n^3."""
    return mp.mpf(ERROR_CONSTANT) / mp.mpf(n) ** 3


def scaled_error(n: int, p2n: int, prec: int = 192):
    """n^3 |p2(n) - asymptotic| / e^{(2 pi/3) sqrt n}.

    The n^3 scaling cancels about log2(n^3) bits, hence the extra guard bits
    on top of the usual ones.
    """
    wp = prec + GUARD_BITS + 3 * int(n).bit_length()
    exp = AsymptoticExpansion.at(wp)
    with workprec(wp):
        g = growth(n, wp)
        return mp.mpf(n) ** 3 * abs(mp.mpf(p2n) / g - exp.poly(n))


def error_sup(table, n_lo: int, n_hi: int, prec: int = 192):
    """(sup, argmax) of the scaled error over [n_lo, n_hi]."""
    if not 1 <= n_lo <= n_hi:
        raise ValueError("need 1 <= n_lo <= n_hi")
    best, arg = mp.mpf(-1), None
    for n in range(n_lo, n_hi + 1):
        e = scaled_error(n, table[n], prec)
        if e > best:
            best, arg = e, n
    return best, arg


def verify_error_sup(table, n_lo: int = 1, n_hi: int = 2000, prec: int = 192) -> Report:
    sup, arg = error_sup(table, n_lo, n_hi, prec)
    verdict = check_le(sup, mp.mpf(ERROR_CONSTANT), prec)
    return Report("asymptotic_error_sup", {"n_lo": n_lo, "n_hi": n_hi, "prec": prec}, verdict,
                  {"sup": sup, "argmax": arg, "constant": ERROR_CONSTANT})


def sweep_rows(table, n_lo: int, n_hi: int, prec: int = 192):
    """(n, p2, asymptotic, scaled error) rows for CSV output."""
    for n in range(n_lo, n_hi + 1):
        yield n, table[n], p2_asymptotic(n, prec), scaled_error(n, table[n], prec)


def verify_envelope(n_max: int = 10**5, threshold: int = 8, prec: int = 128) -> Report:
    """P(n) > 0 for 1 <= n <= n_max, and P(n) > E(n) for threshold <= n <= n_max.

    Also reports where P > E fails below the threshold.
    """
    exp = AsymptoticExpansion.at(prec)
    verdicts = []
    below = []
    min_ratio = (None, None)
    with workprec(prec + GUARD_BITS):
        for n in range(1, n_max + 1):
            p = exp.poly(n)
            scale = exp.poly_abs(n)
            verdicts.append(check_positive(p, scale, prec))
            e = error_envelope(n)
            v = check_positive(p - e, scale + e, prec)
            if n >= threshold:
                verdicts.append(v)
                r = p / e
                if min_ratio[0] is None or r < min_ratio[0]:
                    min_ratio = (r, n)
            elif v != PASS:
                below.append(n)
    return Report("envelope", {"n_max": n_max, "threshold": threshold, "prec": prec}, combine(verdicts),
                  {"p_over_e_min": min_ratio[0], "at": min_ratio[1], "p_le_e_below_threshold": below})
