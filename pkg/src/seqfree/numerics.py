"""Precision handling and the pass/fail/inconclusive comparison rule."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

import mpmath

mp = mpmath.mp

GUARD_BITS = 64

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@contextmanager
def workprec(prec: int):
    with mp.workprec(int(prec)):
        yield mp


def to_mpf(x) -> mpmath.mpf:
    """mpf from int/float/Fraction/str without losing exact rationals."""
    from fractions import Fraction

    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def margin(scale, prec: int):
    return abs(scale) * mp.mpf(2) ** (-(prec // 2))


def check_le(lhs, rhs, prec: int) -> str:
    """Verdict for ``lhs <= rhs``.

    Passes only with clearance of at least 2^(-prec/2) times the scale of
    both sides; a clear violation fails; anything in between is
    inconclusive.
    """
    m = margin(abs(lhs) + abs(rhs), prec)
    if rhs - lhs >= m:
        return PASS
    if lhs - rhs > m:
        return FAIL
    return INCONCLUSIVE


def check_positive(x, scale, prec: int) -> str:
    """Verdict for ``x > 0`` where ``scale`` is the size of the terms that produced x."""
    m = margin(scale, prec)
    if x >= m:
        return PASS
    if x <= -m:
        return FAIL
    return INCONCLUSIVE


def combine(verdicts) -> str:
    verdicts = list(verdicts)
    if any(v == FAIL for v in verdicts):
        return FAIL
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE
    return PASS


@dataclass
class Report:
    """Machine-diffable outcome of one verification suite."""

    suite: str
    params: dict[str, Any]
    verdict: str
    witness: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "params": jsonable(self.params),
            "verdict": self.verdict,
            "witness": jsonable(self.witness),
        }


def jsonable(obj):
    """Convert mpf/Fraction/tuples into JSON-friendly values, deterministically."""
    from fractions import Fraction

    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, 30, min_fixed=-6, max_fixed=40)
    if isinstance(obj, mpmath.mpc):
        return [jsonable(obj.real), jsonable(obj.imag)]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    return str(obj)
