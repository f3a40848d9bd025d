"""Exact eta-multipliers, Jacobi symbols and Dedekind sums.

Roots of unity are kept as rational exponents, ``RootOfUnity(num, den)``
standing for exp(2 pi i num/den), so products and quotients are exact and no
phase is ever rounded before the final summation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


@dataclass(frozen=True, order=True)
class RootOfUnity:
    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("den must be positive")
        g = gcd(self.num, self.den)
        object.__setattr__(self, "num", (self.num // g) % (self.den // g))
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fraction(cls, x: Fraction) -> "RootOfUnity":
        return cls(x.numerator, x.denominator)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(0, 1)

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.exponent + other.exponent)

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.exponent - other.exponent)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.num * e, self.den)

    def is_one(self) -> bool:
        return self.num == 0

    def evaluate(self, ctx=None):
        """Value as an mpmath complex number at the working precision."""
        import mpmath

        ctx = ctx or mpmath.mp
        x = 2 * ctx.mpf(self.num) / self.den
        return ctx.mpc(ctx.cospi(x), ctx.sinpi(x))


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def select_hprime(h: int, k: int, d: int = 1) -> int:
    """Least h' >= 0 with h h' = -1 (mod k) and d | h'.

    By CRT such an h' is unique modulo d*k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if gcd(h, k) != 1:
        raise ValueError(f"gcd(h, k) = gcd({h}, {k}) != 1")
    if gcd(d, k) != 1:
        raise ValueError(f"gcd(d, k) = gcd({d}, {k}) != 1")
    if k == 1:
        return 0
    r = (-pow(h, -1, k)) % k
    # h' = d t with d t = r (mod k)
    t = (r * pow(d, -1, k)) % k
    return d * t


@lru_cache(maxsize=None)
def _omega_exponent(h: int, k: int) -> Fraction:
    if k == 1:
        return Fraction(0)
    hp = select_hprime(h, k, 1)
    core = Fraction(1, 12) * (k - Fraction(1, k)) * (2 * h - hp + h * h * hp)
    if h % 2 == 1:
        sign = jacobi_symbol(-k, h)
        phase = -(Fraction(2 - h * k - h, 4) + core)
    else:
        sign = jacobi_symbol(-h, k)
        phase = -(Fraction(k - 1, 4) + core)
    # exp(pi i phase) = exp(2 pi i phase/2); a symbol of -1 adds a half turn
    x = phase / 2
    if sign == -1:
        x += Fraction(1, 2)
    return x % 1


def omega(h: int, k: int) -> RootOfUnity:
    """The eta-multiplier omega_{h,k}, a 24k-th root of unity.

    ``h`` is reduced mod ``k`` first; omega_{0,1} = 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    h %= k
    if gcd(h, k) != 1:
        raise ValueError(f"gcd(h, k) = gcd({h}, {k}) != 1")
    return RootOfUnity.from_fraction(_omega_exponent(h, k))


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """s(h, k) straight from the sawtooth definition; O(k)."""
    return sum(
        (_sawtooth(Fraction(m, k)) * _sawtooth(Fraction(h * m, k)) for m in range(1, k)),
        Fraction(0),
    )


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) via reciprocity and the Euclidean algorithm."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if gcd(h, k) != 1:
        raise ValueError("gcd(h, k) != 1")
    total = Fraction(0)
    sign = 1
    h %= k
    while k > 1 and h:
        # s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12
        total += sign * (Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12)
        sign = -sign
        h, k = k % h, h
    return total


def omega_from_dedekind(h: int, k: int) -> RootOfUnity:
    """exp(pi i s(h,k)), the classical closed form used to cross-check omega."""
    return RootOfUnity.from_fraction(dedekind_sum(h, k) / 2)


# --------------------------------------------------------------------------
# the three multiplier quotients attached to the K4, K6, K8 sums


def multiplier_k4(h: int, k: int) -> RootOfUnity:
    """omega_{h,k} omega_{h,k/2} omega_{3h,k} / omega_{3h,k/2}, gcd(k,6)=2."""
    return omega(h, k) * omega(h, k // 2) * omega(3 * h, k) / omega(3 * h, k // 2)


def multiplier_k6(h: int, k: int) -> RootOfUnity:
    """omega_{h,k} omega_{2h,k} omega_{h,k/3} / omega_{2h,k/3}, gcd(k,6)=3."""
    return omega(h, k) * omega(2 * h, k) * omega(h, k // 3) / omega(2 * h, k // 3)


def multiplier_k8(h: int, k: int) -> RootOfUnity:
    """omega_{h,k} omega_{2h,k} omega_{3h,k} / omega_{6h,k}, gcd(k,6)=1."""
    return omega(h, k) * omega(2 * h, k) * omega(3 * h, k) / omega(6 * h, k)


def multiplier_calk(h: int, k: int) -> RootOfUnity:
    """omega_{h,k} omega_{2h,k} omega_{6h,k} / omega_{3h,k}^3, gcd(k,6)=1."""
    return omega(h, k) * omega(2 * h, k) * omega(6 * h, k) / omega(3 * h, k) ** 3


def closed_form_k4(h: int, k: int) -> RootOfUnity:
    hp = select_hprime(h, k, 3)
    x = Fraction(k * (k + 2), 8) * h - Fraction(k * k + 2, 18) * hp
    return RootOfUnity.from_fraction(x / k)


def closed_form_k6(h: int, k: int) -> RootOfUnity:
    hp = select_hprime(h, k, 8)
    # (-1)^((k+1)/2) exp(4 pi i k h / 9 - pi i (k^2-3) h' / (12 k))
    x = Fraction((k + 1) // 2, 2) + Fraction(2 * k * h, 9) - Fraction((k * k - 3) * hp, 24 * k)
    return RootOfUnity.from_fraction(x)


def closed_form_k8(h: int, k: int) -> RootOfUnity:
    hp = select_hprime(h, k, 24)
    x = Fraction((k + 1) // 2, 2) + Fraction(5 * (k * k - 1) * hp, 72 * k)
    return RootOfUnity.from_fraction(x)


def verify_multiplier_identities(k_max: int) -> dict[str, list[tuple[int, int]]]:
    """Check the closed forms of the three multiplier quotients exactly.

    Returns, per family, the (h, k) pairs where the product of omegas and
    the closed form disagree.
    """
    families = {
        "K4": (2, multiplier_k4, closed_form_k4),
        "K6": (3, multiplier_k6, closed_form_k6),
        "K8": (1, multiplier_k8, closed_form_k8),
    }
    out: dict[str, list[tuple[int, int]]] = {}
    for name, (g, lhs, rhs) in families.items():
        bad = []
        for k in range(1, k_max + 1):
            if gcd(k, 6) != g:
                continue
            for h in range(k):
                if gcd(h, k) == 1 and lhs(h, k) != rhs(h, k):
                    bad.append((h, k))
        out[name] = bad
    return out
