"""Exact integer power series and the partition counts built from them.

Everything here is exact: coefficients are Python integers and products are
formed by Kronecker substitution (pack each series into one big integer,
multiply with GMP, unpack).  No floating point is involved anywhere.
"""

from __future__ import annotations

import hashlib
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import gmpy2

log = logging.getLogger(__name__)

CACHE_HEADER = "# seqfree p2 v1 n_max={n_max} sha256={digest}"
ORACLE_CHECK_LIMIT = 500


class CacheError(ValueError):
    """Raised when a cache file is malformed or disagrees with the oracle."""


@dataclass(frozen=True)
class IntSeries:
    """Power series truncated after ``q**trunc_order``."""

    coeffs: tuple[int, ...]
    trunc_order: int

    def __post_init__(self):
        if self.trunc_order < 0:
            raise ValueError("trunc_order must be >= 0")
        if len(self.coeffs) != self.trunc_order + 1:
            raise ValueError(
                f"expected {self.trunc_order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], N: int) -> "IntSeries":
        """Build a series of order ``N``, padding with zeros or truncating."""
        c = list(coeffs)[: N + 1]
        c.extend([0] * (N + 1 - len(c)))
        return cls(tuple(int(x) for x in c), N)

    @classmethod
    def one(cls, N: int) -> "IntSeries":
        return cls.from_coeffs([1], N)

    @classmethod
    def monomial(cls, e: int, N: int, c: int = 1) -> "IntSeries":
        coeffs = [0] * (N + 1)
        if e <= N:
            coeffs[e] = c
        return cls(tuple(coeffs), N)

    def truncate(self, N: int) -> "IntSeries":
        if N > self.trunc_order:
            raise ValueError(f"cannot extend a series of order {self.trunc_order} to {N}")
        return IntSeries(self.coeffs[: N + 1], N)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: "IntSeries") -> "IntSeries":
        N = min(self.trunc_order, other.trunc_order)
        return IntSeries(tuple(a + b for a, b in zip(self.coeffs[: N + 1], other.coeffs)), N)

    def __sub__(self, other: "IntSeries") -> "IntSeries":
        N = min(self.trunc_order, other.trunc_order)
        return IntSeries(tuple(a - b for a, b in zip(self.coeffs[: N + 1], other.coeffs)), N)

    def __neg__(self) -> "IntSeries":
        return IntSeries(tuple(-a for a in self.coeffs), self.trunc_order)

    def __mul__(self, other: "IntSeries") -> "IntSeries":
        return series_mul(self, other, min(self.trunc_order, other.trunc_order))


# --------------------------------------------------------------------------
# Kronecker substitution


def _pack(coeffs: Sequence[int], slot: int) -> int:
    # slot is in bytes; coefficients may be negative, so pack the two signs apart
    pos = b"".join((c if c > 0 else 0).to_bytes(slot, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(slot, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(x: int, slot: int, count: int) -> list[int]:
    # every slot holds a signed digit in (-2**(8*slot-1), 2**(8*slot-1));
    # adding half the slot range to each digit makes all of them non-negative
    half_pattern = (b"\x00" * (slot - 1) + b"\x80") * count
    half = 1 << (8 * slot - 1)
    biased = x + int.from_bytes(half_pattern, "little")
    if biased < 0:
        raise AssertionError("Kronecker slot overflow")
    raw = biased.to_bytes(slot * count + slot, "little")
    return [
        int.from_bytes(raw[i * slot : (i + 1) * slot], "little") - half for i in range(count)
    ]


def _maxbits(coeffs: Sequence[int]) -> int:
    return max((abs(c).bit_length() for c in coeffs), default=0)


def series_mul(a: IntSeries, b: IntSeries, N: int) -> IntSeries:
    """Exact Cauchy product of ``a`` and ``b`` truncated at ``q**N``."""
    if N > min(a.trunc_order, b.trunc_order):
        raise ValueError("N exceeds the truncation order of an operand")
    ac = a.coeffs[: N + 1]
    bc = b.coeffs[: N + 1]
    ba, bb = _maxbits(ac), _maxbits(bc)
    if ba == 0 or bb == 0:
        return IntSeries((0,) * (N + 1), N)
    bits = ba + bb + (N + 1).bit_length() + 2
    slot = (bits + 7) // 8
    prod = gmpy2.mpz(_pack(ac, slot)) * gmpy2.mpz(_pack(bc, slot))
    return IntSeries(tuple(_unpack(int(prod), slot, 2 * N + 1)[: N + 1]), N)


def series_inverse(a: IntSeries, N: int) -> IntSeries:
    """Reciprocal of a series whose constant term is +1 or -1.

    Uses the convolution recurrence over the nonzero coefficients of ``a``,
    so sparse denominators (Euler products) invert in O(N * nnz).
    """
    if N > a.trunc_order:
        raise ValueError("N exceeds the truncation order of the operand")
    a0 = a.coeffs[0]
    if a0 not in (1, -1):
        raise ValueError(f"constant term {a0} is not a unit")
    support = [(i, c) for i, c in enumerate(a.coeffs[1 : N + 1], start=1) if c]
    b = [0] * (N + 1)
    b[0] = a0
    for m in range(1, N + 1):
        s = 0
        for i, c in support:
            if i > m:
                break
            s += c * b[m - i]
        b[m] = -a0 * s
    return IntSeries(tuple(b), N)


def euler_product(step: int, N: int) -> IntSeries:
    """(q^step; q^step)_inf truncated at q^N, from the pentagonal number theorem."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    m = 1
    while True:
        e1 = step * m * (3 * m - 1) // 2
        if e1 > N:
            break
        sign = -1 if m % 2 else 1
        coeffs[e1] += sign
        e2 = step * m * (3 * m + 1) // 2
        if e2 <= N:
            coeffs[e2] += sign
        m += 1
    return IntSeries(tuple(coeffs), N)


def pochhammer_series(sign: int, step: int, N: int) -> IntSeries:
    """Truncation of prod_{j>=1} (1 - sign * q^(step*j)) at q^N."""
    if step < 1:
        raise ValueError("step must be >= 1")
    if sign == 1:
        return euler_product(step, N)
    if sign == -1:
        # (-x; x)_inf = (x^2; x^2)_inf / (x; x)_inf with x = q^step
        return series_mul(euler_product(2 * step, N), series_inverse(euler_product(step, N), N), N)
    raise ValueError("sign must be +1 or -1")


def chi_series(N: int) -> IntSeries:
    """Third order mock theta function chi(q) = sum q^(n^2) (-q;q)_n / (-q^3;q^3)_n."""
    total = [0] * (N + 1)
    total[0] = 1
    # term holds (-q;q)_n / (-q^3;q^3)_n; only degrees <= N - n^2 matter
    term = [1] + [0] * N
    n = 1
    while n * n <= N:
        L = N - n * n
        term = term[: L + 1]
        for i in range(L, n - 1, -1):
            term[i] += term[i - n]
        step = 3 * n
        for i in range(step, L + 1):
            term[i] -= term[i - step]
        off = n * n
        for i in range(L + 1):
            if term[i]:
                total[off + i] += term[i]
        n += 1
    return IntSeries(tuple(total), N)


# --------------------------------------------------------------------------
# partition tables


@dataclass(frozen=True)
class PartitionTable:
    n_max: int
    values: tuple[int, ...]
    source: str  # "series", "oracle" or "cache-file"

    def __post_init__(self):
        if len(self.values) != self.n_max + 1:
            raise ValueError("values must cover 0..n_max")
        if self.values[0] != 1:
            raise ValueError("p2(0) must be 1")

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.n_max:
            raise IndexError(f"n={n} outside table range 0..{self.n_max}")
        return self.values[n]


def g2_table(N: int) -> PartitionTable:
    """p2(0..N) from G2(q) = (-q^3;q^3)_inf / (q^2;q^2)_inf * chi(q)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    num = pochhammer_series(-1, 3, N)
    inv_den = series_inverse(pochhammer_series(1, 2, N), N)
    g = series_mul(num, series_mul(inv_den, chi_series(N), N), N)
    return PartitionTable(N, g.coeffs, "series")


def p2_oracle_table(n: int) -> list[int]:
    """Partitions without consecutive parts, by a direct dynamic program.

    g(m, k) counts partitions of m into parts <= k with no two consecutive
    parts: either k is absent, or it occurs t >= 1 times and the rest uses
    parts <= k - 2.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    # rows for k-2 and k-1; row(-1) = row(0) = [1, 0, 0, ...]
    base = [1] + [0] * n
    prev2, prev1 = base, base
    for k in range(1, n + 1):
        # S[m] = sum_{t>=1} prev2[m - t k]
        cur = prev1[:]
        acc = [0] * (n + 1)
        for m in range(k, n + 1):
            acc[m] = prev2[m - k] + acc[m - k]
            cur[m] += acc[m]
        prev2, prev1 = prev1, cur
    return prev1


def p2_oracle(n: int) -> int:
    return p2_oracle_table(n)[n]


def partition_table(N: int) -> list[int]:
    """Ordinary partition numbers p(0..N) as the reciprocal of (q;q)_inf."""
    return list(series_inverse(pochhammer_series(1, 1, N), N).coeffs)


def monotonicity_violations(table: PartitionTable) -> list[int]:
    """Indices n >= 2 where p2(n) < p2(n-1)."""
    v = table.values
    return [n for n in range(2, table.n_max + 1) if v[n] < v[n - 1]]


def cross_check(table: PartitionTable, limit: int = ORACLE_CHECK_LIMIT) -> None:
    """Compare against the DP oracle up to min(limit, n_max); raise on the first mismatch."""
    m = min(limit, table.n_max)
    oracle = p2_oracle_table(m)
    for n in range(m + 1):
        if table.values[n] != oracle[n]:
            raise CacheError(f"p2({n}) mismatch: table {table.values[n]} vs oracle {oracle[n]}")


# --------------------------------------------------------------------------
# cache file


def _digest(body: str) -> str:
    return hashlib.sha256(body.encode("ascii")).hexdigest()


def format_table(table: PartitionTable) -> str:
    body = "".join(f"{n},{v}\n" for n, v in enumerate(table.values))
    return CACHE_HEADER.format(n_max=table.n_max, digest=_digest(body)) + "\n" + body


def write_table(table: PartitionTable, path: str | os.PathLike) -> None:
    Path(path).write_text(format_table(table), encoding="utf-8")


def read_table(path: str | os.PathLike, verify: bool = True) -> PartitionTable:
    text = Path(path).read_text(encoding="utf-8")
    header, _, rest = text.partition("\n")
    fields = dict(f.split("=", 1) for f in header.split()[4:] if "=" in f)
    if not header.startswith("# seqfree p2 v1 ") or set(fields) != {"n_max", "sha256"}:
        raise CacheError(f"{path}: missing or unknown header")
    try:
        n_max = int(fields["n_max"])
    except ValueError as exc:
        raise CacheError(f"{path}: bad n_max in header") from exc
    if _digest(rest) != fields["sha256"]:
        raise CacheError(f"{path}: checksum mismatch (file corrupted or edited)")
    body = rest.splitlines()
    if len(body) != n_max + 1:
        raise CacheError(f"{path}: expected {n_max + 1} records, found {len(body)}")
    values = []
    for expect, line in enumerate(body):
        try:
            n_s, v_s = line.split(",")
            n, v = int(n_s), int(v_s)
        except ValueError as exc:
            raise CacheError(f"{path}: malformed record {line!r}") from exc
        if n != expect or v < 1:
            raise CacheError(f"{path}: bad record {line!r}")
        values.append(v)
    try:
        table = PartitionTable(n_max, tuple(values), "cache-file")
    except ValueError as exc:
        raise CacheError(f"{path}: {exc}") from exc
    if verify:
        cross_check(table)
        bad = monotonicity_violations(table)
        if bad:
            raise CacheError(f"{path}: p2 decreases at n={bad[0]}")
    return table


def load_or_build(n_max: int, cache: str | os.PathLike | None = None) -> PartitionTable:
    """Reuse a cache covering n_max when present, else compute (and write it)."""
    if cache is not None and Path(cache).exists():
        table = read_table(cache)
        if table.n_max >= n_max:
            log.info("loaded p2 table from %s (n_max=%d)", cache, table.n_max)
            return table
    table = g2_table(n_max)
    cross_check(table)
    if cache is not None:
        write_table(table, cache)
    return table
