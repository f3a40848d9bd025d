import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from seqfree import bigseries as bs
from seqfree.bigseries import IntSeries


def enumerate_p2(n):
    """Partitions of n with no two consecutive integers among the parts (brute force)."""
    count = 0
    for parts in sympy.utilities.iterables.partitions(n):
        distinct = sorted(parts)
        if all(b - a != 1 for a, b in zip(distinct, distinct[1:])):
            count += 1
    return count


def pentagonal_p(N):
    p = [1] + [0] * N
    for n in range(1, N + 1):
        s, m = 0, 1
        while True:
            g1 = m * (3 * m - 1) // 2
            if g1 > n:
                break
            sign = 1 if m % 2 else -1
            s += sign * p[n - g1]
            g2 = m * (3 * m + 1) // 2
            if g2 <= n:
                s += sign * p[n - g2]
            m += 1
        p[n] = s
    return p


def naive_mul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        for j, y in enumerate(b[: N + 1 - i]):
            out[i + j] += x * y
    return out


def test_difference_of_squares():
    s = bs.series_mul(IntSeries.from_coeffs([1, 1], 2), IntSeries.from_coeffs([1, -1], 2), 2)
    assert s.coeffs == (1, 0, -1)


def test_identity_product():
    a = IntSeries.from_coeffs([3, -7, 0, 11, 2], 4)
    assert bs.series_mul(a, IntSeries.one(4), 4) == a


def test_euler_product_times_inverse_is_one():
    e = bs.euler_product(1, 50)
    assert bs.series_mul(e, bs.series_inverse(e, 50), 50) == IntSeries.one(50)


def test_inverse_examples():
    assert bs.series_inverse(IntSeries.from_coeffs([1, -1], 3), 3).coeffs == (1, 1, 1, 1)
    assert bs.series_inverse(IntSeries.one(6), 6) == IntSeries.one(6)
    assert list(bs.series_inverse(bs.euler_product(1, 20), 20).coeffs) == pentagonal_p(20)


def test_inverse_rejects_non_unit():
    with pytest.raises(ValueError):
        bs.series_inverse(IntSeries.from_coeffs([2, 1], 3), 3)


@given(st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=40),
       st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=40))
def test_kronecker_matches_schoolbook(a, b):
    N = max(len(a), len(b)) - 1
    A, B = IntSeries.from_coeffs(a, N), IntSeries.from_coeffs(b, N)
    assert list(bs.series_mul(A, B, N).coeffs) == naive_mul(list(A.coeffs), list(B.coeffs), N)


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=40), st.sampled_from([1, -1]))
def test_inverse_round_trip(tail, lead):
    N = len(tail)
    a = IntSeries.from_coeffs([lead, *tail], N)
    assert bs.series_mul(a, bs.series_inverse(a, N), N) == IntSeries.one(N)


def test_pochhammer_examples():
    assert bs.pochhammer_series(1, 1, 5).coeffs == (1, -1, -1, 0, 0, 1)
    assert bs.pochhammer_series(-1, 3, 2).coeffs == (1, 0, 0)
    assert bs.pochhammer_series(-1, 1, 3).coeffs == (1, 1, 1, 2)


@pytest.mark.parametrize("sign,step", [(1, 1), (1, 2), (-1, 1), (-1, 3), (1, 6)])
def test_pochhammer_against_direct_product(sign, step):
    N = 40
    prod = [1] + [0] * N
    for j in range(1, N // step + 1):
        factor = [0] * (N + 1)
        factor[0] = 1
        factor[step * j] = -sign
        prod = naive_mul(prod, factor, N)
    assert list(bs.pochhammer_series(sign, step, N).coeffs) == prod


def test_chi_small_orders():
    assert bs.chi_series(0).coeffs == (1,)
    assert bs.chi_series(1).coeffs == (1, 1)


def test_chi_against_rational_expansion():
    q = sympy.symbols("q")
    N = 10
    expr = 1
    for n in range(1, 4):
        num = sympy.prod([(1 + q**j) for j in range(1, n + 1)])
        den = sympy.prod([(1 + q ** (3 * j)) for j in range(1, n + 1)])
        expr += q ** (n * n) * num / den
    ser = sympy.series(expr, q, 0, N + 1).removeO()
    expected = [int(ser.coeff(q, i)) for i in range(N + 1)]
    assert list(bs.chi_series(N).coeffs) == expected


def test_first_values():
    t = bs.g2_table(10)
    assert (t[2], t[3], t[4]) == (2, 2, 4)
    assert bs.p2_oracle(0) == 1
    assert bs.p2_oracle(5) == enumerate_p2(5) == 4


def test_oracle_against_enumeration():
    oracle = bs.p2_oracle_table(30)
    assert oracle == [enumerate_p2(n) for n in range(31)]


def test_table_equals_oracle_to_500():
    t = bs.g2_table(500)
    assert list(t.values) == bs.p2_oracle_table(500)


def test_partition_numbers():
    p = bs.partition_table(200)
    assert p[10] == 42
    assert p == pentagonal_p(200)


def test_monotone(table):
    assert bs.monotonicity_violations(table) == []


def test_cache_round_trip(tmp_path):
    t = bs.g2_table(120)
    path = tmp_path / "p2.txt"
    bs.write_table(t, path)
    first = path.read_bytes()
    again = bs.read_table(path)
    assert again.values == t.values
    bs.write_table(again, path)
    assert path.read_bytes() == first


def test_cache_n_max_zero(tmp_path):
    path = tmp_path / "p2.txt"
    bs.write_table(bs.g2_table(0), path)
    assert path.read_text().splitlines()[1:] == ["0,1"]


@pytest.mark.parametrize("mutate", [
    lambda s: s.replace("\n7,8\n", "\n7,9\n"),
    lambda s: "garbage\n" + s,
    lambda s: s.rsplit("\n", 2)[0] + "\n",
    lambda s: s.replace("n_max=20", "n_max=21"),
])
def test_cache_corruption_detected(tmp_path, mutate):
    path = tmp_path / "p2.txt"
    bs.write_table(bs.g2_table(20), path)
    path.write_text(mutate(path.read_text()))
    with pytest.raises(bs.CacheError):
        bs.read_table(path)


def test_cross_check_reports_first_mismatch():
    t = bs.g2_table(50)
    bad = bs.PartitionTable(50, t.values[:17] + (0,) + t.values[18:], "series")
    with pytest.raises(bs.CacheError, match=r"p2\(17\)"):
        bs.cross_check(bad)


def test_load_or_build_reuses_cache(tmp_path):
    path = tmp_path / "p2.txt"
    big = bs.load_or_build(80, path)
    assert path.exists()
    small = bs.load_or_build(40, path)
    assert small.source == "cache-file" and small.n_max == 80
    assert small.values == big.values


def test_table_index_errors():
    t = bs.g2_table(5)
    with pytest.raises(IndexError):
        t[6]
    with pytest.raises(ValueError):
        bs.g2_table(-1)


def test_inverse_of_sparse_series():
    # the inverse handles sparse denominators: (1 - q^5)^-1 is periodic
    inv = bs.series_inverse(IntSeries.monomial(0, 25) - IntSeries.monomial(5, 25), 25)
    assert list(inv.coeffs) == [int(i % 5 == 0) for i in range(26)]
    assert list(itertools.islice(inv.coeffs, 0, 26, 5)) == [1] * 6
