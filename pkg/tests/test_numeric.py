import math
import random
from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sosshape.numeric import (AlphaSpec, DomainError, cf_expand, convergent_table, decimal_sqrt,
                              e_stream, iter_blocks, parse_alpha, q_exceeds, slow_euclid,
                              to_decimal)

mpmath.mp.dps = 60

TABLE_51_71 = [
    (-1, 1, None, 71, 1, 0), (0, 1, None, 51, 0, 1), (1, 1, 1, 20, 1, -1),
    (2, 1, None, 31, -1, 2), (2, 2, 2, 11, -2, 3), (3, 1, 1, 9, 3, -4),
    (4, 1, 1, 2, -5, 7), (5, 1, None, 7, 8, -11), (5, 2, None, 5, 13, -18),
    (5, 3, None, 3, 18, -25), (5, 4, 4, 1, 23, -32), (6, 1, None, 1, -28, 39),
    (6, 2, 2, 0, -51, 71),
]


def mp_cf(x, depth):
    """Continued fraction of an mpmath real, straight from the definition."""
    out = []
    for _ in range(depth):
        a = int(mpmath.floor(x))
        out.append(a)
        x = 1 / (x - a)
    return out


def test_cf_of_rational_pair():
    assert cf_expand((51, 71)) == [0, 1, 2, 1, 1, 4, 2]
    assert cf_expand(Fraction(25, 211)) == [0, 8, 2, 3, 1, 2]


def test_e_stream_matches_high_precision_e():
    assert cf_expand(e_stream(), depth=20) == mp_cf(mpmath.e, 20)


@pytest.mark.parametrize("text,value", [
    ("golden", (mpmath.sqrt(5) - 1) / 2),
    ("sqrt2", mpmath.sqrt(2) - 1),
    ("surd:(3+sqrt(7))/2", (3 + mpmath.sqrt(7)) / 2 - 2),
    ("e", mpmath.e - 2),
])
def test_irrational_expansions(text, value):
    alpha = parse_alpha(text)
    assert [alpha.coefficient(i) for i in range(25)] == [0] + mp_cf(1 / value, 24)


def test_parse_grammar():
    assert parse_alpha("3/10").value == Fraction(3, 10)
    assert parse_alpha("13/10").value == Fraction(3, 10)
    assert parse_alpha("cf:[0;1,2,1,1,4,2]").value == Fraction(51, 71)
    periodic = parse_alpha("cf:[0;1,2,2]periodic:1")
    assert [periodic.coefficient(i) for i in range(6)] == [0, 1, 2, 2, 2, 2]
    for bad in ("1", "0/5", "cf:[]", "surd:(1+sqrt(4))/3", "nonsense"):
        with pytest.raises(DomainError):
            parse_alpha(bad)


def test_compare_is_exact_for_surds():
    golden = parse_alpha("golden")
    assert golden.compare(Fraction(618033988749894, 10 ** 15)) > 0
    assert golden.compare(Fraction(618033988749895, 10 ** 15)) < 0


def test_e_convergents_and_deltas():
    table = convergent_table(parse_alpha("e"), depth=8)
    assert table.q == [1, 1, 3, 4, 7, 32, 39, 71]
    assert table.approximate
    assert f"{float(table.delta[6]):.4e}" == "3.3311e-04"
    assert f"{float(table.delta[7]):.4e}" == "2.8031e-05"
    # deltas are measured against a deep convergent, so they are off by at most 1/q^2
    true = mpmath.e - 2
    slack = mpmath.mpf(1) / table.proxy.denominator ** 2
    for row in table.rows:
        exact = abs(true - mpmath.mpf(row.p) / row.q)
        assert abs(mpmath.mpf(row.delta.numerator) / row.delta.denominator - exact) < slack


def test_rational_table_terminates_without_inventing_rows():
    table = convergent_table(AlphaSpec.rational(Fraction(51, 71)), until=q_exceeds(10 ** 6))
    assert table.terminated
    assert table.q[-1] == 71 and table.delta[-1] == 0


def test_diophantine_bound_on_convergents():
    table = convergent_table(parse_alpha("golden"), depth=30)
    for row, nxt in zip(table.rows, table.rows[1:]):
        assert row.delta < Fraction(1, row.q * nxt.q)
        assert row.delta > Fraction(1, row.q * (row.q + nxt.q))


def test_proxy_depth_and_parity():
    alpha = parse_alpha("e")
    m, r = alpha.proxy(1000)
    assert alpha.convergent(m)[1] > 1000
    assert r == alpha.convergent_fraction(m)
    m2, _ = alpha.proxy(1000, parity=1, extra=0)
    assert m2 % 2 == 1 and alpha.convergent(m2)[1] > 1000
    with pytest.raises(DomainError):
        AlphaSpec.rational(Fraction(3, 10)).proxy(10)


def test_slow_euclid_of_51_71():
    trace = slow_euclid(51, 71)
    assert trace.table() == TABLE_51_71
    assert trace.block_sizes == (1, 2, 1, 1, 4, 2)


def test_slow_euclid_single_block():
    rows = slow_euclid(1, 5).table()
    assert [r[3] for r in rows] == [5, 1, 4, 3, 2, 1, 0]
    assert [r[5] for r in rows] == [0, 1, -1, -2, -3, -4, -5]
    assert all(r[3] == r[4] * 5 + r[5] * 1 for r in rows)


def test_random_pairs_identity_and_blocks():
    rng = random.Random(11)
    for _ in range(300):
        b = rng.randint(2, 10 ** 4)
        a = rng.randint(1, b - 1)
        if math.gcd(a, b) != 1:
            continue
        trace = slow_euclid(a, b)
        assert all(row.r == row.s * b + row.t * a for row in trace.rows)
        assert list(trace.block_sizes) == cf_expand((a, b))[1:]


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10 ** 9), st.data())
def test_blocks_are_cf_coefficients(b, data):
    a = data.draw(st.integers(1, b - 1))
    if math.gcd(a, b) != 1:
        return
    sizes = [size for _, size, _, _ in iter_blocks(a, b)]
    assert sizes == cf_expand((a, b))[1:]


def test_decimal_helpers():
    assert decimal_sqrt(Fraction(2), 12) == Decimal("1.41421356237")
    assert str(to_decimal(Fraction(-211, 176), 5)) == "-1.19886"
    with pytest.raises(DomainError):
        decimal_sqrt(Fraction(-1))
