from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from amplitrace.exact import ExactPower, integer_row_basis, nullspace, primitive_integer, rank, solve


def test_nullspace_and_rank():
    rows = [[1, 2, 3], [2, 4, 6]]
    assert rank(rows) == 1
    ns = nullspace(rows, 3)
    assert len(ns) == 2
    for v in ns:
        assert sum(a * b for a, b in zip(rows[0], v)) == 0


def test_solve():
    assert solve([[2, 1], [1, 1]], [3, 2]) == (Fraction(1), Fraction(1))
    with pytest.raises(ValueError):
        solve([[1, 1], [1, 1]], [1, 1])


def test_primitive_integer():
    assert primitive_integer([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)
    with pytest.raises(ValueError):
        primitive_integer([0, 0])


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_integer_row_basis_spans_same_lattice(rows):
    basis = integer_row_basis(rows)
    assert len(basis) == rank(rows)
    # every input row is an integer combination of the basis (triangular solve)
    for r in rows:
        rest = list(r)
        for b in basis:
            c = next(i for i, x in enumerate(b) if x)
            assert rest[c] % b[c] == 0
            k = rest[c] // b[c]
            rest = [x - k * y for x, y in zip(rest, b)]
        assert not any(rest)


def test_exact_power_comparisons():
    a = ExactPower(1, 3, Fraction(1, 2))  # sqrt 3
    assert a > Fraction(17, 10) and a < Fraction(18, 10)
    assert ExactPower(1, 4, Fraction(1, 2)) == 2
    assert ExactPower(1, 3, 0) == 1
    assert ExactPower(Fraction(12), 3, -2).as_fraction() == Fraction(4, 3)
    assert str(a) == "3^(1/2)"
    assert abs(float(a) - 3 ** 0.5) < 1e-15
    with pytest.raises(ValueError):
        a.as_fraction()


@given(st.integers(1, 50), st.integers(2, 13), st.fractions(-3, 3, max_denominator=6),
       st.integers(1, 50), st.integers(2, 13), st.fractions(-3, 3, max_denominator=6))
def test_exact_power_order_matches_floats(c1, b1, e1, c2, b2, e2):
    x, y = ExactPower(c1, b1, e1), ExactPower(c2, b2, e2)
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9 * max(fx, fy):
        assert (x < y) == (fx < fy)
