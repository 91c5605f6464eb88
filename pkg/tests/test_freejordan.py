import pytest

from jordan_tkk.freejordan import (
    degree, dim_free_jordan, dimension_table, jordan_relation_space, linearized_jordan, monomials,
    multiply, to_string, truncated_algebra,
)
from jordan_tkk.jordan import validate

from oracles import special_jordan_dims


def test_one_generator_collapses():
    assert [dim_free_jordan(1, n) for n in range(1, 8)] == [1] * 7


def test_commutative_monomial_counts():
    # Wedderburn-Etherington numbers for one generator
    assert [len(monomials(1, n)) for n in range(1, 8)] == [1, 1, 1, 2, 3, 6, 11]
    assert [len(monomials(2, n)) for n in range(1, 6)] == [2, 3, 6, 18, 54]


def test_two_generators_match_closed_formula():
    got = [dim_free_jordan(2, n) for n in range(1, 8)]
    assert got == [(2 ** n + 2 ** ((n + 1) // 2)) // 2 for n in range(1, 8)]


def test_two_generators_match_special_envelope():
    assert [dim_free_jordan(2, n) for n in range(1, 6)] == special_jordan_dims(2, 5)


def test_three_generators_match_special_envelope():
    assert [dim_free_jordan(3, n) for n in range(1, 6)] == special_jordan_dims(3, 5)


def test_relation_space_contains_linearised_identity():
    R = jordan_relation_space(2, 4)
    assert R.contains(linearized_jordan(0, 1, 0, 1))
    assert R.dim == len(monomials(2, 4)) - dim_free_jordan(2, 4)


def test_monomial_helpers():
    m = multiply(1, 0)
    assert m == multiply(0, 1)
    assert degree(multiply(m, 0)) == 3
    assert to_string(m) == "(x1x2)"


def test_dimension_table_rows():
    rows = dimension_table(1, 6)
    assert [r["dim"] for r in rows] == [1] * 6
    assert all(r["monomials"] - r["relations"] == r["dim"] for r in rows)


@pytest.mark.parametrize("D,N", [(1, 5), (2, 3), (2, 5), (3, 3)])
def test_truncated_algebra_valid(D, N):
    J = truncated_algebra(D, N)
    assert J.dim == 1 + sum(dim_free_jordan(D, n) for n in range(1, N))
    assert validate(J).ok
