from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jordan_tkk.exactlin import (
    Echelon, QuotientMap, SparseMatrix, Subspace, canonicalize, format_rational, integerize,
    kernel_basis, quotient_coords, rank, to_rational,
)

small = st.integers(-4, 4)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_canonicalize():
    assert canonicalize(2, -4) == Fraction(-1, 2)
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        canonicalize(1, 0)
    assert format_rational(Fraction(3, 6)) == "1/2"
    assert to_rational("-3/9") == Fraction(-1, 3)


def test_rank_examples():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank(np.eye(3, dtype=int)) == 3


@given(matrices)
def test_rank_nullity(rows):
    m = np.array(rows, dtype=object)
    ker = kernel_basis(m)
    assert rank(m) + ker.dim == m.shape[1]
    for v in ker.basis:
        assert not any(m.dot(np.array(v, dtype=object)))


@given(matrices)
def test_rank_transpose(rows):
    m = np.array(rows, dtype=object)
    assert rank(m) == rank(m.T)


@given(matrices)
def test_rank_matches_float_svd(rows):
    m = np.array(rows, dtype=float)
    assert rank(np.array(rows, dtype=object)) == np.linalg.matrix_rank(m)


def test_echelon_contains_and_rref():
    e = Echelon()
    assert e.add({0: 1, 1: 2})
    assert not e.add({0: 2, 1: 4})
    assert e.contains({0: Fraction(1, 2), 1: 1})
    assert e.add({1: 1})
    assert [dict(r) for r in e.rref()] == [{0: 1}, {1: 1}]


@given(matrices)
def test_subspace_complement_and_coordinates(rows):
    n = len(rows[0])
    S = Subspace.span(n, rows)
    assert len(S.pivots) + len(S.complement) == n
    for r in rows:
        assert S.contains(r)
        coords = S.coordinates(r)
        recon = [sum(c * b[i] for c, b in zip(coords, S.basis)) for i in range(n)]
        assert recon == [Fraction(x) for x in r]


@given(matrices, matrices)
def test_intersection_dimension(a, b):
    n = min(len(a[0]), len(b[0]))
    A = Subspace.span(n, [r[:n] for r in a])
    B = Subspace.span(n, [r[:n] for r in b])
    assert (A + B).dim + A.intersection(B).dim == A.dim + B.dim
    assert A.intersection(B).is_subspace_of(A)


def test_quotient_map():
    S = Subspace.span(3, [[1, 1, 0]])
    q = QuotientMap(S)
    assert q.dim == 2
    assert q({0: 1, 1: 1}) == {}
    # complement coordinates are 1 and 2; e_0 = e_0 + e_1 - e_1 maps to -e_1
    assert S.complement == (1, 2)
    assert q({0: 1}) == {0: -1}
    assert quotient_coords(3, S, [1, 0, 0]) == [-1, 0]


def test_sparse_matrix_product():
    A = SparseMatrix.from_dense([[1, 2], [0, 1]])
    B = SparseMatrix.from_dense([[1, 0], [3, 1]])
    assert (A @ B).to_dense().tolist() == [[7, 2], [3, 1]]
    assert A.T.to_dense().tolist() == [[1, 0], [2, 1]]
    assert SparseMatrix.identity(2).apply([5, 6]) == [5, 6]


def test_integerize():
    a = np.array([[Fraction(1, 2), Fraction(1, 3)]], dtype=object)
    ints, den = integerize(a)
    assert den == 6 and ints.tolist() == [[3, 2]]
