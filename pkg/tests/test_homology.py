from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jordan_tkk.dominance import ResourceError
from jordan_tkk.freejordan import truncated_algebra
from jordan_tkk.homology import (
    BlockTooLarge, ChainComplex, SimpleModule, abelian, by_degree, by_weight, ce_homology,
    isotypic_decomposition, parse_coefficients, positive_part_of, relative_chains,
    relative_homology, top_cycle_relations,
)
from jordan_tkk.jordan import truncated_polynomial
from jordan_tkk.tkk import build
from jordan_tkk.homology import graded_from_tkk


@pytest.fixture(scope="module")
def u24():
    return positive_part_of(truncated_algebra(2, 4))


def test_positive_part_is_graded_lie_algebra(u24):
    assert u24.grading_violation() is None
    assert u24.weight_violation() is None
    assert u24.jacobi_violation() is None
    assert min(u24.degree) >= 1


def test_full_algebra_graded():
    g = graded_from_tkk(build(truncated_polynomial(3)))
    assert g.grading_violation() is None and g.weight_violation() is None


@pytest.mark.parametrize("k,d", [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4)])
def test_boundary_squares_to_zero(u24, k, d):
    cx = ChainComplex(u24, SimpleModule(2))
    for w in cx.weights(k, d):
        assert not cx.square_violation(k, d, w)


@pytest.mark.parametrize("d", [2, 3])
def test_euler_characteristic(u24, d):
    cx = ChainComplex(u24)
    for w in range(-2 * d, 2 * d + 1, 2):
        assert cx.euler_check(d, w, d)


def test_degree_zero_homology(u24):
    assert ce_homology(u24, k=0) == {(0, 0): 1}


def test_abelian():
    g = abelian(2)
    assert sum(ce_homology(g, k=1).values()) == 2
    assert sum(ce_homology(g, k=2).values()) == 1


@pytest.mark.parametrize("D,N", [(2, 3), (2, 4), (3, 3)])
def test_first_homology_is_three_copies(D, N):
    H1 = ce_homology(positive_part_of(truncated_algebra(D, N)), k=1)
    assert sum(H1.values()) == 3 * D
    assert by_weight(H1) == {-2: D, 0: D, 2: D}


def test_second_homology_is_l4_isotypic(u24):
    H2 = ce_homology(u24, k=2, max_degree=3)
    for d in (2, 3):
        mult = isotypic_decomposition(by_weight(H2, d))
        assert set(mult) == {4}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_weight_symmetry(u24, k):
    H = ce_homology(u24, SimpleModule(1), k=k, max_degree=3)
    assert all(H.get((d, -w), 0) == v for (d, w), v in H.items())


def test_truncation_stability():
    small = positive_part_of(truncated_algebra(2, 4))
    big = positive_part_of(truncated_algebra(2, 5))
    for k in (1, 2, 3):
        a = ce_homology(small, k=k, max_degree=2)
        b = ce_homology(big, k=k, max_degree=2)
        assert a == b


def test_relative_chain_blocks():
    u = positive_part_of(truncated_polynomial(3))
    blocks = relative_chains(u, max_k=1, max_degree=2)
    assert blocks[(0, 0)] == 1
    assert all(v == 0 for key, v in blocks.items() if key[0] == 1)
    assert relative_chains(u, SimpleModule(2), max_k=0, max_degree=0) == {(0, 0): 0}


def test_relative_vanishing(u24):
    assert set(relative_homology(u24, k=1, max_degree=3).values()) == {0}
    assert set(relative_homology(u24, k=2, max_degree=3).values()) == {0}
    u23 = positive_part_of(truncated_algebra(2, 3))
    assert set(relative_homology(u23, "L(2)", k=3, max_degree=2).values()) == {0}


def test_relative_homology_of_degree_zero_is_one(u24):
    assert relative_homology(u24, k=0, max_degree=1) == {0: 1, 1: 0}


def test_block_limit(u24):
    with pytest.raises(BlockTooLarge) as info:
        ce_homology(u24, k=2, max_degree=3, max_block=3)
    assert isinstance(info.value, ResourceError)
    assert info.value.block["size"] > 3


def test_parse_coefficients():
    assert parse_coefficients("K") == SimpleModule(0)
    assert parse_coefficients("L(3)").dim == 4
    assert parse_coefficients(2) == SimpleModule(2)


@pytest.mark.parametrize("dims,expected", [
    ({w: 1 for w in range(-4, 5, 2)}, {4: 1}),
    ({0: 2, 2: 1, -2: 1}, {2: 1, 0: 1}),
    ({}, {}),
])
def test_isotypic_examples(dims, expected):
    assert isotypic_decomposition(dims) == expected


def test_isotypic_rejects_bad_input():
    with pytest.raises(ValueError):
        isotypic_decomposition({2: 1, -2: 1, 0: 0, 4: 0})
    with pytest.raises(ValueError):
        isotypic_decomposition({2: 1})


@given(st.dictionaries(st.integers(0, 4), st.integers(1, 3), max_size=4))
def test_isotypic_roundtrip(mult):
    dims = {}
    for n, m in mult.items():
        for j in range(-2 * n, 2 * n + 1, 2):
            dims[j] = dims.get(j, 0) + m
    assert isotypic_decomposition(dims) == {2 * n: m for n, m in mult.items()}


def test_by_degree():
    assert by_degree({(1, 0): 2, (1, 2): 1, (2, 0): 5}) == {1: 3, 2: 5}


@pytest.mark.parametrize("k", [1, 2])
def test_top_cycle_relations(k):
    rep = top_cycle_relations(truncated_algebra(2, 5), k, samples=2, seed=1)
    assert rep.power_relations and rep.ideal_relations
    assert rep.ok
    assert sum(rep.top_dims.values()) <= rep.bound


def test_wedge_of_generators_survives():
    # e(x1) ^ e(x2) is a cycle but not a boundary in H_2
    from jordan_tkk.homology import _TopCycles, positive_part
    J = truncated_algebra(2, 5)
    G = build(J)
    tc = _TopCycles(G, positive_part(G), 2, 20000)
    x1, x2 = (b for b in tc.aug if J.grading[b] == 1)
    assert tc.chain([{x1: Fraction(1)}, {x2: Fraction(1)}])
    assert not tc.is_boundary(tc.chain([{x1: Fraction(1)}, {x2: Fraction(1)}]))
