from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from jordan_tkk.partitions import (
    Partition, class_size, closed_form_coefficient, compositions, exp_series_coefficients,
    girard_newton_sum, ordered_set_partitions, partitions_of, sign, signed_class_sizes,
    verify_girard_newton,
)


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
    assert partitions_of(0) == []
    assert [p.parts for p in partitions_of(3)] == [(3,), (2, 1), (1, 1, 1)]


def test_invalid_partition():
    with pytest.raises(ValueError):
        Partition((1, 2))


@pytest.mark.parametrize("n", range(1, 9))
def test_class_sizes_sum_to_factorial(n):
    assert sum(class_size(p) for p in partitions_of(n)) == factorial(n)


@pytest.mark.parametrize("n", range(2, 9))
def test_signed_sum_vanishes(n):
    assert sum(c for _, c in signed_class_sizes(n)) == 0


def test_sign_examples():
    assert sign(Partition((2, 1))) == -1
    assert sign(Partition((3,))) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_girard_newton(n):
    assert verify_girard_newton(n)


def _cycle_lengths(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i not in seen:
            j, k = i, 0
            while j not in seen:
                seen.add(j)
                j, k = perm[j], k + 1
            out.append(k)
    return out


@pytest.mark.parametrize("n", range(1, 6))
def test_girard_newton_against_permutation_sum(n):
    # sum over permutations of sgn * prod over cycles of power sums, at random points
    import random
    from itertools import permutations
    rng = random.Random(n)
    for _ in range(3):
        x = [rng.randint(-4, 4) for _ in range(n)]
        total = 0
        for perm in permutations(range(n)):
            lens = _cycle_lengths(perm)
            sgn = (-1) ** (n - len(lens))
            term = sgn
            for L in lens:
                term *= sum(xi ** L for xi in x)
            total += term
        prod = 1
        for xi in x:
            prod *= xi
        assert total == factorial(n) * prod
        assert girard_newton_sum(n).evaluate(x) == total


@pytest.mark.parametrize("n", range(1, 7))
def test_series_identity(n):
    coeffs = exp_series_coefficients(n)
    for k, c in enumerate(coeffs):
        assert c == closed_form_coefficient(k, coeffs[0].nvars)


@given(st.integers(1, 7), st.integers(1, 4))
def test_compositions_count(n, parts):
    from math import comb
    assert len(list(compositions(n, parts))) == comb(n - 1, parts - 1)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_ordered_set_partitions_count(sizes):
    n = sum(sizes)
    expected = factorial(n)
    for s in sizes:
        expected //= factorial(s)
    blocks = list(ordered_set_partitions(tuple(range(n)), sizes))
    assert len(blocks) == expected
    for b in blocks:
        assert sorted(x for blk in b for x in blk) == list(range(n))
