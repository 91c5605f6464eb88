from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jordan_tkk.exactlin import Subspace
from jordan_tkk.jordan import (
    JordanAlgebra, albert_algebra, fixture, ground_field, ideal_generated, inner_derivation,
    inner_derivation_space, is_derivation, is_ideal, octonion_conj, octonion_mul, octonion_norm,
    power_span_ideal, product_ideal_power, quotient, quotient_with_map, symmetric_matrices,
    truncated_polynomial, validate,
)
from jordan_tkk.freejordan import truncated_algebra

rat = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@pytest.fixture(scope="module")
def albert():
    return albert_algebra()


@pytest.mark.parametrize("J", [ground_field(), truncated_polynomial(1), truncated_polynomial(4),
                               symmetric_matrices(2), symmetric_matrices(3), truncated_algebra(2, 4)],
                         ids=["field", "t1", "t4", "sym2", "sym3", "free24"])
def test_fixtures_validate(J):
    rep = validate(J)
    assert rep.ok, rep.violation


def test_albert_validates(albert):
    assert albert.dim == 27
    rep = validate(albert)
    assert rep.ok, rep.violation


def test_commutativity_mutation_detected():
    J = truncated_polynomial(4)
    T = J.table.copy()
    T[1, 2, 3] += 1
    rep = validate(J.with_table(T))
    assert not rep.ok and "commutative" in rep.violation


def test_unit_mutation_detected():
    J = truncated_polynomial(3)
    T = J.table.copy()
    T[0, 1, 1] += 1
    T[1, 0, 1] += 1
    assert not validate(J.with_table(T)).ok


def test_jordan_identity_mutation_detected():
    # a graded commutative algebra generated by t with t^2 = t2, t t2 = 0,
    # t2 t2 = t4: then (t^2 t) t = 0 while t^2 (t t) = t4
    T = np.full((4, 4, 4), Fraction(0), dtype=object)
    for i in range(4):
        T[0, i, i] = T[i, 0, i] = Fraction(1)
    T[1, 1, 2] = Fraction(1)
    T[2, 2, 3] = Fraction(1)
    J = JordanAlgebra(T, 0, ("1", "t", "t2", "t4"), (0, 1, 2, 4), Subspace.coordinate(4, [1, 2, 3]))
    rep = validate(J)
    assert not rep.ok and "Jordan identity" in rep.violation


def test_grading_mutation_detected():
    J = truncated_polynomial(4)
    T = J.table.copy()
    T[1, 1, 3] += 1
    rep = validate(J.with_table(T))
    assert not rep.ok


@given(st.lists(rat, min_size=6, max_size=6), st.lists(rat, min_size=6, max_size=6))
def test_jordan_identity_holds_sym3(a, b):
    J = symmetric_matrices(3)
    a2 = J.mul(a, a)
    assert (J.mul(J.mul(a2, b), a) == J.mul(a2, J.mul(b, a))).all()


def test_jordan_identity_random_albert(albert):
    rng = np.random.default_rng(3)
    for _ in range(3):
        a = [Fraction(int(x)) for x in rng.integers(-2, 3, 27)]
        b = [Fraction(int(x)) for x in rng.integers(-2, 3, 27)]
        a2 = albert.mul(a, a)
        assert (albert.mul(albert.mul(a2, b), a) == albert.mul(a2, albert.mul(b, a))).all()


@given(st.lists(rat, min_size=8, max_size=8), st.lists(rat, min_size=8, max_size=8))
def test_octonion_norm_multiplicative(x, y):
    assert octonion_norm(octonion_mul(x, y)) == octonion_norm(x) * octonion_norm(y)


@given(st.lists(rat, min_size=8, max_size=8), st.lists(rat, min_size=8, max_size=8))
def test_octonions_alternative(x, y):
    xx = octonion_mul(x, x)
    assert octonion_mul(xx, y) == octonion_mul(x, octonion_mul(x, y))
    assert octonion_conj(octonion_conj(x)) == tuple(Fraction(c) for c in x)


def test_power_span_ideal_truncated_polynomial():
    J = truncated_polynomial(4)
    P = power_span_ideal(J, J.augmentation, 2)
    assert P == Subspace.coordinate(4, [2, 3])
    assert is_ideal(J, P)
    assert product_ideal_power(J, J.augmentation, 3) == Subspace.coordinate(4, [3])


def test_power_span_ideal_free_is_ideal():
    J = truncated_algebra(2, 5)
    for n in (2, 3):
        assert is_ideal(J, power_span_ideal(J, J.augmentation, n))


def test_ideal_generated():
    J = truncated_polynomial(5)
    I = ideal_generated(J, [J.basis_vector(2)])
    assert I == Subspace.coordinate(5, [2, 3, 4])


def test_quotient_is_smaller_truncation():
    J = truncated_polynomial(5)
    Q = quotient(J, Subspace.coordinate(5, [3, 4]))
    assert Q.dim == 3 and validate(Q).ok
    assert (Q.table == truncated_polynomial(3).table).all()


def test_quotient_projection_is_homomorphism():
    J = truncated_algebra(2, 4)
    I = product_ideal_power(J, J.augmentation, 3)
    Q, proj = quotient_with_map(J, I)
    assert validate(Q).ok
    rng = np.random.default_rng(0)
    for _ in range(5):
        a = {i: Fraction(int(c)) for i, c in enumerate(rng.integers(-2, 3, J.dim)) if c}
        b = {i: Fraction(int(c)) for i, c in enumerate(rng.integers(-2, 3, J.dim)) if c}
        lhs = proj(J.mul_sparse(a, b))
        rhs = Q.mul(proj(a), proj(b))
        assert (lhs == rhs).all()


def test_inner_derivations():
    J = symmetric_matrices(3)
    D = inner_derivation(J, J.basis_vector(1), J.basis_vector(4))
    assert is_derivation(J, D)
    assert inner_derivation_space(J).dim == 3
    assert inner_derivation_space(truncated_polynomial(4)).dim == 0


def test_json_round_trip(tmp_path):
    J = truncated_algebra(2, 3)
    K = JordanAlgebra.from_json(J.to_json())
    assert (K.table == J.table).all() and K.names == J.names and K.grading == J.grading
    path = tmp_path / "j.json"
    J.save(path)
    assert JordanAlgebra.load(path).to_json() == J.to_json()


def test_fixture_dispatch():
    assert fixture("truncpoly", 3).dim == 3
    assert fixture("sym", 2).dim == 3
    with pytest.raises(ValueError):
        fixture("nope")
