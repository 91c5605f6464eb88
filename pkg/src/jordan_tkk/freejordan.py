"""
Homogeneous components of the free unital Jordan algebra on D generators.

Monomials of the free commutative nonassociative algebra are canonical
binary trees: a leaf is a generator index, an internal node is a pair
``(left, right)`` with ``key(left) <= key(right)``. The degree-n component
of the ideal of consequences of the Jordan identity is assembled by the
recursion ``R_n = Subst_n + sum_d M_{n-d} R_d``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Union

import numpy as np

from .exactlin import Echelon, Subspace, QuotientMap
from .jordan import JordanAlgebra

Monomial = Union[int, tuple]


@lru_cache(maxsize=None)
def degree(m: Monomial) -> int:
    if isinstance(m, int):
        return 1
    return degree(m[0]) + degree(m[1])


@lru_cache(maxsize=None)
def key(m: Monomial) -> tuple:
    """Total order: by degree, then recursively by (left, right)."""
    if isinstance(m, int):
        return (1, m)
    return (degree(m), key(m[0]), key(m[1]))


def multiply(a: Monomial, b: Monomial) -> Monomial:
    return (a, b) if key(a) <= key(b) else (b, a)


def to_string(m: Monomial) -> str:
    if isinstance(m, int):
        return f"x{m + 1}"
    return f"({to_string(m[0])}{to_string(m[1])})"


@lru_cache(maxsize=None)
def _monomials(D: int, n: int) -> tuple[Monomial, ...]:
    if n == 1:
        return tuple(range(D))
    out = set()
    for p in range(1, n // 2 + 1):
        for a in _monomials(D, p):
            for b in _monomials(D, n - p):
                out.add(multiply(a, b))
    return tuple(sorted(out, key=key))


def monomials(D: int, n: int) -> list[Monomial]:
    """Canonical commutative monomials of degree n in D generators."""
    if D < 1 or n < 1:
        raise ValueError("D and n must be positive")
    return list(_monomials(D, n))


@lru_cache(maxsize=None)
def _index(D: int, n: int) -> dict:
    return {m: i for i, m in enumerate(_monomials(D, n))}


def _add(out: dict, m: Monomial, c: int) -> None:
    v = out.get(m, 0) + c
    if v:
        out[m] = v
    else:
        out.pop(m, None)


def linearized_jordan(a: Monomial, b: Monomial, c: Monomial, d: Monomial) -> dict:
    """((ac)b)d + ((ad)b)c + ((cd)b)a - (ac)(bd) - (ad)(bc) - (cd)(ba)."""
    m = multiply
    out: dict = {}
    _add(out, m(m(m(a, c), b), d), 1)
    _add(out, m(m(m(a, d), b), c), 1)
    _add(out, m(m(m(c, d), b), a), 1)
    _add(out, m(m(a, c), m(b, d)), -1)
    _add(out, m(m(a, d), m(b, c)), -1)
    _add(out, m(m(c, d), m(b, a)), -1)
    return out


class RelationSpace:
    """Degree-n part of the T-ideal, as a subspace of span(monomials(D, n))."""

    def __init__(self, D: int, n: int, subspace: Subspace):
        self.D = D
        self.degree = n
        self.subspace = subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def basis_polynomials(self) -> list[dict]:
        mons = _monomials(self.D, self.degree)
        return [{mons[i]: c for i, c in row.items()} for row in self.subspace.sparse_basis()]

    def contains(self, poly: dict) -> bool:
        idx = _index(self.D, self.degree)
        return self.subspace.contains({idx[m]: c for m, c in poly.items()})


def _substitutions(D: int, n: int):
    """Quadruples (a, b, c, d) of monomials of total degree n, with a <= c <= d
    (the linearised identity is symmetric in a, c, d)."""
    for da in range(1, n - 2):
        for db in range(1, n - da - 1):
            for dc in range(1, n - da - db):
                dd = n - da - db - dc
                for a, b, c, d in product(_monomials(D, da), _monomials(D, db),
                                          _monomials(D, dc), _monomials(D, dd)):
                    if key(a) <= key(c) <= key(d):
                        yield a, b, c, d


@lru_cache(maxsize=None)
def jordan_relation_space(D: int, n: int) -> RelationSpace:
    """Degree-n component of the ideal of consequences of the Jordan identity."""
    if n < 1:
        raise ValueError("n must be positive")
    N = len(_monomials(D, n))
    if n < 4:
        return RelationSpace(D, n, Subspace.zero(N))
    idx = _index(D, n)
    ech = Echelon()
    for a, b, c, d in _substitutions(D, n):
        rel = linearized_jordan(a, b, c, d)
        if rel:
            ech.add({idx[m]: v for m, v in rel.items()})
    for dr in range(4, n):
        for r in jordan_relation_space(D, dr).basis_polynomials():
            for m in _monomials(D, n - dr):
                prod_ = {}
                for mono, c in r.items():
                    _add(prod_, multiply(m, mono), c)
                ech.add({idx[k]: v for k, v in prod_.items()})
    return RelationSpace(D, n, Subspace.from_echelon(N, ech))


def dim_free_jordan(D: int, n: int) -> int:
    """dim J_n(D)."""
    return len(_monomials(D, n)) - jordan_relation_space(D, n).dim


def dimension_table(D: int, max_degree: int) -> list[dict]:
    rows = []
    for n in range(1, max_degree + 1):
        mons = len(_monomials(D, n))
        rank = jordan_relation_space(D, n).dim
        rows.append({"degree": n, "monomials": mons, "relations": rank, "dim": mons - rank})
    return rows


def truncated_algebra(D: int, N: int) -> JordanAlgebra:
    """J(D)/J+^N: basis {1} and quotient bases of J_d(D) for 0 < d < N."""
    if N < 1:
        raise ValueError("N must be positive")
    # basis: unit, then the complement monomials of each degree
    basis: list[tuple[int, Monomial]] = []
    qmaps = {}
    offsets = {}
    for d in range(1, N):
        rel = jordan_relation_space(D, d).subspace
        qmaps[d] = QuotientMap(rel)
        offsets[d] = 1 + len(basis)
        mons = _monomials(D, d)
        basis.extend((d, mons[i]) for i in rel.complement)
    dim = 1 + len(basis)
    t = np.full((dim, dim, dim), Fraction(0), dtype=object)
    for i in range(dim):
        t[0, i, i] = t[i, 0, i] = Fraction(1)
    for i, (di, mi) in enumerate(basis, start=1):
        for j, (dj, mj) in enumerate(basis, start=1):
            if j < i or di + dj >= N:
                continue
            d = di + dj
            col = _index(D, d)[multiply(mi, mj)]
            for k, c in qmaps[d].image_of_unit(col).items():
                t[i, j, offsets[d] + k] = t[j, i, offsets[d] + k] = c
    names = ("1",) + tuple(to_string(m) for _, m in basis)
    grading = (0,) + tuple(d for d, _ in basis)
    aug = Subspace.coordinate(dim, range(1, dim))
    return JordanAlgebra(t, 0, names, grading, aug)
