"""
Finite-dimensional unital Jordan algebras given by structure constants.

A ``JordanAlgebra`` stores ``table[i, j, k] = c_ij^k`` so that
``b_i b_j = sum_k c_ij^k b_k``. Elements are dense object arrays of
``Fraction``. Ideals and other subspaces are ``exactlin.Subspace`` objects
in basis coordinates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactlin import (Echelon, Subspace, fits_int64, format_rational, integerize,
                       sparse, to_rational)

F0 = Fraction(0)
F1 = Fraction(1)


def zeros(n: int) -> np.ndarray:
    return np.full(n, F0, dtype=object)


def _as_vector(v, n: int) -> np.ndarray:
    if isinstance(v, Mapping):
        out = zeros(n)
        for i, x in v.items():
            out[i] = to_rational(x)
        return out
    out = np.array([to_rational(x) for x in v], dtype=object)
    if out.shape != (n,):
        raise ValueError(f"expected a vector of length {n}")
    return out


@dataclass(frozen=True, eq=False)
class JordanAlgebra:
    """Unital commutative algebra with basis b_0..b_{dim-1}.

    ``grading`` assigns a degree to each basis vector; ``augmentation`` is
    a codimension-one ideal J+ (a Subspace) not containing the unit.
    """

    table: np.ndarray
    unit: int
    names: tuple[str, ...] = ()
    grading: tuple[int, ...] | None = None
    augmentation: Subspace | None = None
    _products: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=object)
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
            raise IndexError("structure constants must have shape (d, d, d)")
        t = np.vectorize(to_rational, otypes=[object])(t) if t.size else t
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        d = t.shape[0]
        if not 0 <= self.unit < d:
            raise IndexError("unit index out of range")
        names = tuple(self.names) or tuple(f"b{i}" for i in range(d))
        if len(names) != d:
            raise IndexError("names length does not match dimension")
        object.__setattr__(self, "names", names)
        if self.grading is not None:
            if len(self.grading) != d:
                raise IndexError("grading length does not match dimension")
            object.__setattr__(self, "grading", tuple(int(g) for g in self.grading))
        if self.augmentation is not None and self.augmentation.ambient_dim != d:
            raise IndexError("augmentation ambient dimension mismatch")
        prods = {}
        for i in range(d):
            for j in range(d):
                nz = {k: t[i, j, k] for k in range(d) if t[i, j, k] != 0}
                if nz:
                    prods[(i, j)] = nz
        object.__setattr__(self, "_products", prods)

    # -- basic access -----------------------------------------------------

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = F1
        return v

    def one(self) -> np.ndarray:
        return self.basis_vector(self.unit)

    def element(self, v) -> np.ndarray:
        return _as_vector(v, self.dim)

    def product_of_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return self._products.get((i, j), {})

    def mul_sparse(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, x in u.items():
            for j, y in v.items():
                for k, c in self._products.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + x * y * c
        return {k: c for k, c in out.items() if c}

    def mul(self, u, v) -> np.ndarray:
        us = sparse(self.element(u))
        vs = sparse(self.element(v))
        return self.element(self.mul_sparse(us, vs))

    def power(self, a, n: int) -> np.ndarray:
        """a^n with a^0 = 1 and a^n = a * a^(n-1)."""
        a = self.element(a)
        out = self.one()
        for _ in range(n):
            out = self.mul(a, out)
        return out

    def left_mult(self, a) -> np.ndarray:
        """Matrix of x -> a x (columns are images of basis vectors)."""
        a = self.element(a)
        m = np.full((self.dim, self.dim), F0, dtype=object)
        for i in np.flatnonzero(a != 0):
            for j in range(self.dim):
                for k, c in self._products.get((int(i), j), {}).items():
                    m[k, j] += a[i] * c
        return m

    def is_graded(self) -> bool:
        return self.grading is not None

    @property
    def augmentation_indices(self) -> tuple[int, ...] | None:
        """Basis indices spanning J+ when it is a coordinate subspace."""
        aug = self.augmentation
        if aug is None:
            return None
        if any(len(r) != 1 for r in aug.rows):
            return None
        return aug.pivots

    def with_table(self, table: np.ndarray) -> "JordanAlgebra":
        return JordanAlgebra(table, self.unit, self.names, self.grading, self.augmentation)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        products = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                nz = self._products.get((i, j))
                if nz:
                    products.append([i, j, [[k, format_rational(c)] for k, c in sorted(nz.items())]])
        aug = None
        if self.augmentation is not None:
            aug = self.augmentation_indices
            if aug is None:
                raise ValueError("only coordinate augmentation ideals can be serialized")
            aug = list(aug)
        return {
            "dim": self.dim,
            "unit": self.unit,
            "names": list(self.names),
            "grading": None if self.grading is None else list(self.grading),
            "augmentation": aug,
            "products": products,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "JordanAlgebra":
        d = int(data["dim"])
        t = np.full((d, d, d), F0, dtype=object)
        for i, j, entries in data["products"]:
            if i > j:
                raise ValueError("products must be listed with i <= j")
            for k, c in entries:
                t[i, j, k] = t[j, i, k] = Fraction(c)
        aug = data.get("augmentation")
        return cls(
            t,
            int(data["unit"]),
            tuple(data.get("names") or ()),
            None if data.get("grading") is None else tuple(data["grading"]),
            None if aug is None else Subspace.coordinate(d, aug),
        )

    @classmethod
    def from_json(cls, text: str) -> "JordanAlgebra":
        return cls.from_dict(json.loads(text))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "JordanAlgebra":
        with open(path) as fh:
            return cls.from_json(fh.read())


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    ok: bool
    violation: str | None = None
    checks: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violation": self.violation, "checks": self.checks}


def _integer_table(J: JordanAlgebra) -> np.ndarray:
    """Integer multiple of the structure tensor (the scale is irrelevant for
    identities that are homogeneous in the structure constants)."""
    t, _ = integerize(J.table)
    big = int(np.max(np.abs(t))) if t.size else 0
    if t.dtype != object and not fits_int64(6 * big**3 * J.dim**2):
        t = t.astype(object)
    return t


def jordan_identity_violation(J: JordanAlgebra) -> tuple[int, int, int, int, int] | None:
    """First (a, b, c, d, k) where the linearised Jordan identity fails.

    The identity is symmetric in (a, c, d):
    ((ac)b)d + ((ad)b)c + ((cd)b)a = (ac)(bd) + (ad)(bc) + (cd)(ba).
    """
    d = J.dim
    T = _integer_table(J)
    P = T.reshape(d * d, d)
    Tflat = T.reshape(d, d * d)
    for b in range(d):
        F = (P @ T[:, b, :] @ Tflat).reshape(d, d, d, d)
        W = np.matmul(T[b][None, :, :], T)
        R = (P @ W.reshape(d, d * d)).reshape(d, d, d, d)
        E = (F + F.transpose(0, 2, 1, 3) + F.transpose(2, 0, 1, 3)
             - R - R.transpose(0, 2, 1, 3) - R.transpose(2, 0, 1, 3))
        bad = np.argwhere(E != 0)
        if len(bad):
            a, c, dd, k = (int(x) for x in bad[0])
            return a, b, c, dd, k
    return None


def validate(J: JordanAlgebra) -> ValidationReport:
    """Check commutativity, the unit, the Jordan identity, grading and J+."""
    d = J.dim
    t = J.table
    checks = []
    asym = np.argwhere(t != t.transpose(1, 0, 2))
    if len(asym):
        i, j, k = asym[0]
        return ValidationReport(False, f"not commutative: c_{i}{j}^{k} != c_{j}{i}^{k}", checks)
    checks.append("commutative")
    u = J.unit
    for i in range(d):
        if J.product_of_basis(u, i) != {i: F1}:
            return ValidationReport(False, f"unit does not act as identity on basis vector {i}", checks)
    checks.append("unit")
    bad = jordan_identity_violation(J)
    if bad is not None:
        return ValidationReport(False, "Jordan identity fails at (a,b,c,d,k)=%s" % (bad,), checks)
    checks.append("jordan identity")
    if J.grading is not None:
        g = J.grading
        for (i, j), prod in J._products.items():
            for k in prod:
                if g[k] != g[i] + g[j]:
                    return ValidationReport(False, f"product b{i}*b{j} not homogeneous of degree {g[i] + g[j]}", checks)
        checks.append("grading")
    if J.augmentation is not None:
        aug = J.augmentation
        if aug.dim != d - 1:
            return ValidationReport(False, "augmentation ideal does not have codimension 1", checks)
        if aug.contains(J.one()):
            return ValidationReport(False, "augmentation ideal contains the unit", checks)
        if not is_ideal(J, aug):
            return ValidationReport(False, "augmentation is not an ideal", checks)
        checks.append("augmentation")
    return ValidationReport(True, None, checks)


# ---------------------------------------------------------------------------
# derivations and ideals

def inner_derivation(J: JordanAlgebra, a, b) -> np.ndarray:
    """Matrix of x -> a(bx) - (ax)b, i.e. [L_a, L_b]."""
    La, Lb = J.left_mult(a), J.left_mult(b)
    return La.dot(Lb) - Lb.dot(La)


def is_derivation(J: JordanAlgebra, D: np.ndarray) -> bool:
    d = J.dim
    for i in range(d):
        for j in range(i, d):
            lhs = D.dot(J.mul(J.basis_vector(i), J.basis_vector(j)))
            rhs = J.mul(D[:, i], J.basis_vector(j)) + J.mul(J.basis_vector(i), D[:, j])
            if any(x != 0 for x in lhs - rhs):
                return False
    return True


def inner_derivation_space(J: JordanAlgebra) -> Subspace:
    """Inn J as a subspace of End(J) in row-major coordinates."""
    d = J.dim
    vecs = []
    for i in range(d):
        for j in range(i + 1, d):
            D = inner_derivation(J, J.basis_vector(i), J.basis_vector(j))
            vecs.append(sparse(D.ravel()))
    return Subspace.span(d * d, vecs)


def _subspace(J: JordanAlgebra, vectors: Iterable) -> Subspace:
    return Subspace.span(J.dim, [sparse(J.element(v)) if not isinstance(v, dict) else v for v in vectors])


def is_ideal(J: JordanAlgebra, I: Subspace) -> bool:
    for v in I.sparse_basis():
        for j in range(J.dim):
            if not I.contains(J.mul_sparse(v, {j: F1})):
                return False
    return True


def ideal_generated(J: JordanAlgebra, S: Iterable) -> Subspace:
    """Smallest ideal containing S (closure under multiplication by basis vectors)."""
    ech = Echelon()
    queue = []
    for v in S:
        v = sparse(J.element(v)) if not isinstance(v, dict) else v
        if ech.add(v):
            queue.append(v)
    while queue:
        v = queue.pop()
        for j in range(J.dim):
            w = J.mul_sparse(v, {j: F1})
            if w and ech.add(w):
                queue.append(w)
    return Subspace.from_echelon(J.dim, ech)


def _require_ideal(J: JordanAlgebra, I: Subspace) -> None:
    if I.ambient_dim != J.dim:
        raise ValueError("dimension mismatch")
    if not is_ideal(J, I):
        raise ValueError("subspace is not an ideal")


def power_span_ideal(J: JordanAlgebra, I: Subspace, n: int) -> Subspace:
    """Span of all a^n with a in I, generated by full polarisations.

    For a multiset {y_1..y_n} of basis vectors of I the polarisation of the
    right-normed power is P(y_1..y_n) = sum_i y_i P(y_1..^y_i..y_n).
    """
    _require_ideal(J, I)
    if n < 1:
        raise ValueError("n must be positive")
    basis = I.sparse_basis()
    if n == 1 or not basis:
        return I
    memo: dict[tuple[int, ...], dict[int, Fraction]] = {}

    def pol(key: tuple[int, ...]) -> dict[int, Fraction]:
        if len(key) == 1:
            return basis[key[0]]
        if key in memo:
            return memo[key]
        out: dict[int, Fraction] = {}
        seen = set()
        for pos, i in enumerate(key):
            if i in seen:
                # equal factors contribute equal terms
                continue
            seen.add(i)
            mult = key.count(i)
            rest = key[:pos] + key[pos + 1:]
            for k, c in J.mul_sparse(basis[i], pol(rest)).items():
                out[k] = out.get(k, 0) + mult * c
        out = {k: c for k, c in out.items() if c}
        memo[key] = out
        return out

    ech = Echelon()
    for key in combinations_with_replacement(range(len(basis)), n):
        ech.add(pol(key))
    P = Subspace.from_echelon(J.dim, ech)
    if not is_ideal(J, P):
        raise RuntimeError("power span is not an ideal")
    return P


def product_ideal_power(J: JordanAlgebra, I: Subspace, n: int) -> Subspace:
    """I^n = sum_{p+q=n} I^p I^q with I^1 = I."""
    if n < 1:
        raise ValueError("n must be positive")
    _require_ideal(J, I)
    powers = {1: I}
    for m in range(2, n + 1):
        ech = Echelon()
        for p in range(1, m // 2 + 1):
            for u in powers[p].sparse_basis():
                for v in powers[m - p].sparse_basis():
                    ech.add(J.mul_sparse(u, v))
        powers[m] = Subspace.from_echelon(J.dim, ech)
    return powers[n]


def quotient(J: JordanAlgebra, I: Subspace) -> JordanAlgebra:
    """J/I in the complement basis of non-pivot coordinates of I.

    See ``quotient_with_map`` for the basis convention.
    """
    return quotient_with_map(J, I)[0]


def quotient_with_map(J: JordanAlgebra, I: Subspace):
    """Return (J/I, projection) where projection maps element dicts of J to
    coordinate arrays of J/I.

    If the image of the unit is not itself a complement basis vector, the
    first complement vector on which it has a nonzero coordinate is replaced
    by that image so that the unit remains a basis vector.
    """
    _require_ideal(J, I)
    if I.dim == J.dim:
        raise ValueError("cannot take the quotient by the whole algebra")
    comp = I.complement
    m = len(comp)

    def project(v: Mapping[int, Fraction]) -> np.ndarray:
        res = I.residual(v)
        return np.array([res.get(c, F0) for c in comp], dtype=object)

    unit_img = project({J.unit: F1})
    nz = [i for i in range(m) if unit_img[i] != 0]
    pos = nz[0]
    # change of basis: new basis vector pos is the unit image
    change = np.full((m, m), F0, dtype=object)
    for i in range(m):
        change[i, i] = F1
    change[:, pos] = unit_img
    inv = _inverse(change)
    lifts = []
    for i in range(m):
        lifts.append({comp[r]: change[r, i] for r in range(m) if change[r, i] != 0})
    t = np.full((m, m, m), F0, dtype=object)
    for i in range(m):
        for j in range(i, m):
            coords = inv.dot(project(J.mul_sparse(lifts[i], lifts[j])))
            t[i, j, :] = coords
            t[j, i, :] = coords
    standard = len(nz) == 1 and unit_img[pos] == 1
    names = tuple(J.names[c] for c in comp)
    if not standard:
        names = names[:pos] + ("1",) + names[pos + 1:]
    grading = None
    homogeneous = J.grading is not None and all(len({J.grading[k] for k, _ in row}) == 1 for row in I.rows)
    if standard and homogeneous:
        grading = tuple(J.grading[c] for c in comp)
    aug = None
    if J.augmentation is not None:
        imgs = [inv.dot(project(v)) for v in J.augmentation.sparse_basis()]
        aug = Subspace.span(m, [sparse(v) for v in imgs])
    def projection(v: Mapping[int, Fraction]) -> np.ndarray:
        return inv.dot(project(v))

    return JordanAlgebra(t, pos, names, grading, aug), projection


def _inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    m = np.concatenate([a.copy(), np.array([[F1 if i == j else F0 for j in range(n)] for i in range(n)], dtype=object)], axis=1)
    for c in range(n):
        p = next(r for r in range(c, n) if m[r, c] != 0)
        m[[c, p]] = m[[p, c]]
        m[c] = m[c] / m[c, c]
        for r in range(n):
            if r != c and m[r, c] != 0:
                m[r] = m[r] - m[r, c] * m[c]
    return m[:, n:]


# ---------------------------------------------------------------------------
# fixtures

def ground_field() -> JordanAlgebra:
    t = np.full((1, 1, 1), F1, dtype=object)
    return JordanAlgebra(t, 0, ("1",), (0,), Subspace.zero(1))


def truncated_polynomial(N: int) -> JordanAlgebra:
    """K[t]/(t^N) with basis 1, t, ..., t^(N-1)."""
    if N < 1:
        raise ValueError("N must be positive")
    t = np.full((N, N, N), F0, dtype=object)
    for i in range(N):
        for j in range(N - i):
            t[i, j, i + j] = F1
    names = tuple("1" if i == 0 else ("t" if i == 1 else f"t^{i}") for i in range(N))
    return JordanAlgebra(t, 0, names, tuple(range(N)), Subspace.coordinate(N, range(1, N)))


def _matrix_jordan(basis, product, decode, names, unit=0) -> JordanAlgebra:
    d = len(basis)
    t = np.full((d, d, d), F0, dtype=object)
    for i in range(d):
        for j in range(i, d):
            coords = decode(product(basis[i], basis[j]))
            for k, c in enumerate(coords):
                t[i, j, k] = t[j, i, k] = c
    return JordanAlgebra(t, unit, tuple(names))


def symmetric_matrices(n: int = 3) -> JordanAlgebra:
    """Symmetric n x n rational matrices under a.b = (ab + ba)/2.

    Basis: identity, E_11..E_{n-1,n-1}, then E_ij + E_ji for i < j.
    """
    def unit_mat(i, j):
        m = np.full((n, n), F0, dtype=object)
        m[i, j] = m[j, i] = F1
        return m

    eye = np.array([[F1 if i == j else F0 for j in range(n)] for i in range(n)], dtype=object)
    basis = [eye] + [unit_mat(i, i) for i in range(n - 1)]
    names = ["1"] + [f"E{i + 1}{i + 1}" for i in range(n - 1)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    basis += [unit_mat(i, j) for i, j in pairs]
    names += [f"S{i + 1}{j + 1}" for i, j in pairs]

    def product(x, y):
        return (x.dot(y) + y.dot(x)) / 2

    def decode(z):
        alpha = z[n - 1, n - 1]
        out = [alpha] + [z[i, i] - alpha for i in range(n - 1)]
        out += [z[i, j] for i, j in pairs]
        return out

    return _matrix_jordan(basis, product, decode, names)


# split octonions as Zorn vector matrices (a, u, v, b), u, v in K^3

def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def octonion_mul(x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Product of split octonions in coordinates (a, u1, u2, u3, v1, v2, v3, b)."""
    a, u, v, b = x[0], x[1:4], x[4:7], x[7]
    a2, u2, v2, b2 = y[0], y[1:4], y[4:7], y[7]
    vv = _cross(v, v2)
    uu = _cross(u, u2)
    first = a * a2 + _dot(u, v2)
    top = tuple(a * u2[i] + b2 * u[i] - vv[i] for i in range(3))
    bottom = tuple(a2 * v[i] + b * v2[i] + uu[i] for i in range(3))
    last = b * b2 + _dot(v, u2)
    return (first,) + top + bottom + (last,)


def octonion_conj(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return (x[7],) + tuple(-c for c in x[1:7]) + (x[0],)


def octonion_norm(x: Sequence[Fraction]) -> Fraction:
    return x[0] * x[7] - _dot(x[1:4], x[4:7])


OCTONION_COORDS = ("a", "u1", "u2", "u3", "v1", "v2", "v3", "b")


def albert_algebra() -> JordanAlgebra:
    """Hermitian 3 x 3 matrices over the split octonions with X.Y = (XY+YX)/2.

    Basis: the identity, E11, E22, then for the off-diagonal slots (1,2),
    (1,3), (2,3) the eight octonion coordinates (entry o at (i,j) and its
    conjugate at (j,i)). The identity is the unit.
    """
    zero_o = (F0,) * 8

    def scalar(c):
        return (c, F0, F0, F0, F0, F0, F0, c)

    def o_add(x, y):
        return tuple(p + q for p, q in zip(x, y))

    def diag(i):
        return [[scalar(F1) if (r == c == i) else zero_o for c in range(3)] for r in range(3)]

    eye = [[scalar(F1) if r == c else zero_o for c in range(3)] for r in range(3)]
    slots = [(0, 1), (0, 2), (1, 2)]
    basis = [eye, diag(0), diag(1)]
    names = ["1", "E11", "E22"]
    for (i, j) in slots:
        for c in range(8):
            o = tuple(F1 if k == c else F0 for k in range(8))
            m = [[zero_o] * 3 for _ in range(3)]
            m[i][j] = o
            m[j][i] = octonion_conj(o)
            basis.append(m)
            names.append(f"x{i + 1}{j + 1}.{OCTONION_COORDS[c]}")

    def matmul(x, y):
        out = [[zero_o] * 3 for _ in range(3)]
        for r in range(3):
            for c in range(3):
                acc = zero_o
                for k in range(3):
                    acc = o_add(acc, octonion_mul(x[r][k], y[k][c]))
                out[r][c] = acc
        return out

    def product(x, y):
        p, q = matmul(x, y), matmul(y, x)
        return [[tuple((s + t) / 2 for s, t in zip(p[r][c], q[r][c])) for c in range(3)] for r in range(3)]

    def decode(z):
        xi = []
        for r in range(3):
            e = z[r][r]
            if e != scalar(e[0]):
                raise AssertionError("diagonal of a Hermitian product is not scalar")
            xi.append(e[0])
        out = [xi[2], xi[0] - xi[2], xi[1] - xi[2]]
        for (i, j) in slots:
            if z[j][i] != octonion_conj(z[i][j]):
                raise AssertionError("product is not Hermitian")
            out.extend(z[i][j])
        return out

    return _matrix_jordan(basis, product, decode, names)


FIXTURES = ("field", "truncpoly", "sym", "albert", "free")


def fixture(name: str, *params: int) -> JordanAlgebra:
    """Named fixtures: field, truncpoly N, sym n, albert, free D N."""
    if name == "field":
        return ground_field()
    if name == "truncpoly":
        return truncated_polynomial(*params)
    if name == "sym":
        return symmetric_matrices(*params)
    if name == "albert":
        return albert_algebra()
    if name == "free":
        from .freejordan import truncated_algebra
        return truncated_algebra(*params)
    raise ValueError(f"unknown fixture {name!r}")
