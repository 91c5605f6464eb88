"""
Exact rational linear algebra.

Scalars are ``fractions.Fraction``. Matrices are stored sparsely and all
eliminations run on integer rows (fraction-free, content removed after
every combination step), so ranks, kernels and quotients are exact.

Vectors are accepted either as dense sequences or as ``{index: value}``
dictionaries; results are returned in the form documented per function.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

Rational = Fraction
Scalar = Union[int, Fraction]
VectorLike = Union[Sequence[Scalar], Mapping[int, Scalar]]


def canonicalize(p: int, q: int) -> Fraction:
    """Return the reduced fraction p/q with positive denominator."""
    if q == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(int(p), int(q))


def to_rational(x) -> Fraction:
    """Parse ints, Fractions, and strings such as ``"-3/4"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    """Canonical ``"p/q"`` string (always with a denominator)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def sparse(v: VectorLike) -> dict[int, Fraction]:
    """Convert a dense or dict vector to a dict without zeros."""
    if isinstance(v, Mapping):
        items = v.items()
    else:
        items = enumerate(v)
    return {int(i): to_rational(x) for i, x in items if x != 0}


def dense(v: Mapping[int, Scalar], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = Fraction(x)
    return out


# ---------------------------------------------------------------------------
# integer row kernels

def _primitive(row: dict[int, int]) -> dict[int, int]:
    """Divide out the content and make the leading entry positive."""
    if not row:
        return row
    g = reduce(gcd, row.values())
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g == 1:
        return row
    return {k: v // g for k, v in row.items()}


def _integer_row(v: Mapping[int, Scalar]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row."""
    den = 1
    for x in v.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    row = {}
    for k, x in v.items():
        if x:
            y = x * den
            row[k] = int(y) if isinstance(y, int) else y.numerator
    return _primitive(row)


def _eliminate(r: dict[int, int], p: dict[int, int], c: int) -> dict[int, int]:
    """Fraction-free combination p[c]*r - r[c]*p, which clears column c."""
    a, b = p[c], r[c]
    g = gcd(a, b)
    a //= g
    b //= g
    if a == 1:
        out = dict(r)
    else:
        out = {k: a * v for k, v in r.items()}
    for k, v in p.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return _primitive(out)


def _cost(row: dict[int, int]) -> tuple[int, int]:
    return len(row), max(abs(v).bit_length() for v in row.values())


class Echelon:
    """Incremental row echelon form over the integers.

    Rows are added one at a time and reduced against the current pivots.
    When an incoming row collides with an existing pivot row, the cheaper
    of the two (fewer entries, then smaller bit-length) keeps the pivot.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: Mapping[int, Scalar]) -> dict[int, int]:
        """Reduce v (scaled to integers) against the pivots; no insertion."""
        r = _integer_row(v)
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                return r
            r = _eliminate(r, p, c)
        return r

    def add(self, v: Mapping[int, Scalar]) -> bool:
        """Insert v; return True if it enlarged the row space."""
        r = _integer_row(v)
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                self.pivots[c] = r
                return True
            if _cost(r) < _cost(p):
                self.pivots[c] = r
                r, p = p, r
            r = _eliminate(r, p, c)
        return False

    def extend(self, vectors: Iterable[Mapping[int, Scalar]]) -> int:
        return sum(self.add(v) for v in vectors)

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)

    def rref(self) -> list[dict[int, Fraction]]:
        """Reduced echelon rows (pivot entry 1), sorted by pivot column."""
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for i in reversed(range(len(cols))):
            ci = cols[i]
            ri = rows[ci]
            for cj in cols[:i]:
                rj = rows[cj]
                if ci in rj:
                    rows[cj] = _eliminate(rj, ri, ci)
        out = []
        for c in cols:
            row = rows[c]
            piv = row[c]
            out.append({k: Fraction(v, piv) for k, v in sorted(row.items())})
        return out


# ---------------------------------------------------------------------------
# matrices

@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse rational matrix with canonical row-major entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, Fraction], ...] = ()

    def __post_init__(self):
        merged: dict[tuple[int, int], Fraction] = {}
        for r, c, x in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if (r, c) in merged:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            merged[(r, c)] = to_rational(x)
        canon = tuple((r, c, x) for (r, c), x in sorted(merged.items()) if x != 0)
        object.__setattr__(self, "entries", canon)

    @classmethod
    def from_dense(cls, a) -> "SparseMatrix":
        a = [list(row) for row in a]
        nrows = len(a)
        ncols = len(a[0]) if nrows else 0
        ents = [(i, j, to_rational(x)) for i, row in enumerate(a)
                for j, x in enumerate(row) if x != 0]
        return cls(nrows, ncols, tuple(ents))

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, Scalar]], cols: int) -> "SparseMatrix":
        ents = [(i, j, x) for i, row in enumerate(rows) for j, x in row.items() if x != 0]
        return cls(len(rows), cols, tuple(ents))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, ())

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, tuple((i, i, Fraction(1)) for i in range(n)))

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for r, c, x in self.entries:
            out[r][c] = x
        return out

    def to_dense(self) -> np.ndarray:
        a = np.full((self.rows, self.cols), Fraction(0), dtype=object)
        for r, c, x in self.entries:
            a[r, c] = x
        return a

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, tuple((c, r, x) for r, c, x in self.entries))

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for r, k, x in self.entries:
            for c, y in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + x * y
        return SparseMatrix(self.rows, other.cols, tuple((r, c, x) for (r, c), x in acc.items()))

    def apply(self, v: VectorLike) -> list[Fraction]:
        """Matrix-vector product with a dense result."""
        vs = sparse(v)
        out = [Fraction(0)] * self.rows
        for r, c, x in self.entries:
            if c in vs:
                out[r] += x * vs[c]
        return out


def _as_rows(m) -> tuple[list[dict[int, Fraction]], int]:
    if isinstance(m, SparseMatrix):
        return m.row_dicts(), m.cols
    m = SparseMatrix.from_dense(m)
    return m.row_dicts(), m.cols


def rank(m) -> int:
    """Exact rank over the rationals."""
    rows, _ = _as_rows(m)
    ech = Echelon()
    return ech.extend(rows)


def rank_of_vectors(vectors: Iterable[Mapping[int, Scalar]]) -> int:
    """Rank of a family of sparse vectors."""
    ech = Echelon()
    return ech.extend(vectors)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim in reduced row echelon form.

    ``rows`` holds the reduced basis as sorted ``(col, value)`` tuples;
    the pivot of each row is its first column and has value 1.
    """

    ambient_dim: int
    rows: tuple[tuple[tuple[int, Fraction], ...], ...] = ()
    _pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_pivots", tuple(r[0][0] for r in self.rows))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[VectorLike]) -> "Subspace":
        ech = Echelon()
        for v in vectors:
            vs = sparse(v)
            if vs and max(vs) >= ambient_dim:
                raise ValueError("dimension mismatch")
            ech.add(vs)
        return cls.from_echelon(ambient_dim, ech)

    @classmethod
    def from_echelon(cls, ambient_dim: int, ech: Echelon) -> "Subspace":
        rows = tuple(tuple(sorted(r.items())) for r in ech.rref())
        return cls(ambient_dim, rows)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(((i, Fraction(1)),) for i in range(ambient_dim)))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        return cls(ambient_dim, tuple(((i, Fraction(1)),) for i in sorted(set(indices))))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def complement(self) -> tuple[int, ...]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        piv = set(self._pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    @property
    def basis(self) -> list[list[Fraction]]:
        return [dense(dict(r), self.ambient_dim) for r in self.rows]

    def sparse_basis(self) -> list[dict[int, Fraction]]:
        return [dict(r) for r in self.rows]

    def residual(self, v: VectorLike) -> dict[int, Fraction]:
        """v minus its projection along the complement (zero iff v in self)."""
        vs = sparse(v)
        if vs and max(vs) >= self.ambient_dim:
            raise ValueError("dimension mismatch")
        out = dict(vs)
        for piv, row in zip(self._pivots, self.rows):
            c = vs.get(piv)
            if c:
                for k, x in row:
                    nv = out.get(k, 0) - c * x
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def contains(self, v: VectorLike) -> bool:
        return not self.residual(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: VectorLike) -> list[Fraction]:
        """Coefficients of v in the reduced basis; raises if v is not in self."""
        vs = sparse(v)
        if self.residual(vs):
            raise ValueError("vector not in subspace")
        return [vs.get(p, Fraction(0)) for p in self._pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("dimension mismatch")
        return Subspace.span(self.ambient_dim, self.sparse_basis() + other.sparse_basis())

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(dict(r)) for r in self.rows)

    def intersection(self, other: "Subspace") -> "Subspace":
        """self ∩ other from the kernel of [self; -other]."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("dimension mismatch")
        a, b = self.sparse_basis(), other.sparse_basis()
        if not a or not b:
            return Subspace.zero(self.ambient_dim)
        # columns are basis vectors of self and other
        rows: list[dict[int, Fraction]] = [{} for _ in range(self.ambient_dim)]
        for j, v in enumerate(a):
            for i, x in v.items():
                rows[i][j] = x
        for j, v in enumerate(b):
            for i, x in v.items():
                rows[i][len(a) + j] = -x
        ker = kernel_basis(SparseMatrix.from_rows(rows, len(a) + len(b)))
        vecs = []
        for kv in ker.sparse_basis():
            w: dict[int, Fraction] = {}
            for j, c in kv.items():
                if j < len(a):
                    for i, x in a[j].items():
                        w[i] = w.get(i, 0) + c * x
            vecs.append(w)
        return Subspace.span(self.ambient_dim, vecs)


def kernel_basis(m) -> Subspace:
    """Right null space of m."""
    rows, ncols = _as_rows(m)
    ech = Echelon()
    ech.extend(rows)
    rref = ech.rref()
    pivset = {min(r) for r in rref}
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for r in rref:
            x = r.get(f)
            if x:
                v[min(r)] = -x
        vecs.append(v)
    return Subspace.span(ncols, vecs)


def quotient_coords(ambient: int, sub: Subspace, v: VectorLike) -> list[Fraction]:
    """Coordinates of v modulo sub in the non-pivot complement basis."""
    n = len(v) if not isinstance(v, Mapping) else ambient
    if sub.ambient_dim != ambient or n != ambient:
        raise ValueError("dimension mismatch")
    res = sub.residual(v)
    return [res.get(i, Fraction(0)) for i in sub.complement]


class QuotientMap:
    """Precomputed projection Q^ambient -> Q^ambient / sub.

    Coordinates follow ``sub.complement``; images of unit vectors are
    cached so that repeated projections of sparse vectors are cheap.
    """

    def __init__(self, sub: Subspace):
        self.sub = sub
        self.ambient = sub.ambient_dim
        self.position = {c: i for i, c in enumerate(sub.complement)}
        self.dim = len(self.position)
        self._unit: dict[int, dict[int, Fraction]] = {}
        for piv, row in zip(sub.pivots, sub.rows):
            self._unit[piv] = {self.position[k]: -x for k, x in row if k != piv}

    def image_of_unit(self, i: int) -> dict[int, Fraction]:
        if i in self.position:
            return {self.position[i]: Fraction(1)}
        return self._unit[i]

    def __call__(self, v: Mapping[int, Scalar]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, x in v.items():
            if not x:
                continue
            for k, y in self.image_of_unit(i).items():
                nv = out.get(k, 0) + x * y
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out


# ---------------------------------------------------------------------------
# integer tensors for exhaustive identity checks

def integerize(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Scale a rational object array to integers: returns (A, d) with a = A/d.

    A is ``int64`` when every entry fits comfortably, otherwise a Python-int
    object array.
    """
    flat = [to_rational(x) for x in a.ravel()]
    d = 1
    for x in flat:
        d = lcm(d, x.denominator)
    ints = [int(x * d) for x in flat]
    big = max((abs(x) for x in ints), default=0)
    dtype = np.int64 if big < 2**31 else object
    return np.array(ints, dtype=dtype).reshape(a.shape), d


def fits_int64(bound: int) -> bool:
    return bound < 2**62
