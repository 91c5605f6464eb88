"""
The Tits-Kantor-Koecher algebra TKK(J) = (sl2 (x) J) + Inn J and its
universal central extension sl2^(J) = (sl2 (x) J) + {J, J}.

Basis order of both algebras: e(b_0..b_{d-1}), h(b_0..), f(b_0..), then the
degree-zero extra part ({J,J} classes or a basis of Inn J). The short
grading tags are +2 for e, 0 for h and the extra part, -2 for f.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping

import numpy as np

from .exactlin import Echelon, QuotientMap, Subspace, rank_of_vectors, sparse
from .jordan import JordanAlgebra, inner_derivation, is_ideal, quotient_with_map
from .lie import LieAlgebra, _axpy

F0, F1 = Fraction(0), Fraction(1)

SL2 = ("e", "h", "f")
SL2_BRACKET = {
    ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
    ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
    ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
}
KILLING = {("h", "h"): 4, ("e", "f"): 2, ("f", "e"): 2}
SL2_WEIGHT = {"e": 2, "h": 0, "f": -2}


class Sl2Basis:
    """The basis {e, h, f} with [h,e]=2e, [h,f]=-2f, [e,f]=h and kappa(h,h)=4."""

    names = SL2

    @staticmethod
    def bracket(x: str, y: str) -> dict[str, int]:
        return dict(SL2_BRACKET.get((x, y), {}))

    @staticmethod
    def kappa(x: str, y: str) -> int:
        return KILLING.get((x, y), 0)

    @classmethod
    def kappa_invariant(cls) -> bool:
        """kappa([x,y],z) = kappa(x,[y,z]) on all basis triples."""
        for x in SL2:
            for y in SL2:
                for z in SL2:
                    lhs = sum(c * cls.kappa(w, z) for w, c in cls.bracket(x, y).items())
                    rhs = sum(c * cls.kappa(x, w) for w, c in cls.bracket(y, z).items())
                    if lhs != rhs:
                        return False
        return True

    @classmethod
    def kappa_symmetric(cls) -> bool:
        return all(cls.kappa(x, y) == cls.kappa(y, x) for x in SL2 for y in SL2)


# ---------------------------------------------------------------------------
# the central term

class CentralTerm:
    """{J,J} = Lambda^2 J / S with S spanned by x^(yz) + y^(zx) + z^(xy).

    Wedge coordinates are pairs (i, j), i < j, in lexicographic order; the
    quotient basis is the non-pivot complement of S, so class p is
    represented by the wedge pair ``basis_pairs[p]``.
    """

    def __init__(self, J: JordanAlgebra):
        self.J = J
        d = J.dim
        self.pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
        self.pair_index = {p: n for n, p in enumerate(self.pairs)}
        ech = Echelon()
        for x, y, z in combinations_with_replacement(range(d), 3):
            w: dict[int, Fraction] = {}
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                self._wedge_into(w, {a: F1}, J.product_of_basis(b, c))
            if w:
                ech.add(w)
        self.S = Subspace.from_echelon(len(self.pairs), ech)
        self.qmap = QuotientMap(self.S)
        self.basis_pairs = [self.pairs[c] for c in self.S.complement]

    @property
    def dim(self) -> int:
        return self.qmap.dim

    def _wedge_into(self, out: dict, u: Mapping[int, Fraction], v: Mapping[int, Fraction], scale=1) -> None:
        for i, x in u.items():
            for j, y in v.items():
                if i == j:
                    continue
                if i < j:
                    k, s = self.pair_index[(i, j)], 1
                else:
                    k, s = self.pair_index[(j, i)], -1
                nv = out.get(k, 0) + s * scale * x * y
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)

    def wedge(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """u ^ v in wedge-pair coordinates."""
        out: dict[int, Fraction] = {}
        self._wedge_into(out, u, v)
        return out

    def symbol(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """The class {u, v} in quotient coordinates."""
        return self.qmap(self.wedge(u, v))

    def symbol_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self.qmap.image_of_unit(self.pair_index[(i, j)])
        return {k: -c for k, c in self.qmap.image_of_unit(self.pair_index[(j, i)]).items()}

    def contains_cube_wedge(self, a) -> bool:
        """Whether a ^ a^2 lies in S."""
        a = sparse(self.J.element(a))
        return self.S.contains(self.wedge(a, self.J.mul_sparse(a, a)))


def central_term(J: JordanAlgebra) -> CentralTerm:
    return CentralTerm(J)


# ---------------------------------------------------------------------------
# the Lie algebras

class TKKAlgebra(LieAlgebra):
    """sl2 (x) J plus a degree-zero part, with the short grading.

    ``central=True`` gives sl2^(J) with the {J,J} classes;
    ``central=False`` gives TKK(J) with a basis of Inn J.
    """

    def __init__(self, J: JordanAlgebra, central: bool, brackets, extra_names, extra_dim,
                 central_term: CentralTerm | None = None, inner: Subspace | None = None):
        d = J.dim
        names = [f"{x}({J.names[i]})" for x in SL2 for i in range(d)] + list(extra_names)
        grading = [SL2_WEIGHT[x] for x in SL2 for _ in range(d)] + [0] * extra_dim
        super().__init__(3 * d + extra_dim, brackets, names, grading)
        self.J = J
        self.central = central
        self.central_term = central_term
        self.inner = inner
        self.extra_dim = extra_dim

    def index(self, x: str, i: int) -> int:
        return SL2.index(x) * self.J.dim + i

    def extra_index(self, p: int) -> int:
        return 3 * self.J.dim + p

    def current(self, x: str, a) -> dict[int, Fraction]:
        """The element x(a) for an sl2 basis name x and a in J."""
        a = sparse(self.J.element(a))
        off = SL2.index(x) * self.J.dim
        return {off + i: c for i, c in a.items()}

    def symbol(self, a, b) -> dict[int, Fraction]:
        """{a, b} as an element (central=True only)."""
        if not self.central:
            raise ValueError("symbols live in the central extension")
        ct = self.central_term
        s = ct.symbol(sparse(self.J.element(a)), sparse(self.J.element(b)))
        return {self.extra_index(p): c for p, c in s.items()}

    @property
    def sl2_triple(self) -> tuple[int, int, int]:
        """Indices of e(1), h(1), f(1)."""
        u = self.J.unit
        return self.index("e", u), self.index("h", u), self.index("f", u)


def _derivation_action(J: JordanAlgebra, i: int, j: int) -> list[dict[int, Fraction]]:
    """Columns of d_{b_i, b_j}: x -> b_i(b_j x) - (b_i x) b_j."""
    cols = []
    bi, bj = {i: F1}, {j: F1}
    for k in range(J.dim):
        bk = {k: F1}
        out = J.mul_sparse(bi, J.mul_sparse(bj, bk))
        _axpy(out, -1, J.mul_sparse(J.mul_sparse(bi, bk), bj))
        cols.append(out)
    return cols


def _apply_cols(cols: list[Mapping[int, Fraction]], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for k, c in v.items():
        _axpy(out, c, cols[k])
    return out


def build(J: JordanAlgebra, central: bool = True, check: bool = True) -> TKKAlgebra:
    """Bracket tables of sl2^(J) (central=True) or TKK(J) (central=False)."""
    d = J.dim
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    idx = {x: SL2.index(x) * d for x in SL2}

    if central:
        ct = CentralTerm(J)
        extra = ct.dim
        ders = [_derivation_action(J, i, j) for (i, j) in ct.basis_pairs]
        extra_names = [f"{{{J.names[i]},{J.names[j]}}}" for (i, j) in ct.basis_pairs]

        def kappa_term(i, j):
            return ct.symbol_basis(i, j)
    else:
        ct = None
        mats = {}
        vecs = []
        for i in range(d):
            for j in range(i + 1, d):
                D = inner_derivation(J, J.basis_vector(i), J.basis_vector(j))
                mats[(i, j)] = sparse(D.ravel())
                vecs.append(mats[(i, j)])
        inner = Subspace.span(d * d, vecs)
        extra = inner.dim
        ders = []
        for row in inner.sparse_basis():
            cols = [dict() for _ in range(d)]
            for flat, c in row.items():
                r, k = divmod(flat, d)
                cols[k][r] = c
            ders.append(cols)
        extra_names = [f"D{p}" for p in range(extra)]

        def kappa_term(i, j):
            if i == j:
                return {}
            v = mats[(i, j)] if i < j else {k: -c for k, c in mats[(j, i)].items()}
            return {p: c for p, c in enumerate(inner.coordinates(v)) if c}

    base = 3 * d
    # [x(a), y(b)] = [x,y](ab) + kappa(x,y) {a,b}
    for x in SL2:
        for y in SL2:
            for i in range(d):
                for j in range(d):
                    I, Jx = idx[x] + i, idx[y] + j
                    if I >= Jx:
                        continue
                    out: dict[int, Fraction] = {}
                    ab = J.product_of_basis(i, j)
                    for z, c in Sl2Basis.bracket(x, y).items():
                        for k, v in ab.items():
                            out[idx[z] + k] = out.get(idx[z] + k, 0) + c * v
                    kap = Sl2Basis.kappa(x, y)
                    if kap:
                        for p, v in kappa_term(i, j).items():
                            out[base + p] = out.get(base + p, 0) + kap * v
                    br[(I, Jx)] = out
    # [D, x(c)] = x(D c)
    for p in range(extra):
        for x in SL2:
            for k in range(d):
                img = ders[p][k]
                br[(idx[x] + k, base + p)] = {idx[x] + m: -c for m, c in img.items()}
    # degree-zero part
    for p in range(extra):
        for q in range(extra):
            if central:
                c_, d_ = ct.basis_pairs[q]
                out = {}
                dc = ders[p][c_]
                dd = ders[p][d_]
                _axpy(out, 1, ct.symbol(dc, {d_: F1}))
                _axpy(out, 1, ct.symbol({c_: F1}, dd))
            else:
                # commutator of derivations in Inn J coordinates
                comp = np.full((d, d), F0, dtype=object)
                for k in range(d):
                    for r, c in _apply_cols(ders[p], ders[q][k]).items():
                        comp[r, k] += c
                    for r, c in _apply_cols(ders[q], ders[p][k]).items():
                        comp[r, k] -= c
                out = {m: c for m, c in enumerate(inner.coordinates(sparse(comp.ravel()))) if c}
            key = (base + p, base + q)
            if p == q:
                if out:
                    raise ArithmeticError(f"bracket of a degree-zero basis element {p} with itself is nonzero")
                continue
            if p > q:
                prev = br.get((base + q, base + p), {})
                if {base + k: -c for k, c in out.items()} != prev:
                    raise ArithmeticError(f"degree-zero bracket not antisymmetric at ({q}, {p})")
                continue
            br[key] = {base + m: c for m, c in out.items()}
    G = TKKAlgebra(J, central, br, extra_names, extra,
                   central_term=ct, inner=None if central else inner)
    if check:
        bad = G.jacobi_violation()
        if bad is not None:
            raise ArithmeticError(f"Jacobi identity fails on basis triple {bad}")
    return G


@dataclass
class LinearMap:
    matrix: np.ndarray
    source: LieAlgebra
    target: LieAlgebra

    def __call__(self, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for j, c in v.items():
            col = self.matrix[:, j]
            for i in np.flatnonzero(col != 0):
                out[int(i)] = out.get(int(i), 0) + c * col[i]
        return {k: c for k, c in out.items() if c}

    @property
    def rank(self) -> int:
        return rank_of_vectors(sparse(self.matrix[:, j]) for j in range(self.matrix.shape[1]))

    @property
    def kernel_dim(self) -> int:
        return self.matrix.shape[1] - self.rank

    def is_homomorphism(self) -> bool:
        src = self.source
        for i in range(src.dim):
            for j in range(i + 1, src.dim):
                lhs = self(src.bracket_basis(i, j))
                rhs = self.target.bracket(self({i: F1}), self({j: F1}))
                if lhs != rhs:
                    return False
        return True


def central_cover_map(G: TKKAlgebra, target: TKKAlgebra | None = None) -> LinearMap:
    """The epimorphism sl2^(J) -> TKK(J) sending {a,b} to d_{a,b}."""
    if not G.central:
        raise ValueError("source must be the central extension")
    T = target if target is not None else build(G.J, central=False)
    d = G.J.dim
    m = np.full((T.dim, G.dim), F0, dtype=object)
    for i in range(3 * d):
        m[i, i] = F1
    for p, (i, j) in enumerate(G.central_term.basis_pairs):
        D = inner_derivation(G.J, G.J.basis_vector(i), G.J.basis_vector(j))
        for q, c in enumerate(T.inner.coordinates(sparse(D.ravel()))):
            m[3 * d + q, 3 * d + p] = c
    return LinearMap(m, G, T)


def _induced_map(G: TKKAlgebra, H: TKKAlgebra, proj) -> LinearMap:
    """sl2^(J) -> sl2^(J/I) induced by the projection J -> J/I."""
    d, dq = G.J.dim, H.J.dim
    m = np.full((H.dim, G.dim), F0, dtype=object)
    images = [proj({i: F1}) for i in range(d)]
    for xi, x in enumerate(SL2):
        for i in range(d):
            for k in range(dq):
                m[xi * dq + k, xi * d + i] = images[i][k]
    for p, (i, j) in enumerate(G.central_term.basis_pairs):
        s = H.central_term.symbol(sparse(images[i]), sparse(images[j]))
        for q, c in s.items():
            m[3 * dq + q, 3 * d + p] = c
    return LinearMap(m, G, H)


def ideal_subalgebra(G: TKKAlgebra, I: Subspace, check: bool = True) -> Subspace:
    """(sl2 (x) I) + {I, J} inside sl2^(J)."""
    J = G.J
    if not G.central:
        raise ValueError("requires the central extension")
    if I.ambient_dim != J.dim or not is_ideal(J, I):
        raise ValueError("subspace is not an ideal")
    vecs = []
    for v in I.sparse_basis():
        for x in SL2:
            off = SL2.index(x) * J.dim
            vecs.append({off + i: c for i, c in v.items()})
        for j in range(J.dim):
            s = G.central_term.symbol(v, {j: F1})
            if s:
                vecs.append({G.extra_index(p): c for p, c in s.items()})
    sub = Subspace.span(G.dim, vecs)
    if check:
        if not G.is_ideal(sub):
            raise ArithmeticError("ideal subalgebra is not a Lie ideal")
        if 0 < I.dim < J.dim:
            Q, proj = quotient_with_map(J, I)
            H = build(Q, central=True, check=False)
            f = _induced_map(G, H, proj)
            if not all(not f(v) for v in sub.sparse_basis()) or f.kernel_dim != sub.dim:
                raise ArithmeticError("ideal subalgebra differs from the kernel of the induced map")
    return sub
