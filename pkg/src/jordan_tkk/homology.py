"""
Chevalley-Eilenberg homology of graded Lie algebras, relative homology
modulo sl2, and sl2-isotypic decompositions.

Chains of Lambda^k(g) (x) M are split into blocks by internal degree d and
total h-weight w before any rank is taken. Coefficient modules are simple
sl2-modules L(n) on which g acts trivially (n = 0 gives the field).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .dominance import ResourceError
from .exactlin import Echelon, kernel_basis, SparseMatrix
from .jordan import JordanAlgebra, power_span_ideal
from .lie import LieAlgebra, _axpy
from .tkk import TKKAlgebra, build

F1 = Fraction(1)

Chain = tuple[tuple[int, ...], int]


class BlockTooLarge(ResourceError):
    """A chain block exceeds the configured size limit."""

    def __init__(self, k: int, d: int, w: int, size: int, limit: int):
        super().__init__(f"chain block k={k} d={d} w={w} has {size} basis vectors (limit {limit})")
        self.block = {"k": k, "d": d, "w": w, "size": size, "limit": limit}


# ---------------------------------------------------------------------------
# graded Lie algebras

@dataclass
class GradedLieAlgebra:
    """Lie algebra with an internal degree and an h-weight per basis vector.

    ``sl2`` holds the action of a distinguished sl2-triple as maps
    basis index -> vector; for an algebra containing the triple this is ad,
    for a positive part it is the restricted adjoint action.
    """

    lie: LieAlgebra
    degree: tuple[int, ...]
    weight: tuple[int, ...]
    sl2: dict[str, list[dict[int, Fraction]]] | None = None
    triple: tuple[int, int, int] | None = None

    @property
    def dim(self) -> int:
        return self.lie.dim

    @property
    def names(self) -> tuple[str, ...]:
        return self.lie.names

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return self.lie.bracket_basis(i, j)

    def grading_violation(self) -> tuple[int, int] | None:
        for (i, j), v in self.lie.structure_items():
            for k in v:
                if self.degree[k] != self.degree[i] + self.degree[j] or \
                        self.weight[k] != self.weight[i] + self.weight[j]:
                    return i, j
        return None

    def weight_violation(self) -> int | None:
        """Basis index where h does not act by its weight tag."""
        if self.sl2 is None:
            return None
        for i, v in enumerate(self.sl2["h"]):
            if v != ({i: Fraction(self.weight[i])} if self.weight[i] else {}):
                return i
        return None

    def jacobi_violation(self):
        return self.lie.jacobi_violation()


def graded_from_tkk(G: TKKAlgebra) -> GradedLieAlgebra:
    """The whole of sl2^(J) (or TKK(J)) with its sl2-triple."""
    J = G.J
    if J.grading is None:
        raise ValueError("requires a graded algebra")
    d = J.dim
    deg = [J.grading[i] for _ in range(3) for i in range(d)] + _extra_degrees(G)
    e1, h1, f1 = G.sl2_triple
    sl2 = {x: [dict(G.bracket_basis(t, j)) for j in range(G.dim)]
           for x, t in zip("ehf", (e1, h1, f1))}
    return GradedLieAlgebra(G, tuple(deg), tuple(G.grading), sl2, (e1, h1, f1))


def _extra_degrees(G: TKKAlgebra) -> list[int]:
    J = G.J
    g = J.grading
    if G.central:
        return [g[i] + g[j] for (i, j) in G.central_term.basis_pairs]
    out = []
    d = J.dim
    for p in range(G.extra_dim):
        # derivation p maps x_k to sum_r c x_r; every entry shifts degree equally
        shift = None
        for k in range(d):
            v = G.bracket_basis(G.extra_index(p), G.index("h", k))
            for r in v:
                shift = g[r - G.index("h", 0)] - g[k]
                break
            if shift is not None:
                break
        if shift is None:
            raise ValueError("zero derivation in basis")
        out.append(shift)
    return out


def positive_part(G: TKKAlgebra) -> GradedLieAlgebra:
    """u = sl2^(J+): every basis vector except e(1), h(1), f(1).

    The sl2-action is the adjoint action of the triple of G restricted to u.
    """
    J = G.J
    aug = J.augmentation_indices
    if aug is None or J.unit in aug:
        raise ValueError("requires an augmentation spanned by basis vectors")
    whole = graded_from_tkk(G)
    drop = set(G.sl2_triple)
    keep = [i for i in range(G.dim) if i not in drop]
    pos = {g: i for i, g in enumerate(keep)}

    def restrict(v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        if any(k in drop for k in v):
            raise ArithmeticError("bracket leaves the positive part")
        return {pos[k]: c for k, c in v.items()}

    br = {}
    for (i, j), v in G.structure_items():
        if i in pos and j in pos:
            br[(pos[i], pos[j])] = restrict(v)
    names = [G.names[i] for i in keep]
    lie = LieAlgebra(len(keep), br, names, [G.grading[i] for i in keep])
    sl2 = {x: [restrict(whole.sl2[x][g]) for g in keep] for x in "ehf"}
    return GradedLieAlgebra(lie, tuple(whole.degree[g] for g in keep),
                            tuple(G.grading[g] for g in keep), sl2, None)


def positive_part_of(J: JordanAlgebra, central: bool = True) -> GradedLieAlgebra:
    return positive_part(build(J, central=central, check=False))


def abelian(dim: int, degree: Sequence[int] | None = None) -> GradedLieAlgebra:
    degree = tuple(degree) if degree is not None else (1,) * dim
    return GradedLieAlgebra(LieAlgebra(dim, {}), degree, (0,) * dim, None, None)


# ---------------------------------------------------------------------------
# coefficient modules

@dataclass(frozen=True)
class SimpleModule:
    """L(n) with basis v_0..v_n, f v_j = v_{j+1}, h v_j = (n-2j) v_j,
    e v_j = j (n-j+1) v_{j-1}; the Lie algebra acts trivially."""

    n: int = 0

    @property
    def dim(self) -> int:
        return self.n + 1

    def weight(self, j: int) -> int:
        return self.n - 2 * j

    def e(self, j: int) -> dict[int, Fraction]:
        return {j - 1: Fraction(j * (self.n - j + 1))} if j > 0 else {}

    def f(self, j: int) -> dict[int, Fraction]:
        return {j + 1: F1} if j < self.n else {}


TRIVIAL = SimpleModule(0)


def parse_coefficients(spec: str | int | SimpleModule | None) -> SimpleModule:
    """Accept None, 'K', an integer n or 'L(n)'."""
    if spec is None or isinstance(spec, SimpleModule):
        return spec or TRIVIAL
    if isinstance(spec, int):
        return SimpleModule(spec)
    s = spec.strip()
    if s in ("K", "k", "trivial"):
        return TRIVIAL
    if s.startswith("L(") and s.endswith(")"):
        return SimpleModule(int(s[2:-1]))
    return SimpleModule(int(s))


# ---------------------------------------------------------------------------
# chains

def _insert(rest: tuple[int, ...], z: int) -> tuple[int, tuple[int, ...]] | None:
    """Sign and sorted tuple of z ^ rest, or None when z already occurs."""
    lo = 0
    for x in rest:
        if x == z:
            return None
        if x < z:
            lo += 1
    return (-1) ** lo, rest[:lo] + (z,) + rest[lo:]


def _subsets_by_degree(g: GradedLieAlgebra, k: int, d: int) -> list[tuple[int, ...]]:
    if any(x < 0 for x in g.degree):
        raise ValueError("internal degrees must be nonnegative")
    order = sorted(range(g.dim))
    out: list[tuple[int, ...]] = []

    def rec(start: int, left: int, budget: int, acc: tuple[int, ...]):
        if left == 0:
            if budget == 0:
                out.append(acc)
            return
        for p in range(start, len(order) - left + 1):
            i = order[p]
            di = g.degree[i]
            if di <= budget:
                rec(p + 1, left - 1, budget - di, acc + (i,))

    rec(0, k, d, ())
    return out


class ChainComplex:
    """Blocks of Lambda^k(g) (x) M keyed by (k, d, w) with CE boundaries."""

    def __init__(self, g: GradedLieAlgebra, M: SimpleModule = TRIVIAL, max_block: int = 20000):
        self.g = g
        self.M = M
        self.max_block = max_block
        self._blocks: dict[tuple[int, int, int], list[Chain]] = {}
        self._by_kd: dict[tuple[int, int], dict[int, list[Chain]]] = {}
        self._bd_memo: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}

    def _split(self, k: int, d: int) -> dict[int, list[Chain]]:
        key = (k, d)
        if key not in self._by_kd:
            per: dict[int, list[Chain]] = {}
            for S in _subsets_by_degree(self.g, k, d):
                wS = sum(self.g.weight[i] for i in S)
                for j in range(self.M.dim):
                    per.setdefault(wS + self.M.weight(j), []).append((S, j))
            self._by_kd[key] = per
        return self._by_kd[key]

    def block(self, k: int, d: int, w: int) -> list[Chain]:
        if k < 0:
            return []
        b = self._split(k, d).get(w, [])
        if len(b) > self.max_block:
            raise BlockTooLarge(k, d, w, len(b), self.max_block)
        return b

    def weights(self, k: int, d: int) -> list[int]:
        return sorted(self._split(k, d))

    def _wedge_boundary(self, S: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
        hit = self._bd_memo.get(S)
        if hit is not None:
            return hit
        out: dict[tuple[int, ...], Fraction] = {}
        k = len(S)
        for a in range(k):
            for b in range(a + 1, k):
                br = self.g.bracket_basis(S[a], S[b])
                if not br:
                    continue
                rest = S[:a] + S[a + 1:b] + S[b + 1:]
                sgn = (-1) ** (a + b)
                for z, c in br.items():
                    ins = _insert(rest, z)
                    if ins is not None:
                        s2, T = ins
                        _axpy(out, sgn * s2, {T: c})
        self._bd_memo[S] = out
        return out

    def boundary(self, chain: Chain) -> dict[Chain, Fraction]:
        S, j = chain
        return {(T, j): c for T, c in self._wedge_boundary(S).items()}

    def e_action(self, chain: Chain) -> dict[Chain, Fraction]:
        """Diagonal action of e on Lambda(g) (x) M."""
        if self.g.sl2 is None:
            raise ValueError("no sl2-action recorded")
        S, j = chain
        out: dict[Chain, Fraction] = {}
        emap = self.g.sl2["e"]
        for i, x in enumerate(S):
            rest = S[:i] + S[i + 1:]
            for z, c in emap[x].items():
                ins = _insert(rest, z)
                if ins is not None:
                    s2, T = ins
                    _axpy(out, (-1) ** i * s2 * c, {(T, j): 1})
        for j2, c in self.M.e(j).items():
            _axpy(out, c, {(S, j2): 1})
        return out

    def boundary_rows(self, k: int, d: int, w: int, src: Sequence[Mapping[Chain, Fraction]] | None = None):
        """Images under the boundary of the block basis (or of given chains),
        as sparse rows in the coordinates of block (k-1, d, w)."""
        tgt = {c: i for i, c in enumerate(self.block(k - 1, d, w))}
        if src is None:
            src = [{c: F1} for c in self.block(k, d, w)]
        rows = []
        for vec in src:
            img: dict[int, Fraction] = {}
            for ch, c in vec.items():
                for t, x in self.boundary(ch).items():
                    _axpy(img, c * x, {tgt[t]: 1})
            rows.append(img)
        return rows

    def boundary_matrix(self, k: int, d: int, w: int) -> SparseMatrix:
        """Matrix of the boundary (k, d, w) -> (k-1, d, w); columns are images."""
        rows = self.boundary_rows(k, d, w)
        return SparseMatrix.from_rows(rows, len(self.block(k - 1, d, w))).T

    def square_violation(self, k: int, d: int, w: int) -> bool:
        """Whether the boundary squared is nonzero on block (k, d, w)."""
        for ch in self.block(k, d, w):
            total: dict[Chain, Fraction] = {}
            for t, c in self.boundary(ch).items():
                for t2, c2 in self.boundary(t).items():
                    _axpy(total, c * c2, {t2: 1})
            if total:
                return True
        return False

    def boundary_rank(self, k: int, d: int, w: int) -> int:
        if k <= 0:
            return 0
        ech = Echelon()
        return ech.extend(r for r in self.boundary_rows(k, d, w) if r)

    def homology_dim(self, k: int, d: int, w: int) -> int:
        n = len(self.block(k, d, w))
        if not n:
            return 0
        return n - self.boundary_rank(k, d, w) - self.boundary_rank(k + 1, d, w)

    def euler_check(self, d: int, w: int, top: int) -> bool:
        """Alternating sums of chain and homology dims agree through degree ``top``
        (valid when the block at top+1 vanishes)."""
        chains = sum((-1) ** k * len(self.block(k, d, w)) for k in range(top + 1))
        hom = sum((-1) ** k * self.homology_dim(k, d, w) for k in range(top + 1))
        return chains == hom

    # -- relative chains ----------------------------------------------------

    def invariant_basis(self, k: int, d: int) -> list[dict[Chain, Fraction]]:
        """Basis of weight-0 vectors killed by e in block (k, d, 0)."""
        src = self.block(k, d, 0)
        if not src:
            return []
        tgt = {c: i for i, c in enumerate(self.block(k, d, 2))}
        cols = []
        for ch in src:
            cols.append({tgt[t]: c for t, c in self.e_action(ch).items()})
        # kernel of the map whose j-th column is cols[j]
        m = SparseMatrix.from_rows(cols, len(tgt)).T
        ker = kernel_basis(m)
        return [{src[i]: c for i, c in v.items()} for v in ker.sparse_basis()]


def relative_chains(g: GradedLieAlgebra, M: SimpleModule = TRIVIAL, max_degree: int = 3,
                    max_k: int = 3, max_block: int = 20000) -> dict[tuple[int, int], int]:
    """Dimensions of the relative chain blocks (k, d) for g = sl2 |x u given by its
    positive part u: the sl2-invariants of Lambda^k(u) (x) M."""
    cx = ChainComplex(g, M, max_block)
    return {(k, d): len(cx.invariant_basis(k, d))
            for k in range(max_k + 1) for d in range(max_degree + 1)}


# ---------------------------------------------------------------------------
# homology

def ce_homology(g: GradedLieAlgebra, M: SimpleModule | str | None = None, k: int = 1,
                max_degree: int | None = None, max_block: int = 20000,
                complex_: ChainComplex | None = None) -> dict[tuple[int, int], int]:
    """Nonzero dims of H_k(g, M) by (internal degree, h-weight)."""
    M = parse_coefficients(M)
    if max_degree is None:
        max_degree = k * max(g.degree, default=0)
    cx = complex_ or ChainComplex(g, M, max_block)
    out = {}
    for d in range(max_degree + 1):
        for w in cx.weights(k, d):
            h = cx.homology_dim(k, d, w)
            if h:
                out[(d, w)] = h
    return out


def relative_homology_dim(cx: ChainComplex, k: int, d: int) -> int:
    inv_k = cx.invariant_basis(k, d)
    if not inv_k:
        return 0
    r_k = Echelon().extend(r for r in cx.boundary_rows(k, d, 0, inv_k) if r) if k > 0 else 0
    inv_up = cx.invariant_basis(k + 1, d)
    r_up = Echelon().extend(r for r in cx.boundary_rows(k + 1, d, 0, inv_up) if r)
    return len(inv_k) - r_k - r_up


def relative_homology(u: GradedLieAlgebra, M: SimpleModule | str | None = None, k: int = 1,
                      max_degree: int = 3, max_block: int = 20000) -> dict[int, int]:
    """dim H_k(sl2 |x u, sl2, M) per internal degree d <= max_degree.

    u must carry its sl2-action; relative chains are the sl2-invariants of
    Lambda^k(u) (x) M, computed as weight 0 intersected with ker e.
    """
    M = parse_coefficients(M)
    cx = ChainComplex(u, M, max_block)
    return {d: relative_homology_dim(cx, k, d) for d in range(max_degree + 1)}


def isotypic_decomposition(dims_by_weight: Mapping[int, int]) -> dict[int, int]:
    """Multiplicities of L(w) from weight-space dimensions."""
    dims = {w: v for w, v in dims_by_weight.items() if v}
    for w, v in dims.items():
        if dims.get(-w, 0) != v:
            raise ValueError(f"weight dims not symmetric at {w}")
    out = {}
    for parity in {w % 2 for w in dims}:
        top = max(w for w in dims if w % 2 == parity)
        for w in range(parity, top + 1, 2):
            m = dims.get(w, 0) - dims.get(w + 2, 0)
            if m < 0:
                raise ValueError(f"negative multiplicity at weight {w}: inconsistent input")
            if m:
                out[w] = m
    return dict(sorted(out.items()))


def by_weight(table: Mapping[tuple[int, int], int], degree: int | None = None) -> dict[int, int]:
    """Sum a (d, w) table over degrees (or restrict to one degree)."""
    out: dict[int, int] = {}
    for (d, w), v in table.items():
        if degree is None or d == degree:
            out[w] = out.get(w, 0) + v
    return out


def by_degree(table: Mapping[tuple[int, int], int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for (d, _), v in table.items():
        out[d] = out.get(d, 0) + v
    return out


# ---------------------------------------------------------------------------
# top cycles e(a_1) ^ ... ^ e(a_k)

@dataclass
class TopCycleReport:
    k: int
    samples: int
    power_relations: bool
    ideal_relations: bool
    top_dims: dict[int, int]
    bound: int
    seed: int

    @property
    def top_dim(self) -> int:
        return sum(self.top_dims.values())

    @property
    def ok(self) -> bool:
        return self.power_relations and self.ideal_relations and self.top_dim <= self.bound

    def to_dict(self) -> dict:
        return {"k": self.k, "samples": self.samples, "seed": self.seed,
                "power_relations": self.power_relations, "ideal_relations": self.ideal_relations,
                "top_dims": {str(d): v for d, v in sorted(self.top_dims.items())},
                "top_dim": self.top_dim, "bound": self.bound, "ok": self.ok}


class _TopCycles:
    """Boundary images in weight 2k, one echelon per internal degree."""

    def __init__(self, G: TKKAlgebra, u: GradedLieAlgebra, k: int, max_block: int):
        self.G, self.u, self.k = G, u, k
        self.cx = ChainComplex(u, TRIVIAL, max_block)
        J = G.J
        self.aug = J.augmentation_indices
        gpos = [i for i in range(G.dim) if i not in set(G.sl2_triple)]
        upos = {g: i for i, g in enumerate(gpos)}
        self.e_of = {b: upos[G.index("e", b)] for b in self.aug}
        self._ech: dict[int, Echelon] = {}
        self._col: dict[int, dict[Chain, int]] = {}

    def _image(self, d: int) -> tuple[Echelon, dict[Chain, int]]:
        if d not in self._ech:
            w = 2 * self.k
            col = {c: i for i, c in enumerate(self.cx.block(self.k, d, w))}
            ech = Echelon()
            ech.extend(r for r in self.cx.boundary_rows(self.k + 1, d, w) if r)
            self._ech[d], self._col[d] = ech, col
        return self._ech[d], self._col[d]

    def top_dim(self, d: int) -> int:
        ech, col = self._image(d)
        return len(col) - len(ech)

    def chain(self, factors: Sequence[Mapping[int, Fraction]]) -> dict[Chain, Fraction]:
        """e(a_1) ^ ... ^ e(a_k) expanded in wedge coordinates."""
        out: dict[Chain, Fraction] = {(): F1}
        for a in factors:
            nxt: dict[Chain, Fraction] = {}
            for S, c in out.items():
                for b, x in a.items():
                    ins = _insert(S, self.e_of[b])
                    if ins is not None:
                        s, T = ins
                        # append on the right: sign of moving z past all of S
                        s = s * (-1) ** len(S)
                        _axpy(nxt, c * x * s, {T: 1})
            out = nxt
        return {(S, 0): c for S, c in out.items()}

    def is_boundary(self, chain: Mapping[Chain, Fraction]) -> bool:
        per: dict[int, dict[int, Fraction]] = {}
        for ch, c in chain.items():
            d = sum(self.u.degree[i] for i in ch[0])
            ech, col = self._image(d)
            per.setdefault(d, {})[col[ch]] = c
        return all(self._image(d)[0].contains(v) for d, v in per.items())


def top_cycle_relations(J: JordanAlgebra, k: int, samples: int = 3, seed: int = 0,
                        max_block: int = 20000) -> TopCycleReport:
    """Check [a^{2k} ^ tau] = 0 in H_k(sl2^(J+))_{2k} for sampled a in J+ and all
    basis wedges tau, the stronger factorisation through Lambda^k(J+/J+^(2k)),
    and the resulting dimension bound."""
    if k < 1:
        raise ValueError("k must be positive")
    G = build(J, central=True, check=False)
    u = positive_part(G)
    tc = _TopCycles(G, u, k, max_block)
    aug = tc.aug
    rng = random.Random(seed)
    unit_vecs = [{b: F1} for b in aug]
    taus = list(combinations(range(len(aug)), k - 1))

    def sparse_elem(arr) -> dict[int, Fraction]:
        return {i: Fraction(c) for i, c in enumerate(arr) if c and i in set(aug)}

    power_ok = True
    for _ in range(samples):
        a = [0] * J.dim
        for b in aug:
            a[b] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        p = sparse_elem(J.power(a, 2 * k))
        for tau in taus:
            ch = tc.chain([p] + [unit_vecs[t] for t in tau])
            if ch and not tc.is_boundary(ch):
                power_ok = False
    P = power_span_ideal(J, J.augmentation, 2 * k)
    ideal_ok = True
    for p in P.sparse_basis():
        for tau in taus:
            ch = tc.chain([dict(p)] + [unit_vecs[t] for t in tau])
            if ch and not tc.is_boundary(ch):
                ideal_ok = False
    degs = sorted({sum(c) for c in combinations([J.grading[b] for b in aug], k)}) \
        if J.grading is not None else []
    top = {}
    for d in degs:
        t = tc.top_dim(d)
        if t:
            top[d] = t
    bound = comb(len(aug) - P.dim, k)
    return TopCycleReport(k, samples, power_ok, ideal_ok, top, bound, seed)
