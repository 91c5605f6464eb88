"""
Generalised Verma modules M(V) = S(G_-2) (x) V, Weyl modules
Delta(V) = M(V)/Z(V), the modules Delta(n) of an augmented algebra, and
their duals.

Level k of M(V) is S^k(f (x) J) (x) V, of h-weight n - 2k. A basis vector
is a pair (S, v) with S a sorted tuple of J-basis indices (the f-factors)
and v an index into V.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping

import numpy as np

from .dominance import JSpace, to_g0_action, trivial_jspace
from .exactlin import Echelon, QuotientMap, Subspace, sparse
from .jordan import JordanAlgebra, power_span_ideal, product_ideal_power
from .tkk import SL2, TKKAlgebra, build, ideal_subalgebra

F0, F1 = Fraction(0), Fraction(1)

Key = tuple[tuple[int, ...], int]


def _acc(out: dict, k, c) -> None:
    v = out.get(k, 0) + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


# ---------------------------------------------------------------------------
# graded modules

@dataclass
class GradedGModule:
    """Weight components with action matrices of the basis of G.

    ``actions[g][w]`` maps the weight-w component to weight w + shift(g),
    where the shift is the short-grading tag of g.
    """

    G: TKKAlgebra
    dims: dict[int, int]
    actions: dict[int, dict[int, np.ndarray]]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def weights(self) -> list[int]:
        return sorted((w for w, d in self.dims.items() if d), reverse=True)

    def shift(self, g: int) -> int:
        return self.G.grading[g]

    def matrix(self, g: int, w: int) -> np.ndarray:
        """Action of basis element g on the weight-w component."""
        tgt = w + self.shift(g)
        m = self.actions.get(g, {}).get(w)
        if m is None:
            return np.full((self.dims.get(tgt, 0), self.dims.get(w, 0)), F0, dtype=object)
        return m

    def element_matrix(self, x: Mapping[int, Fraction], w: int) -> np.ndarray | None:
        """Action of a homogeneous element x on weight w (None if x is not homogeneous)."""
        shifts = {self.shift(g) for g in x}
        if len(shifts) > 1:
            return None
        if not x:
            return None
        s = shifts.pop()
        out = np.full((self.dims.get(w + s, 0), self.dims.get(w, 0)), F0, dtype=object)
        for g, c in x.items():
            out = out + c * self.matrix(g, w)
        return out

    def kills(self, x: Mapping[int, Fraction]) -> bool:
        """Whether x acts by zero on every component."""
        by_shift: dict[int, dict[int, Fraction]] = {}
        for g, c in x.items():
            by_shift.setdefault(self.shift(g), {})[g] = c
        for part in by_shift.values():
            for w in self.dims:
                m = self.element_matrix(part, w)
                if m is not None and m.size and m.any():
                    return False
        return True

    def representation_violation(self) -> tuple[int, int, int] | None:
        """First (g1, g2, w) where [A_g1, A_g2] != A_[g1,g2] on weight w."""
        G = self.G
        ws = [w for w, d in self.dims.items() if d]
        for a in range(G.dim):
            for b in range(a + 1, G.dim):
                br = G.bracket_basis(a, b)
                for w in ws:
                    lhs = (self.matrix(a, w + self.shift(b)).dot(self.matrix(b, w))
                           - self.matrix(b, w + self.shift(a)).dot(self.matrix(a, w)))
                    tgt = w + self.shift(a) + self.shift(b)
                    rhs = np.full((self.dims.get(tgt, 0), self.dims[w]), F0, dtype=object)
                    for g, c in br.items():
                        rhs = rhs + c * self.matrix(g, w)
                    if lhs.shape != rhs.shape:
                        if lhs.size or rhs.size:
                            return a, b, w
                        continue
                    if (lhs != rhs).any():
                        return a, b, w
        return None

    def h_violation(self) -> int | None:
        """Weight w where h(1) does not act by w."""
        _, h1, _ = self.G.sl2_triple
        for w, d in self.dims.items():
            m = self.matrix(h1, w)
            for i in range(d):
                for j in range(d):
                    if m[i, j] != (w if i == j else 0):
                        return w
        return None

    def dual(self) -> "GradedGModule":
        """Contragredient module: weight -w is the dual of weight w."""
        dims = {-w: d for w, d in self.dims.items()}
        actions: dict[int, dict[int, np.ndarray]] = {}
        for g, per in self.actions.items():
            s = self.shift(g)
            actions[g] = {}
            for w, m in per.items():
                # g: X_w -> X_{w+s} dualises to X_{w+s}^* (weight -w-s) -> X_w^* (weight -w)
                actions[g][-(w + s)] = -m.T
        return GradedGModule(self.G, dims, actions)

    def same_as(self, other: "GradedGModule") -> bool:
        if {w: d for w, d in self.dims.items() if d} != {w: d for w, d in other.dims.items() if d}:
            return False
        for g in range(self.G.dim):
            for w, d in self.dims.items():
                if d and (self.matrix(g, w) != other.matrix(g, w)).any():
                    return False
        return True

    def e_invariants(self) -> dict[int, int]:
        """Dimension per weight of the vectors killed by every e(b_i)."""
        J = self.G.J
        es = [self.G.index("e", i) for i in range(J.dim)]
        out = {}
        for w, d in self.dims.items():
            if not d:
                continue
            rows = []
            for g in es:
                m = self.matrix(g, w)
                rows.extend(sparse(m[r]) for r in range(m.shape[0]))
            ech = Echelon()
            r = ech.extend(rows)
            if d - r:
                out[w] = d - r
        return out

    def to_dict(self) -> dict:
        return {"dims": {str(w): self.dims[w] for w in sorted(self.dims, reverse=True)},
                "total_dim": self.total_dim}


# ---------------------------------------------------------------------------
# Verma modules

class VermaModule:
    """M(V) for a J-space V of integer level n, built level by level."""

    def __init__(self, V: JSpace, G: TKKAlgebra | None = None):
        self.V = V
        self.n = V.integer_level()
        self.J = V.J
        self.G = G if G is not None else build(V.J, central=True, check=False)
        if not self.G.central:
            raise ValueError("requires the central extension")
        act = to_g0_action(V, self.G.central_term)
        d = self.J.dim
        self.g0: dict[int, np.ndarray] = {}
        for i in range(d):
            self.g0[self.G.index("h", i)] = act.h[i]
        for p in range(self.G.extra_dim):
            self.g0[self.G.extra_index(p)] = act.central[p]
        self._fidx = {self.G.index("f", i): i for i in range(d)}
        self._memo: dict[tuple[int, Key], dict[Key, Fraction]] = {}
        self._bases: dict[int, list[Key]] = {}

    def kind(self, g: int) -> str:
        return SL2[g // self.J.dim] if g < 3 * self.J.dim else "c"

    def basis(self, k: int) -> list[Key]:
        """Basis of level k (weight n - 2k)."""
        if k not in self._bases:
            self._bases[k] = [(S, v) for S in combinations_with_replacement(range(self.J.dim), k)
                              for v in range(self.V.dim)]
        return self._bases[k]

    def index(self, k: int) -> dict[Key, int]:
        return {b: i for i, b in enumerate(self.basis(k))}

    def _g0_on(self, g: int, key: Key) -> dict[Key, Fraction]:
        S, v = key
        out: dict[Key, Fraction] = {}
        for pos, s in enumerate(S):
            br = self.G.bracket_basis(g, self.G.index("f", s))
            for t, c in br.items():
                m = self._fidx[t]
                _acc(out, (tuple(sorted(S[:pos] + (m,) + S[pos + 1:])), v), c)
        col = self.g0[g][:, v]
        for w in np.flatnonzero(col != 0):
            _acc(out, (S, int(w)), col[w])
        return out

    def act_basis(self, g: int, key: Key) -> dict[Key, Fraction]:
        """g applied to a basis vector of M(V)."""
        mk = (g, key)
        hit = self._memo.get(mk)
        if hit is not None:
            return hit
        kind = self.kind(g)
        S, v = key
        if kind == "f":
            m = self._fidx[g]
            out = {(tuple(sorted(S + (m,))), v): F1}
        elif kind in ("h", "c"):
            out = self._g0_on(g, key)
        else:
            out = {}
            if S:
                s1, rest = S[0], (S[1:], v)
                # e f(s1) X = [e, f(s1)] X + f(s1) (e X)
                for t, c in self.G.bracket_basis(g, self.G.index("f", s1)).items():
                    for k2, c2 in self._g0_on(t, rest).items():
                        _acc(out, k2, c * c2)
                for (S2, v2), c in self.act_basis(g, rest).items():
                    _acc(out, (tuple(sorted(S2 + (s1,))), v2), c)
        self._memo[mk] = out
        return out

    def act(self, g: int, vec: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
        out: dict[Key, Fraction] = {}
        for key, c in vec.items():
            for k2, c2 in self.act_basis(g, key).items():
                _acc(out, k2, c * c2)
        return out

    def level_shift(self, g: int) -> int:
        """Change of level k under g (f raises k, e lowers it)."""
        return {"f": 1, "e": -1}.get(self.kind(g), 0)

    def matrix(self, g: int, k: int) -> np.ndarray:
        tgt = k + self.level_shift(g)
        src = self.basis(k)
        rows = self.index(tgt) if tgt >= 0 else {}
        m = np.full((len(rows), len(src)), F0, dtype=object)
        for j, key in enumerate(src):
            for k2, c in self.act_basis(g, key).items():
                m[rows[k2], j] = c
        return m


def verma_level(V: JSpace, k: int, G: TKKAlgebra | None = None) -> tuple[list[Key], dict[int, np.ndarray]]:
    """Basis of M_{n-2k}(V) and the action matrices of all generators on it."""
    M = VermaModule(V, G)
    return M.basis(k), {g: M.matrix(g, k) for g in range(M.G.dim)}


# ---------------------------------------------------------------------------
# Weyl modules

def _vec_of(key_index: Mapping[Key, int], vec: Mapping[Key, Fraction]) -> dict[int, Fraction]:
    return {key_index[k]: c for k, c in vec.items()}


@dataclass
class WeylModule:
    module: GradedGModule
    top: JSpace
    level: int
    verma: VermaModule
    kernels: dict[int, Subspace]
    info: dict = field(default_factory=dict)

    @property
    def dims(self) -> dict[int, int]:
        return self.module.dims

    @property
    def total_dim(self) -> int:
        return self.module.total_dim

    def top_injective(self) -> bool:
        """Whether V -> Delta(V) is injective (Z vanishes at the top level)."""
        return self.kernels[0].dim == 0

    def to_dict(self) -> dict:
        out = self.module.to_dict()
        out["level"] = self.level
        out["top_dim"] = self.top.dim
        out["kernel_dims"] = {str(self.level - 2 * k): z.dim for k, z in sorted(self.kernels.items())}
        return out


def top_kernel(V: JSpace, G: TKKAlgebra | None = None) -> Subspace:
    """Z_n(V) = e(1)^{n+1} M_{-n-2}(V) inside the top level V."""
    M = VermaModule(V, G)
    return _kernels(M, only_top=True)[0]


def _kernels(M: VermaModule, only_top: bool = False) -> dict[int, Subspace]:
    n = M.n
    e1, _, _ = M.G.sl2_triple
    bottom = n + 1
    cur = [{key: F1} for key in M.basis(bottom)]
    kernels: dict[int, Subspace] = {}
    for k in range(bottom - 1, -1, -1):
        imgs = [M.act(e1, v) for v in cur]
        idx = M.index(k)
        ech = Echelon()
        nxt = []
        for img in imgs:
            if img and ech.add(_vec_of(idx, img)):
                nxt.append(img)
        cur = nxt
        if not only_top or k == 0:
            kernels[k] = Subspace.from_echelon(len(idx), ech)
    return kernels


def weyl_module(V: JSpace, G: TKKAlgebra | None = None, check: bool = False) -> WeylModule:
    """Delta(V) = M(V)/Z(V) with Z_m = e(1)^{j0} M_{m - 2 j0}, j0 = (m + n + 2)/2."""
    M = VermaModule(V, G)
    n = M.n
    G = M.G
    kernels = _kernels(M)
    qmaps = {k: QuotientMap(kernels[k]) for k in kernels}
    comp = {k: kernels[k].complement for k in kernels}
    dims = {n - 2 * k: qmaps[k].dim for k in range(n + 1)}
    info = {}
    if check:
        info["submodule"] = _check_submodule(M, kernels)
        if not info["submodule"]:
            raise ArithmeticError("Z(V) is not a submodule")
    actions: dict[int, dict[int, np.ndarray]] = {}
    for g in range(G.dim):
        per = {}
        shift = M.level_shift(g)
        for k in range(n + 1):
            tgt = k + shift
            src_basis = M.basis(k)
            if not dims[n - 2 * k]:
                continue
            if not 0 <= tgt <= n:
                continue
            tidx = M.index(tgt)
            m = np.full((qmaps[tgt].dim, qmaps[k].dim), F0, dtype=object)
            for j, c in enumerate(comp[k]):
                img = M.act_basis(g, src_basis[c])
                for r, x in qmaps[tgt](_vec_of(tidx, img)).items():
                    m[r, j] = x
            per[n - 2 * k] = m
        actions[g] = per
    module = GradedGModule(G, dims, actions)
    return WeylModule(module, V, n, M, kernels, info)


def _check_submodule(M: VermaModule, kernels: dict[int, Subspace]) -> bool:
    """Z is stable under every generator (levels beyond n+1 are all of M)."""
    n = M.n
    for k, Z in kernels.items():
        src = M.basis(k)
        for row in Z.sparse_basis():
            vec = {src[i]: c for i, c in row.items()}
            for g in range(M.G.dim):
                tgt = k + M.level_shift(g)
                if tgt > n:
                    continue
                img = M.act(g, vec)
                if not kernels[tgt].contains(_vec_of(M.index(tgt), img)):
                    return False
    return True


def weyl_delta_n(J: JordanAlgebra, n: int, G: TKKAlgebra | None = None, check: bool = False) -> WeylModule:
    """Delta(n) = Delta(K_n) for an augmented algebra J."""
    return weyl_module(trivial_jspace(J, n), G, check)


@dataclass
class SmoothnessReport:
    level: int
    power_ideal_dim: int
    top_annihilated: bool
    N: int | None

    def to_dict(self) -> dict:
        return {"level": self.level, "power_ideal_dim": self.power_ideal_dim,
                "top_annihilated": self.top_annihilated, "N": self.N}


def smoothness_witness(W: WeylModule) -> SmoothnessReport:
    """Check f(J+^(n)) v = 0 on the top vector and find the least N with
    sl2^(J+^N) acting by zero on W."""
    G = W.module.G
    J = G.J
    aug = J.augmentation
    if aug is None:
        raise ValueError("requires an augmented algebra")
    n = W.level
    P = power_span_ideal(J, aug, max(n, 1))
    mod = W.module
    ok = True
    if mod.dims.get(n):
        for x in P.sparse_basis():
            fx = {G.index("f", i): c for i, c in x.items()}
            m = mod.element_matrix(fx, n)
            if m is not None and m.size and m.any():
                ok = False
    N = None
    prev = None
    for cand in range(1, J.dim + 2):
        I = product_ideal_power(J, aug, cand)
        sub = ideal_subalgebra(G, I, check=False)
        if all(mod.kills(v) for v in sub.sparse_basis()):
            N = cand
            break
        if prev is not None and prev == I:
            break
        prev = I
    return SmoothnessReport(n, P.dim, ok, N)


def standard_module(W: WeylModule) -> GradedGModule:
    """nabla = Delta^*; the socle check is ``e_invariants`` of the result."""
    return W.module.dual()
