"""
J-spaces, the partition-sum dominance criterion, tensor products, and
degree-truncated presentations of the level-n enveloping algebras U_n(J).

A J-space is a linear map rho: J -> End(V) with rho(1) scalar (the level)
satisfying

* (J1) [rho(x), rho(yz)] + [rho(y), rho(zx)] + [rho(z), rho(xy)] = 0,
* (J2) [[rho(a), rho(b)], rho(c)] = 4 rho(d_{a,b} c),

with d_{a,b}(c) = a(bc) - (ac)b.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .exactlin import Echelon, fits_int64, integerize, sparse, to_rational
from .jordan import JordanAlgebra
from .partitions import ordered_set_partitions, signed_class_sizes
from .tkk import CentralTerm, build

F0, F1 = Fraction(0), Fraction(1)


def _mat(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    return np.vectorize(to_rational, otypes=[object])(a) if a.size else a


def _eye(n: int) -> np.ndarray:
    m = np.full((n, n), F0, dtype=object)
    for i in range(n):
        m[i, i] = F1
    return m


def _zero_mat(n: int) -> np.ndarray:
    return np.full((n, n), F0, dtype=object)


class ResourceError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# J-spaces

@dataclass(frozen=True, eq=False)
class JSpace:
    J: JordanAlgebra
    rho: tuple[np.ndarray, ...]
    level: Fraction

    @property
    def dim(self) -> int:
        return self.rho[0].shape[0] if self.rho else 0

    def act(self, a) -> np.ndarray:
        """rho(a) for an element a of J."""
        a = self.J.element(a)
        out = _zero_mat(self.dim)
        for i in np.flatnonzero(a != 0):
            out = out + a[i] * self.rho[i]
        return out

    def integer_level(self) -> int:
        n = self.level
        if n.denominator != 1 or n < 0:
            raise ValueError("level must be a nonnegative integer")
        return int(n)


def _integer_data(J: JordanAlgebra, rho: Sequence[np.ndarray]):
    """(K, c, R, q): J.table = K/c and rho_i = R_i/q with integer arrays."""
    K, c = integerize(J.table)
    R, q = integerize(np.stack(rho)) if rho[0].size else (np.zeros((len(rho), 0, 0), dtype=np.int64), 1)
    return K, c, R, q


def _maybe_object(bound: int, *arrays):
    if fits_int64(bound) and all(a.dtype != object for a in arrays):
        return arrays
    return tuple(a.astype(object) for a in arrays)


def axiom_violation(J: JordanAlgebra, rho: Sequence[np.ndarray]) -> str | None:
    """Describe the first failure of (J1)/(J2) or the scalar unit, else None."""
    d = J.dim
    n = rho[0].shape[0]
    u = rho[J.unit]
    lev = u[0, 0] if n else F0
    if any(u[i, j] != (lev if i == j else 0) for i in range(n) for j in range(n)):
        return "rho(1) is not a scalar"
    if n == 0:
        return None
    K, c, R, q = _integer_data(J, rho)
    kb = int(np.max(np.abs(K))) if K.size else 0
    rb = int(np.max(np.abs(R))) if R.size else 0
    # (J1): homogeneous of degree 2 in R and 1 in K
    K1, R1 = _maybe_object(4 * 3 * kb * rb * rb * d * d * n + 1, K, R)
    RP = np.einsum("yzk,kab->yzab", K1, R1)
    for x in range(d):
        for y in range(x, d):
            for z in range(y, d):
                tot = (R1[x] @ RP[y, z] - RP[y, z] @ R1[x]
                       + R1[y] @ RP[z, x] - RP[z, x] @ R1[y]
                       + R1[z] @ RP[x, y] - RP[x, y] @ R1[z])
                if tot.any():
                    return f"(J1) fails on basis triple ({x}, {y}, {z})"
    # (J2): c^2 [[R_a, R_b], R_c] = 4 q^2 sum_k D'_abc^k R_k with D' = c^2 d
    bound = 4 * (c * c * rb**3 * n * n + q * q * kb * kb * d * d * rb * d) * 4 + 1
    K2, R2 = _maybe_object(bound, K, R)
    D = (np.einsum("bcm,amk->abck", K2, K2) - np.einsum("acm,mbk->abck", K2, K2))
    for a in range(d):
        for b in range(a + 1, d):
            com = R2[a] @ R2[b] - R2[b] @ R2[a]
            for cc in range(d):
                lhs = (com @ R2[cc] - R2[cc] @ com) * (c * c)
                rhs = np.tensordot(D[a, b, cc], R2, axes=1) * (4 * q * q)
                if (lhs != rhs).any():
                    return f"(J2) fails on basis triple ({a}, {b}, {cc})"
    return None


def make_jspace(J: JordanAlgebra, rho: Sequence, check: bool = True) -> JSpace:
    rho = tuple(_mat(r) for r in rho)
    if len(rho) != J.dim:
        raise ValueError("need one matrix per basis vector of J")
    n = rho[0].shape[0]
    if any(r.shape != (n, n) for r in rho):
        raise ValueError("inconsistent matrix sizes")
    if check:
        bad = axiom_violation(J, rho)
        if bad:
            raise ValueError(f"not a J-space: {bad}")
    level = rho[J.unit][0, 0] if n else F0
    return JSpace(J, rho, Fraction(level))


def regular_jspace(J: JordanAlgebra, check: bool = True) -> JSpace:
    """J acting on itself by rho(a) = 2 L_a (level 2)."""
    return make_jspace(J, [2 * J.left_mult(J.basis_vector(i)) for i in range(J.dim)], check)


def scalar_jspace(J: JordanAlgebra, n, values: Mapping[int, object] | None = None, check: bool = True) -> JSpace:
    """One-dimensional space with rho(1) = n and rho(b_i) = values[i] (default 0)."""
    values = values or {}
    rho = []
    for i in range(J.dim):
        v = n if i == J.unit else values.get(i, 0)
        rho.append(np.array([[to_rational(v)]], dtype=object))
    return make_jspace(J, rho, check)


def trivial_jspace(J: JordanAlgebra, n: int) -> JSpace:
    """K_n: h(1) acts by n and the augmentation ideal acts by 0."""
    aug = J.augmentation
    if aug is None:
        raise ValueError("requires an augmented algebra")
    ures = aug.residual({J.unit: F1})
    piv = min(ures)
    rho = []
    for i in range(J.dim):
        # b_i = coeff * 1 modulo J+
        coeff = aug.residual({i: F1}).get(piv, F0) / ures[piv]
        rho.append(np.array([[n * coeff]], dtype=object))
    return make_jspace(J, rho)


def tensor_jspace(V: JSpace, W: JSpace) -> JSpace:
    if V.J is not W.J and V.J.to_json() != W.J.to_json():
        raise ValueError("J-spaces over different algebras")
    iv, iw = _eye(V.dim), _eye(W.dim)
    rho = [np.kron(a, iw) + np.kron(iv, b) for a, b in zip(V.rho, W.rho)]
    return make_jspace(V.J, rho)


# ---------------------------------------------------------------------------
# G_0-modules

@dataclass
class G0Action:
    """Actions of h(b_i) (one per J basis vector) and of {J,J} classes."""

    h: list[np.ndarray]
    central: list[np.ndarray]


def to_g0_action(V: JSpace, ct: CentralTerm | None = None) -> G0Action:
    """h(a) acts by rho(a) and {a,b} by [rho(a), rho(b)]/4."""
    ct = ct or CentralTerm(V.J)
    comm = {}

    def quarter_comm(i, j):
        if (i, j) not in comm:
            comm[(i, j)] = (V.rho[i].dot(V.rho[j]) - V.rho[j].dot(V.rho[i])) / 4
        return comm[(i, j)]

    for row in ct.S.sparse_basis():
        acc = _zero_mat(V.dim)
        for p, c in row.items():
            i, j = ct.pairs[p]
            acc = acc + c * quarter_comm(i, j)
        if acc.any():
            raise ValueError("the {a,b}-action does not vanish on S; not a G0-module")
    central = [quarter_comm(i, j) for (i, j) in ct.basis_pairs]
    return G0Action(list(V.rho), central)


def from_g0_action(J: JordanAlgebra, action: G0Action, ct: CentralTerm | None = None) -> JSpace:
    ct = ct or CentralTerm(J)
    V = make_jspace(J, action.h)
    expected = to_g0_action(V, ct)
    if len(action.central) != len(expected.central) or any(
            (_mat(a) != b).any() for a, b in zip(action.central, expected.central)):
        raise ValueError("central action differs from [rho(a), rho(b)]/4")
    return V


# ---------------------------------------------------------------------------
# the dominance criterion

def dominance_defect(V: JSpace, a) -> np.ndarray:
    """sum over partitions s of n+1 of sgn(s)|C_s| rho(a^s_1) ... rho(a^s_m)."""
    n = V.integer_level()
    J = V.J
    a = J.element(a)
    powers = {k: V.act(J.power(a, k)) for k in range(1, n + 2)}
    out = _zero_mat(V.dim)
    for s, coeff in signed_class_sizes(n + 1):
        term = _eye(V.dim)
        for part in s:
            term = term.dot(powers[part])
        out = out + coeff * term
    return out


def _ordered_blocks(n1: int):
    """For each partition s of n1: (coefficient, list of ordered set partitions)."""
    items = tuple(range(n1))
    out = []
    for s, coeff in signed_class_sizes(n1):
        out.append((s, coeff, list(ordered_set_partitions(items, s.parts))))
    return out


def polarized_defect(V: JSpace, tuple_: Sequence[int], scaled: bool = True):
    """Full polarisation of the defect at basis vectors b_{i_1}, ..., b_{i_{n+1}}.

    With ``scaled`` the result is an integer matrix equal to the true value
    times a positive constant (it vanishes iff the true value does).
    """
    n = V.integer_level()
    n1 = n + 1
    if len(tuple_) != n1:
        raise ValueError("tuple length must be level + 1")
    J = V.J
    K, c, R, q = _integer_data(J, V.rho)
    K, R = K.astype(object), R.astype(object)
    return _polarized_int(K, c, R, q, tuple(tuple_), _ordered_blocks(n1), scaled)


def _polarized_int(K, c, R, q, tup, blocks, scaled=True):
    d = K.shape[0]
    n1 = len(tup)
    vecs: dict[int, np.ndarray] = {}

    def chat(mask: int) -> np.ndarray:
        if mask in vecs:
            return vecs[mask]
        bits = [k for k in range(n1) if mask >> k & 1]
        if len(bits) == 1:
            v = np.zeros(d, dtype=K.dtype)
            v[tup[bits[0]]] = 1
        else:
            v = np.zeros(d, dtype=K.dtype)
            for k in bits:
                rest = chat(mask & ~(1 << k))
                v = v + rest @ K[tup[k]]
        vecs[mask] = v
        return v

    mats: dict[int, np.ndarray] = {}

    def rhat(block) -> np.ndarray:
        mask = sum(1 << k for k in block)
        if mask not in mats:
            mats[mask] = np.tensordot(chat(mask), R, axes=1)
        return mats[mask]

    dimv = R.shape[1]
    total = np.zeros((dimv, dimv), dtype=R.dtype)
    for s, coeff, parts in blocks:
        m = len(s)
        w = coeff * q ** (n1 - m) * c ** m
        acc = np.zeros((dimv, dimv), dtype=R.dtype)
        for blist in parts:
            term = rhat(blist[0])
            for b in blist[1:]:
                term = term @ rhat(b)
            acc = acc + term
        total = total + w * acc
    if scaled:
        return total
    return np.vectorize(lambda x: Fraction(x, (q * c) ** n1), otypes=[object])(total)


@dataclass
class DominanceResult:
    dominant: bool
    certified: bool
    witness: tuple | None = None
    mode: str = "exact"

    def __bool__(self) -> bool:
        return self.dominant

    def to_dict(self) -> dict:
        return {"dominant": self.dominant, "certified": self.certified,
                "witness": None if self.witness is None else [str(x) for x in self.witness],
                "mode": self.mode}


def is_dominant(V: JSpace, mode: str = "exact", trials: int = 8, seed: int = 0) -> DominanceResult:
    """Decide whether the defect vanishes identically on J.

    ``exact`` checks the full polarisation on all basis (n+1)-multisets.
    ``random`` evaluates the defect at random rational elements; a nonzero
    value certifies non-dominance, otherwise the answer is not certified.
    """
    n = V.integer_level()
    J = V.J
    if V.dim == 0:
        return DominanceResult(True, True, None, mode)
    if mode == "random":
        rng = random.Random(seed)
        for _ in range(trials):
            a = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(J.dim)]
            if dominance_defect(V, a).any():
                return DominanceResult(False, True, tuple(a), mode)
        return DominanceResult(True, False, None, mode)
    if mode != "exact":
        raise ValueError("mode must be 'exact' or 'random'")
    K, c, R, q = _integer_data(J, V.rho)
    bound = (int(np.max(np.abs(K))) + 1) ** n * (int(np.max(np.abs(R))) + 1) ** (n + 1) \
        * (J.dim * V.dim) ** (n + 1) * (q * c) ** (n + 1) * 1000
    if not fits_int64(bound):
        K, R = K.astype(object), R.astype(object)
    blocks = _ordered_blocks(n + 1)
    for tup in combinations_with_replacement(range(J.dim), n + 1):
        if _polarized_int(K, c, R, q, tup, blocks).any():
            return DominanceResult(False, True, tup, mode)
    return DominanceResult(True, True, None, mode)


# ---------------------------------------------------------------------------
# truncated U_n(J)

Word = tuple[int, ...]


@dataclass
class TruncatedUn:
    level: int
    cap: int
    graded: bool
    dims: list[int]
    generators: list[str]
    relation_count: int
    info: dict = field(default_factory=dict)

    @property
    def filtered_dims(self) -> list[int]:
        if not self.graded:
            return list(self.dims)
        out, acc = [], 0
        for x in self.dims:
            acc += x
            out.append(acc)
        return out

    def to_dict(self) -> dict:
        return {"level": self.level, "cap": self.cap, "graded": self.graded, "dims": self.dims,
                "filtered_dims": self.filtered_dims, "generators": self.generators,
                "relations": self.relation_count}


def _poly_add(out: dict, w: Word, c) -> None:
    v = out.get(w, 0) + c
    if v:
        out[w] = v
    else:
        out.pop(w, None)


def _poly_mul(a: Mapping[Word, Fraction], b: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    for u, x in a.items():
        for v, y in b.items():
            _poly_add(out, u + v, x * y)
    return out


def un_truncated(J: JordanAlgebra, n: int, cap: int = 4, max_words: int = 200000) -> TruncatedUn:
    """U(G_0) modulo h(1) - n and the polarised defect relations, up to ``cap``.

    For graded J the quotient is graded by J-degree and ``dims[d]`` is the
    dimension of the degree-d piece. Otherwise generators have degree one,
    the ideal is truncated at word length ``cap`` and ``dims[d]`` is the
    dimension of the filtered piece of length <= d.
    """
    G = build(J, central=True, check=False)
    d = J.dim
    u = J.unit
    graded = J.grading is not None
    # generators: h(b_i) for i != unit, then {J,J} classes
    gens: list[int] = [G.index("h", i) for i in range(d) if i != u]
    gens += [G.extra_index(p) for p in range(G.extra_dim)]
    gpos = {g: k for k, g in enumerate(gens)}
    h1 = G.index("h", u)
    if graded:
        deg_of = {G.index("h", i): J.grading[i] for i in range(d)}
        for p, (i, j) in enumerate(G.central_term.basis_pairs):
            deg_of[G.extra_index(p)] = J.grading[i] + J.grading[j]
        gdeg = [deg_of[g] for g in gens]
        if any(x <= 0 for x in gdeg):
            raise ValueError("graded computation needs positive degrees off the unit")
    else:
        gdeg = [1] * len(gens)

    def lin(v: Mapping[int, Fraction]) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {}
        for k, c in v.items():
            if k == h1:
                _poly_add(out, (), c * n)
            elif k in gpos:
                _poly_add(out, (gpos[k],), c)
            else:
                raise ValueError("element outside G_0")
        return out

    def h_of(vec: Mapping[int, Fraction]) -> dict[Word, Fraction]:
        return lin({G.index("h", i): c for i, c in vec.items()})

    relations: list[dict[Word, Fraction]] = []
    full = [h1] + gens
    for x in range(len(full)):
        for y in range(x + 1, len(full)):
            a, b = full[x], full[y]
            if a == h1:
                continue
            rel: dict[Word, Fraction] = {}
            _poly_add(rel, (gpos[a], gpos[b]), 1)
            _poly_add(rel, (gpos[b], gpos[a]), -1)
            for w, c in lin(G.bracket_basis(a, b)).items():
                _poly_add(rel, w, -c)
            if rel:
                relations.append(rel)
    blocks = _ordered_blocks(n + 1)
    for tup in combinations_with_replacement(range(d), n + 1):
        memo: dict[int, dict[int, Fraction]] = {}

        def celt(mask: int) -> dict[int, Fraction]:
            if mask in memo:
                return memo[mask]
            bits = [k for k in range(n + 1) if mask >> k & 1]
            if len(bits) == 1:
                v = {tup[bits[0]]: F1}
            else:
                v = {}
                for k in bits:
                    for i, c in J.mul_sparse({tup[k]: F1}, celt(mask & ~(1 << k))).items():
                        v[i] = v.get(i, 0) + c
                v = {i: c for i, c in v.items() if c}
            memo[mask] = v
            return v

        rel: dict[Word, Fraction] = {}
        for s, coeff, parts in blocks:
            for blist in parts:
                term: dict[Word, Fraction] = {(): F1}
                for b in blist:
                    term = _poly_mul(term, h_of(celt(sum(1 << k for k in b))))
                    if not term:
                        break
                for w, c in term.items():
                    _poly_add(rel, w, coeff * c)
        if rel:
            relations.append(rel)

    def wdeg(w: Word) -> int:
        return sum(gdeg[g] for g in w)

    # words by degree
    words_by_deg: dict[int, list[Word]] = {0: [()]}
    for D in range(1, cap + 1):
        ws = []
        for g, dg in enumerate(gdeg):
            if dg <= D:
                ws.extend((g,) + w for w in words_by_deg.get(D - dg, []))
        words_by_deg[D] = sorted(ws)
    total_words = sum(len(v) for v in words_by_deg.values())
    if total_words > max_words:
        raise ResourceError(f"cap too large: {total_words} words exceed the limit {max_words}")

    def rdeg(r):
        return max(wdeg(w) for w in r)

    if graded:
        dims = []
        for D in range(cap + 1):
            idx = {w: k for k, w in enumerate(words_by_deg[D])}
            ech = Echelon()
            for r in relations:
                if any(wdeg(w) != rdeg(r) for w in r):
                    raise ArithmeticError("relation is not homogeneous")
                e = rdeg(r)
                if e > D:
                    continue
                for du in range(D - e + 1):
                    for left in words_by_deg[du]:
                        for right in words_by_deg[D - e - du]:
                            ech.add({idx[left + w + right]: c for w, c in r.items()})
            dims.append(len(idx) - len(ech))
    else:
        # columns ordered longest word first, so pivots of an echelon form
        # lying in a filtered piece give a basis of the ideal inside it
        allw = [w for D in range(cap, -1, -1) for w in words_by_deg[D]]
        idx = {w: k for k, w in enumerate(allw)}
        ech = Echelon()
        for r in relations:
            e = rdeg(r)
            for du in range(cap - e + 1):
                for dv in range(cap - e - du + 1):
                    for left in words_by_deg[du]:
                        for right in words_by_deg[dv]:
                            ech.add({idx[left + w + right]: c for w, c in r.items()})
        dims = []
        for D in range(cap + 1):
            inside = sum(1 for p in ech.pivots if len(allw[p]) <= D)
            count = sum(len(words_by_deg[x]) for x in range(D + 1))
            dims.append(count - inside)
    names = [G.names[g] for g in gens]
    return TruncatedUn(n, cap, graded, dims, names, len(relations))
