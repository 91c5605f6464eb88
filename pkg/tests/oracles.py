"""
Independent reference computations used to cross-check the library.

Each routine here follows a different algorithm from the code it checks:
presentations by generators and relations instead of truncated U_n, a
closed-form commutator expansion instead of recursive normal ordering,
random-order rewriting instead of memoised straightening, and so on.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import numpy as np

from jordan_tkk.exactlin import Echelon
from jordan_tkk.jordan import JordanAlgebra

F1 = Fraction(1)


def _acc(out, k, c):
    v = out.get(k, 0) + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


# ---------------------------------------------------------------------------
# Kaehler differentials modulo exact forms

def is_associative(J: JordanAlgebra) -> bool:
    T = J.table
    left = np.einsum("ijm,mkn->ijkn", T, T)
    right = np.einsum("jkm,imn->ijkn", T, T)
    return bool((left == right).all())


def kahler_quotient_dim(J: JordanAlgebra) -> int:
    """dim Omega^1 / dJ for a commutative associative J, with Omega^1 presented
    as J (x) J modulo a (x) bc - ab (x) c - ac (x) b, and dJ = 1 (x) J."""
    if not is_associative(J):
        raise ValueError("needs an associative algebra")
    d = J.dim
    ech = Echelon()

    def pos(i, j):
        return i * d + j

    for a in range(d):
        for b in range(d):
            for c in range(d):
                row = {}
                for k, x in J.product_of_basis(b, c).items():
                    _acc(row, pos(a, k), x)
                for k, x in J.product_of_basis(a, b).items():
                    _acc(row, pos(k, c), -x)
                for k, x in J.product_of_basis(a, c).items():
                    _acc(row, pos(k, b), -x)
                if row:
                    ech.add(row)
    for b in range(d):
        ech.add({pos(J.unit, b): F1})
    return d * d - len(ech)


def square_zero_extension(m: int) -> JordanAlgebra:
    """K + V with V^2 = 0, dim V = m."""
    d = m + 1
    T = np.full((d, d, d), Fraction(0), dtype=object)
    for i in range(d):
        T[0, i, i] = F1
        T[i, 0, i] = F1
    names = ["1"] + [f"v{i}" for i in range(1, d)]
    from jordan_tkk.exactlin import Subspace
    return JordanAlgebra(T, 0, tuple(names), tuple([0] + [1] * m),
                         Subspace.coordinate(d, range(1, d)))


# ---------------------------------------------------------------------------
# graded presentations of associative algebras

def _words(gen_deg, d):
    """All words (tuples of generator indices) of total degree d."""
    out = []

    def rec(left, acc):
        if left == 0:
            out.append(acc)
            return
        for g, dg in enumerate(gen_deg):
            if dg <= left:
                rec(left - dg, acc + (g,))

    rec(d, ())
    return out


def graded_quotient_dims(gen_deg, relations, max_deg):
    """Graded dims of K<generators>/(relations) in degrees 0..max_deg.

    ``relations`` are homogeneous dicts word -> coefficient.
    """
    def wdeg(w):
        return sum(gen_deg[g] for g in w)

    rels = [(r, wdeg(next(iter(r)))) for r in relations if r]
    dims = []
    for d in range(max_deg + 1):
        words = _words(gen_deg, d)
        idx = {w: i for i, w in enumerate(words)}
        ech = Echelon()
        for r, dr in rels:
            if dr > d:
                continue
            for du in range(d - dr + 1):
                for u in _words(gen_deg, du):
                    for v in _words(gen_deg, d - dr - du):
                        row = {}
                        for w, c in r.items():
                            _acc(row, idx[u + w + v], c)
                        if row:
                            ech.add(row)
        dims.append(len(words) - len(ech))
    return dims


def associative_envelope_dims(m: int, max_deg: int):
    """K[t]/(t^m): generators T_i (i >= 1) for t^i, T_i T_j + T_j T_i = 2 T_{i+j}."""
    gens = list(range(1, m))
    g = {i: k for k, i in enumerate(gens)}
    rels = []
    for i in gens:
        for j in gens:
            if i <= j:
                r = {}
                _acc(r, (g[i], g[j]), F1)
                _acc(r, (g[j], g[i]), F1)
                if i + j < m:
                    _acc(r, (g[i + j],), Fraction(-2))
                rels.append(r)
    return graded_quotient_dims([i for i in gens], rels, max_deg)


def multiplication_envelope_dims(m: int, max_deg: int):
    """Universal multiplication envelope of K[t]/(t^m) with R_1 = 1.

    Relations, for a, b, c among t, t^2, ...:
      [R_a, R_bc] + [R_b, R_ca] + [R_c, R_ab] = 0
      R_a R_b R_c + R_c R_b R_a + R_(ac)b = R_a R_bc + R_b R_ca + R_c R_ab
    """
    gens = list(range(1, m))
    g = {i: k for k, i in enumerate(gens)}

    def R(i):
        return {(g[i],): F1} if i < m else {}

    def mul(*factors):
        out = {(): F1}
        for f in factors:
            nxt = {}
            for w, c in out.items():
                for w2, c2 in f.items():
                    _acc(nxt, w + w2, c * c2)
            out = nxt
        return out

    def add(*terms):
        out = {}
        for s, t in terms:
            for w, c in t.items():
                _acc(out, w, s * c)
        return out

    rels = []
    for a, b, c in product(gens, repeat=3):
        r1 = add((1, mul(R(a), R(b + c))), (-1, mul(R(b + c), R(a))),
                 (1, mul(R(b), R(c + a))), (-1, mul(R(c + a), R(b))),
                 (1, mul(R(c), R(a + b))), (-1, mul(R(a + b), R(c))))
        r2 = add((1, mul(R(a), R(b), R(c))), (1, mul(R(c), R(b), R(a))), (1, R(a + b + c)),
                 (-1, mul(R(a), R(b + c))), (-1, mul(R(b), R(c + a))), (-1, mul(R(c), R(a + b))))
        rels.extend(r for r in (r1, r2) if r)
    return graded_quotient_dims(gens, rels, max_deg)


# ---------------------------------------------------------------------------
# special Jordan polynomials

def special_jordan_dims(D: int, max_deg: int):
    """Dims of the Jordan subalgebra generated by x_1..x_D inside the free
    associative algebra, per degree, with a o b = ab + ba."""
    spaces = {1: [{(i,): F1} for i in range(D)]}
    dims = [D]
    for d in range(2, max_deg + 1):
        words = list(product(range(D), repeat=d))
        idx = {w: i for i, w in enumerate(words)}
        ech = Echelon()
        basis = []
        for i in range(1, d // 2 + 1):
            for p in spaces[i]:
                for q in spaces[d - i]:
                    row = {}
                    for w1, c1 in p.items():
                        for w2, c2 in q.items():
                            _acc(row, w1 + w2, c1 * c2)
                            _acc(row, w2 + w1, c1 * c2)
                    vec = {idx[w]: c for w, c in row.items()}
                    if vec and ech.add(vec):
                        basis.append(row)
        spaces[d] = basis
        dims.append(len(basis))
    return dims


# ---------------------------------------------------------------------------
# M(V) and the submodule generated by f^{n+1} V

class ClosedFormVerma:
    """M(V) with e(a) acting by the two-term commutator expansion

        e f_1...f_k v = sum_i (prod_{j != i} f_j) [e, f_i] v
                        + sum_{i<j} [[e, f_i], f_j] (prod_{l != i, j} f_l) v

    which is exact because G_-2 is abelian.
    """

    def __init__(self, G, rho):
        self.G = G
        J = G.J
        self.d = J.dim
        self.rho = [np.array(r, dtype=object) for r in rho]
        self.nv = self.rho[0].shape[0]
        # G_0 action on V: h(b_i) by rho_i, {b_i, b_j} by [rho_i, rho_j]/4
        self.g0 = {G.index("h", i): self.rho[i] for i in range(self.d)}
        for p, (i, j) in enumerate(G.central_term.basis_pairs):
            self.g0[G.extra_index(p)] = (self.rho[i].dot(self.rho[j]) - self.rho[j].dot(self.rho[i])) / 4
        self.fpos = {G.index("f", i): i for i in range(self.d)}

    def kind(self, g):
        return "efh"[0] if g < self.d else ("h" if g < 2 * self.d else ("f" if g < 3 * self.d else "c"))

    def _g0_on_v(self, g, v):
        col = self.g0[g][:, v]
        return {int(w): col[w] for w in np.flatnonzero(col != 0)}

    def _to_f(self, vec):
        out = {}
        for t, c in vec.items():
            out[self.fpos[t]] = c
        return out

    def act(self, g, key):
        S, v = key
        out = {}
        kind = "e" if g < self.d else ("h" if g < 2 * self.d else ("f" if g < 3 * self.d else "c"))
        if kind == "f":
            return {(tuple(sorted(S + (self.fpos[g],))), v): F1}
        if kind in ("h", "c"):
            for i, s in enumerate(S):
                for m, c in self._to_f(self.G.bracket_basis(g, self.G.index("f", s))).items():
                    _acc(out, (tuple(sorted(S[:i] + (m,) + S[i + 1:])), v), c)
            for w, c in self._g0_on_v(g, v).items():
                _acc(out, (S, w), c)
            return out
        for i, s in enumerate(S):
            rest = S[:i] + S[i + 1:]
            br = self.G.bracket_basis(g, self.G.index("f", s))
            for t, c in br.items():
                for w, c2 in self._g0_on_v(t, v).items():
                    _acc(out, (rest, w), c * c2)
            for j in range(i + 1, len(S)):
                rest2 = tuple(x for p, x in enumerate(S) if p not in (i, j))
                for t, c in br.items():
                    for m, c2 in self._to_f(self.G.bracket_basis(t, self.G.index("f", S[j]))).items():
                        _acc(out, (tuple(sorted(rest2 + (m,))), v), c * c2)
        return out


def weyl_dims_by_closure(G, rho, n, depth=2):
    """dim of each level k <= n of M(V)/<f^{n+1} V>, with the generated submodule
    built by repeated application of all generators inside levels 0..n+1+depth."""
    from itertools import combinations_with_replacement

    M = ClosedFormVerma(G, rho)
    d, nv = M.d, M.nv
    L = n + 1 + depth
    bases = {k: [(S, v) for S in combinations_with_replacement(range(d), k) for v in range(nv)]
             for k in range(L + 1)}
    index = {k: {b: i for i, b in enumerate(bases[k])} for k in bases}
    ech = {k: Echelon() for k in bases}
    unit = G.J.unit
    queue = []
    for v in range(nv):
        vec = {((unit,) * (n + 1), v): F1}
        queue.append((n + 1, vec))
    while queue:
        k, vec = queue.pop()
        row = {index[k][key]: c for key, c in vec.items()}
        if not ech[k].add(row):
            continue
        for g in range(G.dim):
            out = {}
            for key, c in vec.items():
                for k2, c2 in M.act(g, key).items():
                    _acc(out, k2, c * c2)
            if not out:
                continue
            lev = len(next(iter(out))[0])
            if lev <= L:
                queue.append((lev, out))
    return {n - 2 * k: len(bases[k]) - len(ech[k]) for k in range(n + 1)}


# ---------------------------------------------------------------------------
# PBW straightening in a random order

_SL2 = {
    "e": np.array([[0, 1], [0, 0]]),
    "h": np.array([[1, 0], [0, -1]]),
    "f": np.array([[0, 0], [1, 0]]),
}


def _sl2_coords(m):
    # m = a e + b h + c f
    return {"e": m[0, 1], "h": m[0, 0], "f": m[1, 0]}


def random_order_normal_form(M, word, seed=0):
    """PBW normal form of a word in U(sl2 (x) K[t]/(t^M)) by swapping a randomly
    chosen adjacent inversion until every word is sorted. Generators are
    encoded as in the library: X*M + i with X = 0, 1, 2 for f, h, e."""
    rng = random.Random(seed)
    order = ("f", "h", "e")

    def bracket(g, k):
        (X, i), (Y, j) = divmod(g, M), divmod(k, M)
        if i + j >= M:
            return {}
        a, b = _SL2[order[X]], _SL2[order[Y]]
        coords = _sl2_coords(a @ b - b @ a)
        return {order.index(z) * M + i + j: Fraction(int(c)) for z, c in coords.items() if c}

    terms = {tuple(word): F1}
    done = {}
    while terms:
        w, c = terms.popitem()
        inv = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not inv:
            _acc(done, w, c)
            continue
        p = rng.choice(inv)
        swapped = w[:p] + (w[p + 1], w[p]) + w[p + 2:]
        _acc(terms, swapped, c)
        for z, cz in bracket(w[p], w[p + 1]).items():
            _acc(terms, w[:p] + (z,) + w[p + 2:], c * cz)
    return done


# ---------------------------------------------------------------------------
# Killing form

def killing_rank(L) -> int:
    """Rank of the Killing form tr(ad x ad y) on the basis."""
    from math import lcm
    den = 1
    for _, v in L.structure_items():
        for c in v.values():
            den = lcm(den, c.denominator)
    n = L.dim
    ad = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), v in L.structure_items():
        for k, c in v.items():
            ad[i, k, j] += int(c * den)
            ad[j, k, i] -= int(c * den)
    K = np.einsum("iab,jba->ij", ad, ad)
    ech = Echelon()
    return ech.extend({j: int(x) for j, x in enumerate(row) if x} for row in K)


# ---------------------------------------------------------------------------
# J-spaces of K[t]/(t^3) with dim V <= 2

def _mat(rows):
    return np.array([[Fraction(x) for x in r] for r in rows], dtype=object)


def _conj(P, A):
    from jordan_tkk.jordan import _inverse
    return P.dot(A).dot(_inverse(P))


def jspace_grid():
    """Parameter grid of (level, rho(t), rho(t^2)) with commuting matrices.

    For K[t]/(t^3) the central term and the inner derivations vanish, so a
    J-space is exactly a level n with commuting rho(t), rho(t^2).
    """
    out = []
    vals = (-1, 0, 1, 2)
    for n in range(4):
        for a in vals:
            for b in vals:
                out.append((n, _mat([[a]]), _mat([[b]])))
    Xs = (_mat([[0, 1], [0, 0]]), _mat([[1, 0], [0, 0]]))
    I2 = _mat([[1, 0], [0, 1]])
    for n in range(4):
        for X in Xs:
            for p, q, r, s in product((-1, 0, 1), repeat=4):
                out.append((n, p * X + q * I2, r * X + s * I2))
    return out


def random_jspaces(count=100, seed=0):
    """Half from the dominant family (conjugates of p N, r N with N^2 = 0,
    r = 0 at level 1), half generic commuting pairs."""
    rng = random.Random(seed)

    def q():
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    def invertible():
        while True:
            P = _mat([[q(), q()], [q(), q()]])
            if P[0, 0] * P[1, 1] - P[0, 1] * P[1, 0]:
                return P

    N = _mat([[0, 1], [0, 0]])
    I2 = _mat([[1, 0], [0, 1]])
    out = []
    for k in range(count):
        P = invertible()
        if k % 2 == 0:
            n = rng.choice((1, 2, 3))
            A = q() * N
            B = (q() if n >= 2 else 0) * N
            out.append(("dominant", n, _conj(P, A), _conj(P, B)))
        else:
            n = rng.choice((0, 1, 2, 3))
            X = _mat([[q(), q()], [q(), q()]])
            A = q() * X + q() * I2
            B = q() * X + q() * I2
            out.append(("generic", n, _conj(P, A), _conj(P, B)))
    return out


def jspace_of(J, n, A, B):
    from jordan_tkk.dominance import make_jspace
    d = A.shape[0]
    one = np.array([[Fraction(n) if i == j else Fraction(0) for j in range(d)] for i in range(d)], dtype=object)
    return make_jspace(J, [one, A, B])
