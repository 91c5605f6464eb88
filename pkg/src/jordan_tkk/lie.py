"""
Finite-dimensional Lie algebras by sparse rational structure constants.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .exactlin import Subspace, fits_int64, format_rational

Vec = dict[int, Fraction]


def _axpy(out: dict, c, v: Mapping) -> None:
    for k, x in v.items():
        nv = out.get(k, 0) + c * x
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)


class LieAlgebra:
    """Lie algebra with basis x_0..x_{dim-1} and ``[x_i, x_j] = sum_k c_ij^k x_k``.

    Only ``i < j`` is stored; antisymmetry is built in. ``grading`` is an
    optional integer tag per basis vector (for example -2, 0, 2).
    """

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, Fraction]],
                 names: Sequence[str] | None = None, grading: Sequence[int] | None = None):
        self.dim = dim
        self._br: dict[tuple[int, int], Vec] = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError("bracket index out of range")
            if i == j:
                if any(v.values()):
                    raise ValueError("[x, x] must vanish")
                continue
            v = {int(k): Fraction(c) for k, c in v.items() if c}
            if not v:
                continue
            if i > j:
                i, j = j, i
                v = {k: -c for k, c in v.items()}
            if (i, j) in self._br and self._br[(i, j)] != v:
                raise ValueError(f"inconsistent bracket for ({i}, {j})")
            self._br[(i, j)] = v
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(dim))
        self.grading = None if grading is None else tuple(int(g) for g in grading)

    def bracket_basis(self, i: int, j: int) -> Vec:
        if i < j:
            return self._br.get((i, j), {})
        if i > j:
            v = self._br.get((j, i))
            return {k: -c for k, c in v.items()} if v else {}
        return {}

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                if i != j:
                    b = self.bracket_basis(i, j)
                    if b:
                        _axpy(out, x * y, b)
        return out

    def ad(self, u: Mapping[int, Fraction]) -> np.ndarray:
        m = np.full((self.dim, self.dim), Fraction(0), dtype=object)
        for j in range(self.dim):
            for k, c in self.bracket(u, {j: Fraction(1)}).items():
                m[k, j] = c
        return m

    def structure_items(self):
        return sorted(self._br.items())

    # -- checks -----------------------------------------------------------

    def _scaled_ad(self):
        den = 1
        for v in self._br.values():
            for c in v.values():
                den = lcm(den, c.denominator)
        big = 0
        K: dict[tuple[int, int], dict[int, int]] = {}
        for (i, j), v in self._br.items():
            w = {k: int(c * den) for k, c in v.items()}
            K[(i, j)] = w
            big = max(big, max(abs(x) for x in w.values()))
        return K, den, big

    def jacobi_violation(self) -> tuple[int, int, int] | None:
        """First (i, j, k) with [[x_i, x_j], x_k] != [x_i, [x_j, x_k]] - [x_j, [x_i, x_k]].

        Checked as ad([x_i, x_j]) = [ad x_i, ad x_j] with integer-scaled
        sparse matrices (the identity is homogeneous of degree two in the
        structure constants).
        """
        n = self.dim
        K, den, big = self._scaled_ad()
        if not fits_int64(4 * big * big * max(n, 1)):
            return self._jacobi_violation_exact()
        rows, cols, vals = [[] for _ in range(n)], [[] for _ in range(n)], [[] for _ in range(n)]
        for (i, j), w in K.items():
            for k, c in w.items():
                # ad x_i sends x_j to c x_k; ad x_j sends x_i to -c x_k
                rows[i].append(k); cols[i].append(j); vals[i].append(c)
                rows[j].append(k); cols[j].append(i); vals[j].append(-c)
        ad = [sp.csr_matrix((np.array(vals[i], dtype=np.int64), (rows[i], cols[i])), shape=(n, n))
              for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lhs = ad[i] @ ad[j] - ad[j] @ ad[i]
                rhs = sp.csr_matrix((n, n), dtype=np.int64)
                for m, c in K.get((i, j), {}).items():
                    rhs = rhs + c * ad[m]
                diff = (lhs - rhs).tocoo()
                nz = diff.data != 0
                if nz.any():
                    ks = sorted(int(c) for c in diff.col[nz])
                    return i, j, ks[0]
        return None

    def _jacobi_violation_exact(self) -> tuple[int, int, int] | None:
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    xi, xj, xk = {i: 1}, {j: 1}, {k: 1}
                    total: Vec = {}
                    _axpy(total, 1, self.bracket(xi, self.bracket(xj, xk)))
                    _axpy(total, 1, self.bracket(xj, self.bracket(xk, xi)))
                    _axpy(total, 1, self.bracket(xk, self.bracket(xi, xj)))
                    if total:
                        return i, j, k
        return None

    def grading_violation(self) -> tuple[int, int] | None:
        """First (i, j) whose bracket leaves G_{g_i + g_j}."""
        if self.grading is None:
            return None
        g = self.grading
        for (i, j), v in self._br.items():
            if any(g[k] != g[i] + g[j] for k in v):
                return i, j
        return None

    def is_ideal(self, sub: Subspace) -> bool:
        for v in sub.sparse_basis():
            for i in range(self.dim):
                if not sub.contains(self.bracket({i: Fraction(1)}, v)):
                    return False
        return True

    # -- export -----------------------------------------------------------

    def to_dict(self) -> dict:
        products = [[i, j, [[k, format_rational(c)] for k, c in sorted(v.items())]]
                    for (i, j), v in self.structure_items()]
        return {
            "dim": self.dim,
            "unit": None,
            "names": list(self.names),
            "grading": None if self.grading is None else list(self.grading),
            "augmentation": None,
            "antisymmetric": True,
            "products": products,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "LieAlgebra":
        br = {(i, j): {k: Fraction(c) for k, c in ents} for i, j, ents in data["products"]}
        return cls(int(data["dim"]), br, data.get("names"), data.get("grading"))
