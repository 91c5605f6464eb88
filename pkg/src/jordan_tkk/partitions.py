"""
Partitions, cycle-type class sizes, and power-sum identities.

The two identities verified here are

* the signed class sum of power sums,
  ``sum_{s |- n} sgn(s) |C_s| N_s(x) = n! x_1 ... x_n``;
* the coefficients of ``exp(-sum_k Y_k t^k / k)``,
  ``a_n = (-1)^n / n! * sum_{s |- n} sgn(s) |C_s| Y_s``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Iterator, Mapping, Sequence


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        if any(x < 1 for x in p) or any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"not a partition: {p}")
        object.__setattr__(self, "parts", p)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(n, n))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order; [] for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return []
    return list(_partitions_cached(n))


def class_size(s: Partition) -> int:
    """Number of permutations of cycle type s."""
    n = s.weight
    if n < 1:
        raise ValueError("weight must be positive")
    denom = prod(j**m * factorial(m) for j, m in s.multiplicities().items())
    return factorial(n) // denom


def sign(s: Partition) -> int:
    """Sign of any permutation of cycle type s."""
    if s.weight < 1:
        raise ValueError("weight must be positive")
    return -1 if (s.weight - len(s)) % 2 else 1


def signed_class_sizes(n: int) -> list[tuple[Partition, int]]:
    """Pairs (s, sgn(s)|C_s|) over partitions of n."""
    return [(s, sign(s) * class_size(s)) for s in partitions_of(n)]


# ---------------------------------------------------------------------------
# sparse polynomials

class Polynomial:
    """Commutative polynomial with rational coefficients in ``nvars`` variables.

    Terms are stored as ``{exponent tuple: Fraction}``; zero coefficients
    are never stored and ``terms`` iterates in sorted exponent order.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        self._terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError("exponent length mismatch")
            c = Fraction(c)
            if c:
                self._terms[tuple(e)] = self._terms.get(tuple(e), 0) + c
        self._terms = {e: c for e, c in self._terms.items() if c}

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int, power: int = 1) -> "Polynomial":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        return isinstance(other, Polynomial) and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        """Value at a point (one coordinate per variable)."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong length")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def power_sum(nvars: int, k: int) -> Polynomial:
    """Newton power sum x_1^k + ... + x_nvars^k."""
    return sum((Polynomial.variable(nvars, i, k) for i in range(nvars)), Polynomial(nvars))


def power_sum_product(nvars: int, s: Partition) -> Polynomial:
    out = Polynomial.constant(nvars)
    for part in s:
        out = out * power_sum(nvars, part)
    return out


def girard_newton_sum(n: int) -> Polynomial:
    """sum over s |- n of sgn(s)|C_s| N_s in n variables."""
    total = Polynomial(n)
    # share prefixes of the (nonincreasing) part sequences
    cache: dict[tuple[int, ...], Polynomial] = {(): Polynomial.constant(n)}
    sums = {k: power_sum(n, k) for k in range(1, n + 1)}
    for s, coeff in signed_class_sizes(n):
        key = ()
        for part in s:
            nxt = key + (part,)
            if nxt not in cache:
                cache[nxt] = cache[key] * sums[part]
            key = nxt
        total = total + cache[key] * coeff
    return total


def verify_girard_newton(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    target = Polynomial(n, {(1,) * n: factorial(n)})
    return girard_newton_sum(n) == target


def closed_form_coefficient(k: int, nvars: int | None = None) -> Polynomial:
    """((-1)^k / k!) sum_{s |- k} sgn(s)|C_s| Y_s in variables Y_1..Y_nvars."""
    nvars = k if nvars is None else nvars
    if k == 0:
        return Polynomial.constant(nvars)
    total = Polynomial(nvars)
    for s, coeff in signed_class_sizes(k):
        e = [0] * nvars
        for part in s:
            e[part - 1] += 1
        total = total + Polynomial(nvars, {tuple(e): coeff})
    return total * Fraction((-1) ** k, factorial(k))


def exp_series_coefficients(n: int) -> list[Polynomial]:
    """Coefficients a_0..a_n of exp(-sum_{k>=1} Y_k t^k / k) in Y_1..Y_n.

    Computed from the differential recursion m a_m = -sum_{k=1}^m Y_k a_{m-k}
    and checked against the closed partition formula for every order.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    nv = max(n, 1)
    ys = [Polynomial.variable(nv, i) for i in range(nv)]
    a = [Polynomial.constant(nv)]
    for m in range(1, n + 1):
        acc = Polynomial(nv)
        for k in range(1, m + 1):
            acc = acc + ys[k - 1] * a[m - k]
        a.append(acc * Fraction(-1, m))
    for k, ak in enumerate(a):
        if ak != closed_form_coefficient(k, nv):
            raise AssertionError(f"series coefficient a_{k} disagrees with the partition formula")
    return a


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to n."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def ordered_set_partitions(items: Sequence[int], sizes: Iterable[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Ordered set partitions of ``items`` into consecutive blocks of the given sizes."""
    sizes = tuple(sizes)
    if not sizes:
        if not items:
            yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for block in combinations(items, first):
        remaining = tuple(x for x in items if x not in block)
        for tail in ordered_set_partitions(remaining, rest):
            yield (block,) + tail
