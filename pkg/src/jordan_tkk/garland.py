"""
Enveloping algebra of the current algebra sl2 (x) K[t]/(t^M) in PBW normal form.

Generators are indexed ``X*M + i`` for x(t^i) with X = 0, 1, 2 for f, h, e;
this is also the PBW order (f < h < e). A PBW monomial is a nondecreasing
tuple of generator indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

ORDER = ("f", "h", "e")
BRACKET = {
    ("h", "e"): ("e", 2), ("e", "h"): ("e", -2),
    ("h", "f"): ("f", -2), ("f", "h"): ("f", 2),
    ("e", "f"): ("h", 1), ("f", "e"): ("h", -1),
}

Mono = tuple[int, ...]


class CurrentUEA:
    """U(sl2 (x) K[t]/(t^M)) with memoised straightening."""

    def __init__(self, M: int):
        if M < 1:
            raise ValueError("M must be positive")
        self.M = M
        self._memo: dict[tuple[int, Mono], dict[Mono, Fraction]] = {}

    # generators ----------------------------------------------------------

    def gen(self, x: str, i: int) -> int:
        if not 0 <= i < self.M:
            raise ValueError("power of t outside the truncation")
        return ORDER.index(x) * self.M + i

    def split(self, g: int) -> tuple[str, int]:
        X, i = divmod(g, self.M)
        return ORDER[X], i

    def gen_name(self, g: int) -> str:
        x, i = self.split(g)
        return f"{x}(t^{i})" if i > 1 else (f"{x}(t)" if i == 1 else x)

    def bracket(self, g: int, k: int) -> tuple[int, int] | None:
        """[g, k] as (generator, coefficient), or None when zero."""
        x, i = self.split(g)
        y, j = self.split(k)
        r = BRACKET.get((x, y))
        if r is None or i + j >= self.M:
            return None
        z, c = r
        return self.gen(z, i + j), c

    # elements ------------------------------------------------------------

    def element(self, terms: Mapping[Mono, object]) -> "UEAElement":
        return UEAElement(self, {tuple(m): Fraction(c) for m, c in terms.items()})

    def one(self) -> "UEAElement":
        return self.element({(): 1})

    def generator(self, x: str, i: int) -> "UEAElement":
        return self.element({(self.gen(x, i),): 1})

    def current(self, x: str, a: Sequence) -> "UEAElement":
        """x(a) for a given by coefficients of 1, t, t^2, ... (truncated)."""
        return self.element({(self.gen(x, i),): c for i, c in enumerate(a) if c and i < self.M})

    # straightening -------------------------------------------------------

    def left_mul_gen(self, g: int, mono: Mono) -> dict[Mono, Fraction]:
        """Normal form of g * mono for a PBW monomial mono."""
        if not mono or g <= mono[0]:
            return {(g,) + mono: Fraction(1)}
        key = (g, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        m0, rest = mono[0], mono[1:]
        out: dict[Mono, Fraction] = {}
        # g m0 rest = m0 (g rest) + [g, m0] rest
        for w, c in self.left_mul_gen(g, rest).items():
            for w2, c2 in self.left_mul_gen(m0, w).items():
                _acc(out, w2, c * c2)
        br = self.bracket(g, m0)
        if br is not None:
            z, cz = br
            for w, c in self.left_mul_gen(z, rest).items():
                _acc(out, w, cz * c)
        self._memo[key] = out
        return out

    def left_mul(self, g: int, el: Mapping[Mono, Fraction]) -> dict[Mono, Fraction]:
        out: dict[Mono, Fraction] = {}
        for m, c in el.items():
            for w, c2 in self.left_mul_gen(g, m).items():
                _acc(out, w, c * c2)
        return out

    def normal_form(self, word: Sequence[int]) -> "UEAElement":
        """PBW normal form of the product of the generators in ``word``."""
        el: dict[Mono, Fraction] = {(): Fraction(1)}
        for g in reversed(list(word)):
            el = self.left_mul(g, el)
        return UEAElement(self, el)

    def mul(self, a: Mapping[Mono, Fraction], b: Mapping[Mono, Fraction]) -> dict[Mono, Fraction]:
        out: dict[Mono, Fraction] = {}
        for m, c in a.items():
            el = dict(b)
            for g in reversed(m):
                el = self.left_mul(g, el)
            for w, c2 in el.items():
                _acc(out, w, c * c2)
        return out

    def has_e(self, mono: Mono) -> bool:
        return bool(mono) and mono[-1] >= 2 * self.M


def _acc(out: dict, k, c) -> None:
    v = out.get(k, 0) + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


@dataclass(eq=False)
class UEAElement:
    parent: CurrentUEA
    terms: dict[Mono, Fraction]

    def __post_init__(self):
        self.terms = {m: c for m, c in self.terms.items() if c}

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.parent.one() * other
        return isinstance(other, UEAElement) and self.parent.M == other.parent.M and self.terms == other.terms

    def __add__(self, other: "UEAElement") -> "UEAElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return UEAElement(self.parent, out)

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.parent, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def __mul__(self, other) -> "UEAElement":
        if isinstance(other, (int, Fraction)):
            return UEAElement(self.parent, {m: c * other for m, c in self.terms.items()})
        return UEAElement(self.parent, self.parent.mul(self.terms, other.terms))

    __rmul__ = lambda self, other: self * other

    def __pow__(self, k: int) -> "UEAElement":
        out = self.parent.one()
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            word = "*".join(self.parent.gen_name(g) for g in m) or "1"
            parts.append(f"{c}*{word}")
        return " + ".join(parts)


def pi(el: UEAElement) -> UEAElement:
    """Drop every PBW monomial containing an e-factor."""
    P = el.parent
    return UEAElement(P, {m: c for m, c in el.terms.items() if not P.has_e(m)})


# ---------------------------------------------------------------------------
# polynomial helpers in K[t]/(t^M)

def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction], M: int) -> list[Fraction]:
    out = [Fraction(0)] * M
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y and i + j < M:
                    out[i + j] += x * y
    return out


def _poly_power(a: Sequence[Fraction], k: int, M: int) -> list[Fraction]:
    out = [Fraction(1)] + [Fraction(0)] * (M - 1)
    for _ in range(k):
        out = _poly_mul(out, a, M)
    return out


def _normalize(a: Sequence, M: int) -> list[Fraction]:
    a = [Fraction(x) for x in a]
    if any(a[M:]):
        raise ValueError("element has terms beyond the truncation")
    return (a + [Fraction(0)] * M)[:M]


def default_truncation(nmax: int, a: Sequence) -> int:
    deg = max((i for i, c in enumerate(a) if c), default=0)
    return nmax * max(deg, 1) + 1


# ---------------------------------------------------------------------------
# the two sides of the formula

def garland_lhs(m: int, n: int, M: int, a: Sequence, uea: CurrentUEA | None = None) -> UEAElement:
    """pi(e^(m) f(a)^(n)) with divided powers x^(k) = x^k / k!."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    P = uea or CurrentUEA(M)
    a = _normalize(a, M)
    fa = P.current("f", a)
    el = (fa ** n * Fraction(1, factorial(n))).terms
    e = P.gen("e", 0)
    for _ in range(m):
        # U(G) G_2 is a left ideal, so e-containing terms can be dropped early
        el = {w: c for w, c in P.left_mul(e, el).items() if not P.has_e(w)}
    return UEAElement(P, {w: c * Fraction(1, factorial(m)) for w, c in el.items()})


def garland_rhs(m: int, n: int, M: int, a: Sequence, uea: CurrentUEA | None = None) -> UEAElement:
    """Coefficient of s^m in (-1)^m (sum_r f(a^{r+1}) s^r)^(n-m) exp(-sum_k h(a^k) s^k / k).

    The f-series factor stands to the left of the exponential.
    """
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    P = uea or CurrentUEA(M)
    a = _normalize(a, M)
    zero = UEAElement(P, {})
    # series are lists of UEA coefficients indexed by the power of s, truncated at s^m
    fser = [P.current("f", _poly_power(a, r + 1, M)) for r in range(m + 1)]
    xser = [zero] + [P.current("h", _poly_power(a, k, M)) * Fraction(-1, k) for k in range(1, m + 1)]

    def smul(x, y):
        out = [zero] * (m + 1)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j in range(m + 1 - i):
                if y[j]:
                    out[i + j] = out[i + j] + xi * y[j]
        return out

    one = [P.one()] + [zero] * m
    fpow = one
    for _ in range(n - m):
        fpow = smul(fpow, fser)
    fpow = [c * Fraction(1, factorial(n - m)) for c in fpow]
    expo = [zero] * (m + 1)
    term = one
    for j in range(m + 1):
        if j:
            term = [c * Fraction(1, j) for c in smul(term, xser)]
        expo = [u + v for u, v in zip(expo, term)]
    total = smul(fpow, expo)
    return total[m] * ((-1) ** m)


@dataclass
class GarlandReport:
    nmax: int
    M: int
    a: list[str]
    rows: list[dict]

    @property
    def ok(self) -> bool:
        return all(r["pass"] for r in self.rows)

    @property
    def first_mismatch(self) -> tuple[int, int] | None:
        for r in self.rows:
            if not r["pass"]:
                return r["m"], r["n"]
        return None

    def to_dict(self) -> dict:
        return {"nmax": self.nmax, "M": self.M, "a": self.a, "ok": self.ok,
                "first_mismatch": self.first_mismatch, "rows": self.rows}


def verify_garland(nmax: int, a: Sequence, M: int | None = None) -> GarlandReport:
    """Compare both sides for all 0 <= m <= n <= nmax."""
    a = [Fraction(x) for x in a]
    M = M or default_truncation(nmax, a)
    a = _normalize(a, M)
    P = CurrentUEA(M)
    rows = []
    for n in range(nmax + 1):
        for m in range(n + 1):
            lhs = garland_lhs(m, n, M, a, P)
            rhs = garland_rhs(m, n, M, a, P)
            rows.append({"m": m, "n": n, "terms": len(lhs.terms), "pass": lhs == rhs})
    return GarlandReport(nmax, M, [str(c) for c in a], rows)
