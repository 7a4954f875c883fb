"""t-spread monomials, the sorting operator and the polytope of a t-spread Veronese algebra."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations, pairwise

from . import intlinalg as la
from .polykern import HPolytope, LinConstraint, ge, le


class InvalidSpreadParams(ValueError):
    pass


class UnsupportedSpreadError(InvalidSpreadParams):
    """``t = 0``: ordinary (non-squarefree) Veronese algebras are out of scope."""


@dataclass(frozen=True, order=True)
class SpreadParams:
    n: int
    d: int
    t: int

    def __post_init__(self):
        for name in ("n", "d", "t"):
            if not isinstance(getattr(self, name), int):
                raise InvalidSpreadParams(f"{name} must be an integer")
        if self.t == 0:
            raise UnsupportedSpreadError("t = 0 (classical Veronese) is not supported; requires t >= 1")
        if self.t < 0:
            raise InvalidSpreadParams("requires t >= 1")
        if self.d < 1:
            raise InvalidSpreadParams("requires d >= 1")
        if self.n < 1:
            raise InvalidSpreadParams("requires n >= 1")
        if self.n <= self.t * (self.d - 1):
            raise InvalidSpreadParams(f"requires n > t(d-1): got n={self.n}, t(d-1)={self.t * (self.d - 1)}")

    def __str__(self) -> str:
        return f"({self.n},{self.d},{self.t})"


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of a monomial in ``x_1, ..., x_n``."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> Monomial:
        """Squarefree monomial from 1-based variable indices."""
        exps = [0] * n
        for i in support:
            exps[i - 1] += 1
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def indices(self) -> list[int]:
        """1-based variable indices with multiplicity, ascending."""
        return [i for i, e in enumerate(self.exponents, 1) for _ in range(e)]

    def __lt__(self, other: Monomial) -> bool:
        return self.exponents < other.exponents

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents, 1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) or "1"


def generate(p: SpreadParams) -> list[Monomial]:
    """All t-spread monomials of degree d in n variables, descending lexicographically."""
    # i_j = c_j + j(t-1) is an order-preserving bijection from d-subsets of a
    # smaller ground set onto t-spread supports
    shrink = p.n - (p.d - 1) * (p.t - 1)
    out = []
    for c in combinations(range(1, shrink + 1), p.d):
        out.append(Monomial.from_support(p.n, (x + j * (p.t - 1) for j, x in enumerate(c))))
    return out


def is_tspread(m: Monomial, t: int) -> bool:
    if any(e > 1 for e in m.exponents):
        return False
    idx = m.indices()
    return all(b - a >= t for a, b in pairwise(idx))


def sort_pair(u: Monomial, v: Monomial) -> tuple[Monomial, Monomial]:
    """Interleave the merged index sequence: odd positions to the first factor, even to the second."""
    if u.n != v.n:
        raise ValueError("monomials live in different polynomial rings")
    if u.degree != v.degree:
        raise ValueError(f"degree mismatch: {u.degree} vs {v.degree}")
    merged = sorted(u.indices() + v.indices())
    return Monomial.from_support(u.n, merged[0::2]), Monomial.from_support(u.n, merged[1::2])


def is_sorted_tuple(ms: Sequence[Monomial]) -> bool:
    return all(sort_pair(a, b) == (a, b) for i, a in enumerate(ms) for b in ms[i + 1 :])


def exponent_matrix(p: SpreadParams) -> list[list[int]]:
    return [list(m.exponents) for m in generate(p)]


def krull_dimension(p: SpreadParams) -> int:
    return la.rank(exponent_matrix(p))


def is_polynomial_ring(p: SpreadParams) -> bool:
    return len(generate(p)) == krull_dimension(p)


def reduce(p: SpreadParams) -> SpreadParams:
    """Drop variables no generator uses; for ``n < dt`` this lands on ``(d t', d, t')``."""
    if p.n >= p.d * p.t:
        return p
    t2 = p.n - (p.d - 1) * p.t
    return SpreadParams(p.d * t2, p.d, t2)


def unused_variables(p: SpreadParams) -> list[int]:
    """1-based indices of the variables that divide no generator."""
    if p.n >= p.d * p.t:
        return []
    # the s-th support index reaches at most n - (d-s)t while the (s+1)-th
    # starts at st + 1; the dt - n variables in between are never touched
    gap = p.d * p.t - p.n
    return [j for s in range(1, p.d) for j in range(s * p.t - gap + 1, s * p.t + 1)]


def build_polytope(p: SpreadParams) -> HPolytope:
    """The generator polytope in R^{n-1}, with ``a_n = d - sum(a_i)`` eliminated."""
    m = p.n - 1

    def window(lo: int, hi: int) -> tuple[int, ...]:
        # indicator of a_lo .. a_hi, 1-based inclusive
        return tuple(int(lo <= i <= hi) for i in range(1, m + 1))

    cs: list[LinConstraint] = []
    for i in range(1, m + 1):
        cs.append(ge(window(i, i), 0))
    for i in range(1, p.n - p.t + 1):
        cs.append(le(window(i, i + p.t - 1), 1))
    if p.n - p.t >= 1 and p.d > 1:
        cs.append(ge(window(1, p.n - p.t), p.d - 1))
    if m >= 1:
        cs.append(le(window(1, m), p.d))
    return HPolytope(m, tuple(cs))


def lift(p: SpreadParams, a: Sequence[int], level: int = 1) -> tuple[int, ...]:
    """Restore the eliminated coordinate of a point of ``level * P``."""
    return tuple(a) + (level * p.d - sum(a),)


def embed(p: SpreadParams, a: Sequence[int], level: int = 1) -> tuple[int, ...]:
    """Map a point of ``level * build_polytope(reduce(p))`` into the R^{n-1} of ``p`` itself.

    Zeros are inserted for the unused variables; the last variable is always
    used, so the eliminated coordinate stays last.
    """
    q = reduce(p)
    full = iter(lift(q, a, level))
    skip = set(unused_variables(p))
    out = [0 if j in skip else next(full) for j in range(1, p.n + 1)]
    return tuple(out[:-1])
