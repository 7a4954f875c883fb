"""Lattice geometry on top of :mod:`polykern`.

Relative interiors are taken inside the affine hull, measured against the
lattice ``aff(P) ∩ Z^m``. That lattice is parametrized by a unimodular chart
obtained from a Smith (or column Hermite) normal form of the hull equations,
so that a polytope of any dimension becomes full-dimensional in chart
coordinates before its integer points are enumerated.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, lcm

from . import intlinalg as la
from .polykern import (
    EQ,
    GE,
    LE,
    EmptyPolytopeError,
    HPolytope,
    Kind,
    LinConstraint,
    PolyhedronError,
    _enumerate,
    dilate,
    eq,
    is_integral,
    vertices,
)

IntPoint = tuple[int, ...]


class NoLatticePointsError(PolyhedronError):
    """The affine hull contains no integer point."""


class DeltaBoundExceededError(PolyhedronError):
    def __init__(self, delta_max: int):
        super().__init__(f"no relative-interior lattice point up to dilation {delta_max}")
        self.delta_max = delta_max


@dataclass(frozen=True)
class LatticeChart:
    """Affine bijection ``Z^k -> aff(P) ∩ Z^m``, ``y -> origin + sum(y_i * basis_i)``.

    ``coords`` holds integer rows with ``coords @ basis^T = I``, so that
    ``forward(x) = coords @ (x - origin)`` inverts ``backward`` on the hull.
    """

    ambient_dim: int
    intrinsic_dim: int
    origin: IntPoint
    basis: tuple[IntPoint, ...]
    coords: tuple[IntPoint, ...]

    def forward(self, x: Sequence) -> tuple:
        diff = [a - b for a, b in zip(x, self.origin)]
        return tuple(la.dot(row, diff) for row in self.coords)

    def backward(self, y: Sequence) -> tuple:
        out = list(self.origin)
        for c, b in zip(y, self.basis):
            if c:
                for i, bi in enumerate(b):
                    out[i] += c * bi
        return tuple(out)

    def pull(self, p: HPolytope) -> HPolytope:
        """Express ``P`` in chart coordinates (constraints vanishing on the hull are dropped)."""
        if p.ambient_dim != self.ambient_dim:
            raise ValueError("chart and polytope live in different spaces")
        cs = []
        for c in p.constraints:
            a = tuple(la.dot(c.coeffs, b) for b in self.basis)
            rhs = c.rhs - c.value(self.origin)
            if any(a):
                cs.append(LinConstraint(a, rhs, c.kind))
            elif not _trivial_ok(c.kind, rhs):
                raise EmptyPolytopeError("constraint is violated on the whole affine hull")
        return HPolytope(self.intrinsic_dim, tuple(cs))

    def shifted(self, origin: Sequence[int]) -> LatticeChart:
        return LatticeChart(self.ambient_dim, self.intrinsic_dim, tuple(origin), self.basis, self.coords)

    def reparametrized(self, w: Sequence[Sequence[int]]) -> LatticeChart:
        """Change chart coordinates by a unimodular ``k x k`` matrix ``w`` (``y = w @ y'``)."""
        k = self.intrinsic_dim
        d = la.det(w) if k else 1
        if abs(d) != 1:
            raise ValueError("reparametrization must be unimodular")
        winv = [[int(x) for x in row] for row in la.inverse(w)] if k else []
        basis = tuple(
            tuple(sum(w[i][j] * self.basis[i][c] for i in range(k)) for c in range(self.ambient_dim))
            for j in range(k)
        )
        coords = tuple(tuple(x) for x in la.matmul(winv, self.coords)) if k else ()
        return LatticeChart(self.ambient_dim, k, self.origin, basis, coords)


def _trivial_ok(kind: Kind, rhs: Fraction) -> bool:
    # the constraint reads 0 <kind> rhs
    return {LE: rhs >= 0, GE: rhs <= 0, EQ: rhs == 0}[kind]


def affine_hull(p: HPolytope) -> list[LinConstraint]:
    """Independent equalities cutting out the affine hull of ``P``.

    Derived from the vertex set: ``(a, b)`` with ``<a, v> = b`` for every
    vertex, as a reduced row-echelon basis.
    """
    en = _enumerate(p)
    m = p.ambient_dim
    rows = [la.integral_scale(list(v) + [-1])[0] for v in en.vertices]
    rows = [rows[i] for i in la.independent_rows(rows)]
    return [eq(vec[:m], vec[m]).normalized() for vec in la.nullspace(rows, m + 1)]


def _hull_system(eqs: Sequence[LinConstraint]) -> tuple[list[list[int]], list[Fraction]]:
    mat, rhs = [], []
    for c in eqs:
        ints, s = la.integral_scale(c.coeffs)
        mat.append(ints)
        rhs.append(c.rhs * s)
    return mat, rhs


def _solve_snf(mat, rhs, m):
    d, u, v, vinv = la.smith_normal_form(mat, m) if mat else ([], [], la.identity(m), la.identity(m))
    r = sum(1 for i in range(min(len(d), m)) if d[i][i])
    urhs = la.matvec(u, rhs) if mat else []
    y = []
    for i, val in enumerate(urhs):
        if i < r:
            q = val / d[i][i]
            if Fraction(q).denominator != 1:
                return None, v, vinv, r
            y.append(int(q))
        elif val != 0:
            return None, v, vinv, r
    y += [0] * (m - r)
    return tuple(la.matvec(v, y)), v, vinv, r


def _solve_hermite(mat, rhs, m):
    if not mat:
        return tuple([0] * m), la.identity(m), la.identity(m), 0
    h, v, vinv = la.column_hermite(mat, m)
    r = la.rank(mat)
    y: list[Fraction] = []
    for c in range(r):
        i = next(i for i in range(len(h)) if h[i][c])
        q = (rhs[i] - sum(h[i][j] * y[j] for j in range(c))) / h[i][c]
        if Fraction(q).denominator != 1:
            return None, v, vinv, r
        y.append(q)
    y_full = [int(q) for q in y] + [0] * (m - r)
    origin = la.matvec(v, y_full)
    if la.matvec(mat, origin) != [Fraction(x) for x in rhs]:
        return None, v, vinv, r
    return tuple(origin), v, vinv, r


_SOLVERS = {"snf": _solve_snf, "hermite": _solve_hermite}


def _chart_from_equalities(eqs, m: int, method: str, scale=1) -> LatticeChart | None:
    mat, rhs = _hull_system(eqs)
    rhs = [x * scale for x in rhs]
    origin, v, vinv, r = _SOLVERS[method](mat, rhs, m)
    if origin is None:
        return None
    basis = tuple(tuple(v[i][j] for i in range(m)) for j in range(r, m))
    coords = tuple(tuple(row) for row in vinv[r:])
    return LatticeChart(m, m - r, tuple(int(x) for x in origin), basis, coords)


def lattice_chart(p: HPolytope, method: str = "snf") -> LatticeChart:
    """Unimodular chart of ``aff(P) ∩ Z^m``.

    ``method`` selects the normal form used: ``"snf"`` (Smith) or
    ``"hermite"`` (column Hermite); both give valid, generally different charts.
    """
    if method not in _SOLVERS:
        raise ValueError(f"unknown chart method {method!r}")
    chart = _chart_from_equalities(affine_hull(p), p.ambient_dim, method)
    if chart is None:
        raise NoLatticePointsError("affine hull has no integer points")
    return chart


# -- enumeration ---------------------------------------------------------------


def _integer_rows(p: HPolytope, strict: bool) -> list[tuple[list[int], list[int], int]]:
    """Inequalities as sparse integer rows ``sum(co * x[idx]) <= c``."""
    rows = []
    for a, b in p.inequalities():
        ints, s = la.integral_scale(a)
        rhs = b * s
        c = ceil(rhs) - 1 if strict else floor(rhs)
        idx = [j for j, x in enumerate(ints) if x]
        rows.append((idx, [ints[j] for j in idx], c))
    return rows


def _propagate(rows, lo: list[int], hi: list[int]) -> bool:
    changed = True
    while changed:
        changed = False
        for idx, co, c in rows:
            mins = 0
            for j, a in zip(idx, co):
                mins += a * lo[j] if a > 0 else a * hi[j]
            slack = c - mins
            if slack < 0:
                return False
            for j, a in zip(idx, co):
                if a > 0:
                    new = lo[j] + slack // a
                    if new < hi[j]:
                        hi[j] = new
                        changed = True
                else:
                    new = hi[j] - slack // -a
                    if new > lo[j]:
                        lo[j] = new
                        changed = True
                if lo[j] > hi[j]:
                    return False
    return True


def _search(rows, lo: list[int], hi: list[int]) -> list[IntPoint]:
    """Integer points in a box cut by integer rows, in lexicographic order."""
    out: list[IntPoint] = []
    n = len(lo)

    def rec(lo, hi):
        if not _propagate(rows, lo, hi):
            return
        j = next((i for i in range(n) if lo[i] < hi[i]), None)
        if j is None:
            out.append(tuple(lo))
            return
        for val in range(lo[j], hi[j] + 1):
            lo2, hi2 = lo[:], hi[:]
            lo2[j] = hi2[j] = val
            rec(lo2, hi2)

    rec(list(lo), list(hi))
    return out


class _LatticeContext:
    """Everything about ``P`` that is reused across dilations."""

    def __init__(self, p: HPolytope, method: str = "snf"):
        self.p = p
        self.method = method
        self.en = _enumerate(p)
        self.hull = affine_hull(p)
        self.m = p.ambient_dim
        # vertices over a common denominator, for cheap exact images
        self._scaled = []
        for v in self.en.vertices:
            den = lcm(*(c.denominator for c in v))
            self._scaled.append(([int(c * den) for c in v], den))
        self._bounds: dict[tuple, list[tuple[Fraction, Fraction]]] = {}

    def chart(self, k: int) -> LatticeChart | None:
        return _chart_from_equalities(self.hull, self.m, self.method, scale=k)

    def _coord_range(self, coords: tuple[IntPoint, ...]) -> list[tuple[Fraction, Fraction]]:
        """Per chart row, the range of ``<row, v>`` over the vertices of ``P``."""
        if coords not in self._bounds:
            out = []
            for row in coords:
                vals = [Fraction(la.dot(row, ints), den) for ints, den in self._scaled]
                out.append((min(vals), max(vals)))
            self._bounds[coords] = out
        return self._bounds[coords]

    def points(self, k: int, strict: bool, chart: LatticeChart | None = None) -> list[IntPoint]:
        if chart is None:
            chart = self.chart(k)
            if chart is None:
                return []
        q = chart.pull(dilate(self.p, k))
        if chart.intrinsic_dim == 0:
            # a single point; its relative interior is itself
            return [chart.origin]
        shift = [la.dot(row, chart.origin) for row in chart.coords]
        ranges = self._coord_range(chart.coords)
        lo = [ceil(k * a - s) for (a, _), s in zip(ranges, shift)]
        hi = [floor(k * b - s) for (_, b), s in zip(ranges, shift)]
        found = _search(_integer_rows(q, strict), lo, hi)
        return sorted(chart.backward(y) for y in found)


@lru_cache(maxsize=256)
def _context(p: HPolytope, method: str = "snf") -> _LatticeContext:
    return _LatticeContext(p, method)


def lattice_points(
    p: HPolytope, strict: bool = False, *, chart: LatticeChart | None = None
) -> list[IntPoint]:
    """Integer points of ``P`` (or of its relative interior), lexicographically.

    A caller-supplied ``chart`` must parametrize ``aff(P) ∩ Z^m``.
    """
    try:
        ctx = _context(p)
    except EmptyPolytopeError:
        return []
    return ctx.points(1, strict, chart)


@dataclass(frozen=True)
class DeltaResult:
    delta: int
    interior_points: tuple[IntPoint, ...]
    # chart of the lattice in aff(delta * P)
    chart: LatticeChart | None = field(default=None, compare=False)


def find_delta(p: HPolytope, delta_max: int, method: str = "snf") -> DeltaResult:
    """Smallest ``k <= delta_max`` whose dilation has relative-interior lattice points."""
    if delta_max < 1:
        raise ValueError("delta_max must be positive")
    ctx = _context(p, method)
    for k in range(1, delta_max + 1):
        chart = ctx.chart(k)
        if chart is None:
            continue
        pts = ctx.points(k, strict=True, chart=chart)
        if pts:
            return DeltaResult(k, tuple(pts), chart)
    raise DeltaBoundExceededError(delta_max)


def idp_witness(p: HPolytope, k: int) -> bool:
    """Whether every lattice point of ``k * P`` is a sum of ``k`` lattice points of ``P``."""
    if not is_integral(vertices(p)):
        raise ValueError("integer decomposition needs an integral polytope")
    if k < 1:
        raise ValueError("k must be positive")
    ctx = _context(p)
    base = ctx.points(1, strict=False)
    base_set = set(base)
    # integer points only need the floored integer rows
    levels = {j: _integer_rows(dilate(p, j), strict=False) for j in range(1, k)}
    hull_mat, hull_rhs = _hull_system(affine_hull(p))

    def inside(y: IntPoint, j: int) -> bool:
        if any(la.dot(a, y) != j * b for a, b in zip(hull_mat, hull_rhs)):
            return False
        return all(sum(a * y[i] for i, a in zip(idx, co)) <= c for idx, co, c in levels[j])

    memo: dict[tuple[IntPoint, int], bool] = {}

    def splits(x: IntPoint, j: int) -> bool:
        if j == 1:
            return x in base_set
        key = (x, j)
        if key not in memo:
            memo[key] = any(
                splits(y, j - 1) for b in base if inside(y := tuple(u - v for u, v in zip(x, b)), j - 1)
            )
        return memo[key]

    return all(splits(x, k) for x in ctx.points(k, strict=False))
