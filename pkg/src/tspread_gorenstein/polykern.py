"""Exact rational polyhedral kernel.

H-polytopes (constraint lists) and V-polytopes (vertex lists) over
:class:`fractions.Fraction`, with vertex enumeration by an integer
double-description method, facet extraction by vertex incidence, and the
polar dual of a polytope containing the origin in its interior.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from . import intlinalg as la

Rational = Fraction
Point = tuple[Fraction, ...]


class PolyhedronError(Exception):
    """Base class for geometric failures."""


class UnboundedPolyhedronError(PolyhedronError):
    pass


class EmptyPolytopeError(PolyhedronError):
    pass


class NotStandardTypeError(PolyhedronError):
    """The origin is not an interior point."""


class NotFullDimensionalError(PolyhedronError):
    pass


class Kind(str, enum.Enum):
    LE = "LE"
    GE = "GE"
    EQ = "EQ"


LE, GE, EQ = Kind.LE, Kind.GE, Kind.EQ


def _as_point(x: Iterable) -> Point:
    return tuple(Fraction(c) for c in x)


@dataclass(frozen=True)
class LinConstraint:
    """``<coeffs, x> kind rhs``."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    kind: Kind = LE

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_point(self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        object.__setattr__(self, "kind", Kind(self.kind))
        if not any(self.coeffs):
            raise ValueError("constraint with all-zero coefficients")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def value(self, x: Sequence) -> Fraction:
        return sum((a * c for a, c in zip(self.coeffs, x) if a), Fraction(0))

    def holds(self, x: Sequence, strict: bool = False) -> bool:
        v = self.value(x)
        if self.kind is EQ:
            return v == self.rhs
        if self.kind is LE:
            return v < self.rhs if strict else v <= self.rhs
        return v > self.rhs if strict else v >= self.rhs

    def as_le(self) -> list[tuple[Point, Fraction]]:
        """The constraint as ``<a, x> <= b`` pairs (two for an equality)."""
        neg = (tuple(-a for a in self.coeffs), -self.rhs)
        if self.kind is LE:
            return [(self.coeffs, self.rhs)]
        if self.kind is GE:
            return [neg]
        return [(self.coeffs, self.rhs), neg]

    def normalized(self) -> LinConstraint:
        """Integral coefficients with content 1 and a positive leading entry.

        Scaling an inequality by a negative number flips LE and GE.
        """
        ints, s = la.integral_scale(self.coeffs)
        rhs = self.rhs * s
        kind = self.kind
        lead = next(a for a in ints if a)
        if lead < 0:
            ints = [-a for a in ints]
            rhs = -rhs
            kind = {LE: GE, GE: LE, EQ: EQ}[kind]
        return LinConstraint(tuple(ints), rhs, kind)

    def _sort_key(self):
        return (self.kind.value, self.coeffs, self.rhs)

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs, 1):
            if not a:
                continue
            mag = "" if abs(a) == 1 else f"{abs(a)}*"
            sign = "-" if a < 0 else "+"
            terms.append(f"{sign} {mag}x{i}")
        lhs = " ".join(terms)
        lhs = lhs[2:] if lhs.startswith("+ ") else "-" + lhs[2:]
        op = {LE: "<=", GE: ">=", EQ: "="}[self.kind]
        return f"{lhs} {op} {self.rhs}"


def le(coeffs, rhs) -> LinConstraint:
    return LinConstraint(coeffs, rhs, LE)


def ge(coeffs, rhs) -> LinConstraint:
    return LinConstraint(coeffs, rhs, GE)


def eq(coeffs, rhs) -> LinConstraint:
    return LinConstraint(coeffs, rhs, EQ)


@dataclass(frozen=True)
class HPolytope:
    ambient_dim: int
    constraints: tuple[LinConstraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if c.dim != self.ambient_dim:
                raise ValueError(f"constraint of length {c.dim} in ambient dimension {self.ambient_dim}")

    def __len__(self) -> int:
        return len(self.constraints)

    def inequalities(self) -> list[tuple[Point, Fraction]]:
        return [pair for c in self.constraints if c.kind is not EQ for pair in c.as_le()]

    def equalities(self) -> list[LinConstraint]:
        return [c for c in self.constraints if c.kind is EQ]

    def canonical(self) -> HPolytope:
        """Normalized, deduplicated, sorted constraints (same point set)."""
        cs = sorted({c.normalized() for c in self.constraints}, key=LinConstraint._sort_key)
        return HPolytope(self.ambient_dim, tuple(cs))

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.constraints)


@dataclass(frozen=True)
class VPolytope:
    """Vertex description; vertices are kept deduplicated in lexicographic order."""

    ambient_dim: int
    vertices: tuple[Point, ...] = field(default=())

    def __post_init__(self):
        vs = sorted({_as_point(v) for v in self.vertices})
        for v in vs:
            if len(v) != self.ambient_dim:
                raise ValueError(f"vertex of length {len(v)} in ambient dimension {self.ambient_dim}")
        object.__setattr__(self, "vertices", tuple(vs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def _check_dim(p: HPolytope, x: Sequence) -> None:
    if len(x) != p.ambient_dim:
        raise ValueError(f"vector of length {len(x)} for ambient dimension {p.ambient_dim}")


def dilate(p: HPolytope, k) -> HPolytope:
    """The polytope ``k * P`` for a positive rational ``k``."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError(f"dilation factor must be positive, got {k}")
    if k == 1:
        return p
    return HPolytope(
        p.ambient_dim,
        tuple(LinConstraint(c.coeffs, c.rhs * k, c.kind) for c in p.constraints),
    )


def translate(p: HPolytope, v: Sequence) -> HPolytope:
    """The polytope ``P - v``."""
    _check_dim(p, v)
    v = _as_point(v)
    return HPolytope(
        p.ambient_dim,
        tuple(LinConstraint(c.coeffs, c.rhs - c.value(v), c.kind) for c in p.constraints),
    )


def contains(p: HPolytope, x: Sequence, strict: bool = False) -> bool:
    """Membership; ``strict`` asks for strict inequalities (equalities stay exact)."""
    _check_dim(p, x)
    return all(c.holds(x, strict) for c in p.constraints)


# -- double description --------------------------------------------------------


@dataclass(frozen=True)
class _Enumeration:
    """Vertices of an H-polytope with the incidence data behind them."""

    vertices: tuple[Point, ...]
    ineqs: tuple[tuple[Point, Fraction], ...]
    # bit i of tight[v] set iff inequality i is tight at vertex v
    tight: tuple[int, ...]

    @cached_property
    def affine_dim(self) -> int:
        v0 = self.vertices[0]
        return la.rank([[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]])


def _homogeneous_rows(p: HPolytope) -> tuple[list[list[int]], list[list[int]]]:
    # z = (x0, x): each <a,x> <= b becomes b*x0 - <a,x> >= 0
    ineq = [la.integral_scale((b,) + tuple(-c for c in a))[0] for a, b in p.inequalities()]
    ineq.append([1] + [0] * p.ambient_dim)
    eqs = [la.integral_scale((c.rhs,) + tuple(-a for a in c.coeffs))[0] for c in p.equalities()]
    return ineq, eqs


def _dd_cone(rows: list[list[int]], dim: int) -> list[list[int]]:
    """Extreme rays of the pointed cone ``{w in R^dim : rows @ w >= 0}``.

    ``rows`` must have rank ``dim``. Rays come back as primitive integer vectors.
    """
    init = la.independent_rows(rows)
    assert len(init) == dim
    binv = la.inverse([rows[i] for i in init])
    rays = [la.integral_scale([binv[r][c] for r in range(dim)])[0] for c in range(dim)]
    # zero set of initial ray c: every chosen row except the c-th
    all_init = 0
    for i in init:
        all_init |= 1 << i
    zeros = [all_init & ~(1 << init[c]) for c in range(dim)]
    need = dim - 2
    for h_idx, h in enumerate(rows):
        if h_idx in init:
            continue
        bit = 1 << h_idx
        vals = [la.dot(h, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        zer = [i for i, s in enumerate(vals) if s == 0]
        if not neg:
            for i in zer:
                zeros[i] |= bit
            continue
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | bit for i in zer]
        if pos:
            # by_row[j]: bitset of rays lying on row j
            by_row: dict[int, int] = {}
            for k, zk in enumerate(zeros):
                rb = 1 << k
                while zk:
                    low = zk & -zk
                    j = low.bit_length() - 1
                    by_row[j] = by_row.get(j, 0) | rb
                    zk ^= low
            everything = (1 << len(rays)) - 1
            for ip in pos:
                zp = zeros[ip]
                for in_ in neg:
                    z = zp & zeros[in_]
                    if z.bit_count() < need:
                        continue
                    # adjacent iff no third ray lies on every row of z
                    pair = (1 << ip) | (1 << in_)
                    common = everything
                    zz = z
                    while zz:
                        low = zz & -zz
                        common &= by_row[low.bit_length() - 1]
                        if common == pair:
                            break
                        zz ^= low
                    if common != pair:
                        continue
                    sp, sn = vals[ip], vals[in_]
                    r = la.primitive([sp * a - sn * b for a, b in zip(rays[in_], rays[ip])])
                    new_rays.append(r)
                    new_zeros.append(z | bit)
        rays, zeros = new_rays, new_zeros
        if not rays:
            break
    return rays


@lru_cache(maxsize=128)
def _enumerate(p: HPolytope) -> _Enumeration:
    m = p.ambient_dim
    ineq, eqs = _homogeneous_rows(p)
    # parametrize the equality solution space: z = N @ w
    if eqs:
        basis = la.nullspace(eqs, m + 1)
        if not basis:
            raise EmptyPolytopeError("equalities admit only the trivial homogeneous solution")
        nmat = la.transpose(basis)
    else:
        nmat = la.identity(m + 1)
    rows = [la.primitive(r) for r in la.matmul(ineq, nmat)]
    # split off the lineality space by restricting to the row space
    nonzero = [r for r in rows if any(r)]
    if not nonzero:
        raise UnboundedPolyhedronError("no bounding inequalities")
    red, _ = la.rref(nonzero)
    lineal = len(nmat[0]) - len(red)
    rmat = la.transpose([la.integral_scale(r)[0] for r in red])
    crow = [la.primitive(r) for r in la.matmul(rows, rmat)]
    rays = _dd_cone(crow, len(red))
    full = la.matmul(nmat, rmat)
    points: list[Point] = []
    homog: list[list[int]] = []
    recession = False
    for r in rays:
        z = la.matvec(full, r)
        if z[0] == 0:
            recession = True
        else:
            if z[0] < 0:
                z = [-c for c in z]
            points.append(tuple(Fraction(c, z[0]) for c in z[1:]))
            homog.append(z)
    if not points:
        raise EmptyPolytopeError("no vertices")
    if recession or lineal:
        raise UnboundedPolyhedronError("polyhedron has a recession direction")
    order = sorted(range(len(points)), key=points.__getitem__)
    points = [points[i] for i in order]
    homog = [homog[i] for i in order]
    ineqs = tuple(p.inequalities())
    tight = []
    for z in homog:
        bits = 0
        for i, row in enumerate(ineq[:-1]):
            if not la.dot(row, z):
                bits |= 1 << i
        tight.append(bits)
    return _Enumeration(tuple(points), ineqs, tuple(tight))


def vertices(p: HPolytope) -> VPolytope:
    """Vertex set of a bounded, nonempty H-polytope."""
    return VPolytope(p.ambient_dim, _enumerate(p).vertices)


def is_full_dimensional(p: HPolytope) -> bool:
    return _enumerate(p).affine_dim == p.ambient_dim


def irredundant_facets(p: HPolytope) -> HPolytope:
    """Minimal inequality description of a full-dimensional bounded polytope.

    An inequality survives iff the vertices on it span a hyperplane; among
    inequalities touching the same vertex set only one (the first in canonical
    order) is kept.
    """
    en = _enumerate(p)
    if en.affine_dim != p.ambient_dim:
        raise NotFullDimensionalError(
            f"polytope has dimension {en.affine_dim} in R^{p.ambient_dim}; chart it first"
        )
    m = p.ambient_dim
    seen: dict[int, LinConstraint] = {}
    for i, (a, b) in enumerate(en.ineqs):
        on = [v for v, bits in zip(en.vertices, en.tight) if bits >> i & 1]
        if len(on) < m:
            continue
        v0 = on[0]
        if la.rank([[x - y for x, y in zip(v, v0)] for v in on[1:]]) != m - 1:
            continue
        key = frozenset(on)
        c = le(a, b).normalized()
        if key not in seen or c._sort_key() < seen[key]._sort_key():
            seen[key] = c
    cs = sorted(seen.values(), key=LinConstraint._sort_key)
    return HPolytope(m, tuple(cs))


def dual(q: HPolytope) -> VPolytope:
    """Vertices of the polar dual ``{y : <y, x> <= 1 for x in Q}``.

    Each facet ``<a, x> <= b`` of ``Q`` (necessarily ``b > 0``) contributes the
    vertex ``a / b``.
    """
    origin = (Fraction(0),) * q.ambient_dim
    if q.equalities() or not contains(q, origin, strict=True):
        raise NotStandardTypeError("origin is not an interior point")
    facets = irredundant_facets(q)
    verts = []
    for c in facets.constraints:
        ((a, b),) = c.as_le()
        assert b > 0
        verts.append(tuple(x / b for x in a))
    return VPolytope(q.ambient_dim, verts)


def hrep_of_dual_vertices(v: VPolytope) -> HPolytope:
    """The H-polytope ``{x : <u, x> <= 1 for every vertex u}``."""
    return HPolytope(v.ambient_dim, tuple(le(u, 1) for u in v.vertices if any(u)))


def is_integral(v: VPolytope) -> bool:
    return all(c.denominator == 1 for p in v.vertices for c in p)
