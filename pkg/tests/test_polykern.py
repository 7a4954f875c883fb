from fractions import Fraction

import pytest
from hypothesis import assume, given
from oracles import brute_vertices, exponent_rows
from strategies import boxed_polytopes, standard_type_polytopes

from tspread_gorenstein.intlinalg import rank
from tspread_gorenstein.polykern import (
    EmptyPolytopeError,
    HPolytope,
    LinConstraint,
    NotFullDimensionalError,
    NotStandardTypeError,
    UnboundedPolyhedronError,
    VPolytope,
    contains,
    dilate,
    dual,
    eq,
    ge,
    hrep_of_dual_vertices,
    irredundant_facets,
    is_full_dimensional,
    is_integral,
    le,
    translate,
    vertices,
)
from tspread_gorenstein.tspread import SpreadParams, build_polytope

F = Fraction


def box(*bounds):
    cs = []
    m = len(bounds)
    for i, (lo, hi) in enumerate(bounds):
        e = tuple(int(j == i) for j in range(m))
        cs += [ge(e, lo), le(e, hi)]
    return HPolytope(m, cs)


SQUARE = box((0, 1), (0, 1))
SIMPLEX = HPolytope(2, [ge((1, 0), 0), ge((0, 1), 0), le((1, 1), 1)])


def vset(poly):
    return set(vertices(poly).vertices)


def pts(*ps):
    return {tuple(F(c) for c in p) for p in ps}


class TestConstraints:
    def test_zero_row_rejected(self):
        with pytest.raises(ValueError):
            LinConstraint((0, 0), 0, "EQ")

    def test_normalized_flips_kind(self):
        c = le((F(-1, 2), 1), 3).normalized()
        assert c.coeffs == (1, -2) and c.rhs == -6 and c.kind.value == "GE"

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            HPolytope(3, [le((1, 0), 1)])


class TestDilateTranslate:
    def test_segment_dilation(self):
        seg = box((0, 1))
        assert vset(dilate(seg, 3)) == pts((0,), (3,))

    def test_identity_dilation(self):
        assert dilate(SQUARE, 1).constraints == SQUARE.constraints

    @pytest.mark.parametrize("k", [0, -2, F(-1, 3)])
    def test_nonpositive_factor(self, k):
        with pytest.raises(ValueError):
            dilate(SQUARE, k)

    def test_spread_dilation_holds_witnesses(self):
        p5 = dilate(build_polytope(SpreadParams(8, 3, 2)), 5)
        for r in (1, 2):
            assert contains(p5, (3, 1, 3, 1, 3, 1, r), strict=True)
        # r = 3 forces the eliminated coordinate a_8 = 15 - 15 to zero
        assert contains(p5, (3, 1, 3, 1, 3, 1, 3))
        assert not contains(p5, (3, 1, 3, 1, 3, 1, 3), strict=True)

    def test_translate_segment(self):
        assert vset(translate(box((0, 2)), (1,))) == pts((-1,), (1,))

    def test_translate_by_zero(self):
        assert translate(SQUARE, (0, 0)).constraints == SQUARE.constraints

    def test_translate_dimension_mismatch(self):
        with pytest.raises(ValueError):
            translate(SQUARE, (1, 2, 3))

    def test_shifted_spread_polytope_lower_bounds(self):
        q = translate(dilate(build_polytope(SpreadParams(10, 3, 2)), 3), (1,) * 9)
        lower = [c for c in q.constraints if c.kind.value == "GE" and sum(map(abs, c.coeffs)) == 1]
        assert len(lower) == 9
        assert all(c.rhs == -1 for c in lower)


class TestVertices:
    def test_square(self):
        assert vertices(SQUARE).vertices == tuple(sorted(pts((0, 0), (0, 1), (1, 0), (1, 1))))

    def test_simplex(self):
        assert vset(SIMPLEX) == pts((0, 0), (1, 0), (0, 1))

    def test_spread_polytope_vertices_are_generators(self):
        expected = {tuple(F(c) for c in row[:-1]) for row in exponent_rows(5, 2, 2)}
        assert vset(build_polytope(SpreadParams(5, 2, 2))) == expected

    def test_unbounded(self):
        with pytest.raises(UnboundedPolyhedronError):
            vertices(HPolytope(2, [ge((1, 0), 0), ge((0, 1), 0)]))

    def test_empty(self):
        with pytest.raises(EmptyPolytopeError):
            vertices(HPolytope(1, [ge((1,), 2), le((1,), 1)]))

    def test_empty_with_recession(self):
        # infeasible yet the constraint cone has rays; emptiness must win
        with pytest.raises(EmptyPolytopeError):
            vertices(HPolytope(2, [ge((1, 0), 0), le((1, 0), -1), ge((0, 1), 0)]))

    def test_lower_dimensional(self):
        seg = HPolytope(2, [eq((1, 1), 1), ge((1, 0), 0), ge((0, 1), 0)])
        assert vset(seg) == pts((0, 1), (1, 0))
        assert not is_full_dimensional(seg)

    def test_vertex_is_tight_on_dim_many(self):
        poly = build_polytope(SpreadParams(7, 3, 2))
        for v in vertices(poly):
            tight = [c for c in poly.constraints if c.value(v) == c.rhs]
            assert rank([list(c.coeffs) for c in tight]) == poly.ambient_dim
            assert contains(poly, v)


class TestFacets:
    def test_redundant_lower_bound(self):
        seg = HPolytope(1, [ge((1,), 0), ge((1,), -1), le((1,), 1)])
        assert irredundant_facets(seg).constraints == (ge((1,), 0), le((1,), 1))

    def test_duplicate_removed(self):
        doubled = HPolytope(2, SQUARE.constraints + (le((2, 0), 2),))
        assert len(irredundant_facets(doubled)) == 4

    def test_not_full_dimensional(self):
        seg = HPolytope(2, [eq((1, 1), 1), ge((1, 0), 0), ge((0, 1), 0)])
        with pytest.raises(NotFullDimensionalError):
            irredundant_facets(seg)

    def test_bounds_at_block_starts_redundant_for_dt_plus_one(self):
        # (10,3,3): alpha = (3,1,1,3,1,1,3,1,1) at delta = 6; the shifted
        # bounds y_i >= -3 at i = 1, 4, 7 do not survive
        alpha = (3, 1, 1, 3, 1, 1, 3, 1, 1)
        q = translate(dilate(build_polytope(SpreadParams(10, 3, 3)), 6), alpha)
        facets = irredundant_facets(q).constraints
        for i in (0, 3, 6):
            e = tuple(int(j == i) for j in range(9))
            assert ge(e, -3) not in facets
        assert len(facets) < len(q.constraints)


class TestDual:
    def test_square_is_cross_polytope(self):
        q = box((-1, 1), (-1, 1))
        assert set(dual(q).vertices) == pts((1, 0), (-1, 0), (0, 1), (0, -1))

    def test_square_bidual(self):
        q = box((-1, 1), (-1, 1))
        q2 = hrep_of_dual_vertices(dual(q))
        assert vset(q2) == vset(q)

    def test_origin_on_boundary(self):
        with pytest.raises(NotStandardTypeError):
            dual(SQUARE)

    def test_equalities_rejected(self):
        with pytest.raises(NotStandardTypeError):
            dual(HPolytope(2, [eq((1, 1), 0), ge((1, 0), -1), le((1, 0), 1)]))

    def test_non_integral_without_total_bound(self):
        # the projected description with only a_i >= 0, windows and the lower
        # sum bound; the all-ones point at level 3 is then interior
        p = SpreadParams(10, 3, 2)
        cs = build_polytope(p).constraints[:-1]
        q = translate(dilate(HPolytope(9, cs), 3), (1,) * 9)
        d = dual(q)
        assert not is_integral(d)
        assert (F(-1, 2),) * 8 + (0,) in d.vertices

    def test_integral_for_8_2_3(self):
        q = translate(dilate(build_polytope(SpreadParams(8, 2, 3)), 4), (1,) * 7)
        assert is_integral(dual(q))


def test_is_integral_examples():
    assert is_integral(VPolytope(2, [(1, 0), (0, 1)]))
    assert not is_integral(VPolytope(1, [(F(1, 2),)]))


def test_contains_examples():
    assert contains(SQUARE, (F(1, 2), F(1, 2)), strict=True)
    assert not contains(SQUARE, (1, F(1, 2)), strict=True)
    assert contains(SQUARE, (1, F(1, 2)))
    with pytest.raises(ValueError):
        contains(SQUARE, (1,))


# -- properties ----------------------------------------------------------------


@given(boxed_polytopes())
def test_roundtrip_vertices_facets(case):
    poly, _, _ = case
    try:
        v1 = vertices(poly)
    except EmptyPolytopeError:
        return
    assume(is_full_dimensional(poly))
    facets = irredundant_facets(poly)
    assert vertices(facets) == v1
    # dropping any facet must change the polytope
    for i in range(len(facets)):
        rest = HPolytope(poly.ambient_dim, facets.constraints[:i] + facets.constraints[i + 1 :])
        try:
            assert vertices(rest) != v1
        except UnboundedPolyhedronError:
            pass


@given(standard_type_polytopes())
def test_bidual_identity(q):
    d = dual(q)
    assert vset(hrep_of_dual_vertices(d)) == vset(q)
    # and the other way round: dual of the H-description of Q* gives Q back
    q_star = hrep_of_dual_vertices(VPolytope(q.ambient_dim, vset(q)))
    assert vset(q_star) == set(d.vertices)
    assert set(dual(q_star).vertices) == vset(q)


@given(standard_type_polytopes())
def test_facet_vertex_correspondence(q):
    assert len(dual(q)) == len(irredundant_facets(q))


@given(boxed_polytopes(with_equalities=True))
def test_exact_canonical_fractions(case):
    poly, _, _ = case
    try:
        vs = vertices(poly)
    except EmptyPolytopeError:
        return
    for v in vs:
        for c in v:
            assert isinstance(c, Fraction) and c.denominator > 0
    for c in poly.canonical().constraints:
        assert all(x.denominator == 1 for x in c.coeffs)
        lead = next(x for x in c.coeffs if x)
        assert lead > 0


@given(boxed_polytopes(with_equalities=True))
def test_vertices_match_subsystem_oracle(case):
    poly, raw, _ = case
    expected = brute_vertices(raw, poly.ambient_dim)
    if not expected:
        with pytest.raises(EmptyPolytopeError):
            vertices(poly)
        return
    assert vset(poly) == expected
