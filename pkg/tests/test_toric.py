from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from hamlattice.toric import (FanCycle, GeometryError, Polytope2, WeightedProjectiveData, affine_length,
                              cut_corner, cut_scale, delta_lambda, det, fan_json, hj_continued_fraction,
                              hj_resolve, resolve_by_fractions, resolve_cone, self_intersections,
                              to_svg, triangle, wps_polytope)

L4 = [(0, 1), (1, 2), (2, 3), (1, 1), (0, -1), (-1, -4), (-1, -3), (-1, -2), (-1, -1), (-1, 0)]


def test_delta_half_l4_resolution():
    poly = delta_lambda(4, Fraction(1, 2))
    fan = hj_resolve(poly)
    assert fan.clockwise_from((0, 1)) == L4
    assert fan.is_smooth()
    sel = dict(zip(fan.rays, self_intersections(fan)))
    s = [sel[r] for r in L4]
    assert s == [-2, -2, -1, -2, -3, -1, -2, -2, -2, -1]
    assert sum(s) == 12 - 3 * len(s)


def test_delta_half_l5_resolution():
    fan = hj_resolve(delta_lambda(5, Fraction(1, 2)))
    sel = dict(zip(fan.rays, self_intersections(fan)))
    assert len(fan) == 11 and sel[(0, -1)] == -4
    assert sum(sel.values()) == 12 - 3 * 11


def test_vertex_orders():
    poly = delta_lambda(4, Fraction(1, 2))
    order = poly.clockwise_from((0, 2))
    orders = dict(poly.vertex_orders())
    assert [orders[v] for v in order] == [3, 2, 1, 4]


def test_smooth_fans():
    assert self_intersections(FanCycle(((1, 0), (0, 1), (-1, -1)))) == [1, 1, 1]
    assert self_intersections(FanCycle(((1, 0), (0, 1), (-1, 0), (0, -1)))) == [0, 0, 0, 0]
    with pytest.raises(GeometryError):
        self_intersections(FanCycle(((1, 0), (1, 2), (-1, -1))))


def test_affine_lengths():
    assert affine_length((3, 0), (0, 2)) == 1
    assert affine_length((2, 0), (0, Fraction(1, 2))) == Fraction(1, 2)
    assert affine_length((0, 0), (4, 6)) == 2
    with pytest.raises(GeometryError):
        affine_length((1, 1), (1, 1))


def test_weighted_projective():
    w = WeightedProjectiveData((1, 2, 3))
    assert w.A == 6 and w.a == (6, 3, 2)
    assert wps_polytope(w) == triangle(3, 2)
    assert [o for _, o in triangle(3, 2).vertex_orders()] == [1, 2, 3]


def test_polygon_validation():
    with pytest.raises(GeometryError):
        Polytope2(((0, 0), (0, 2), (3, 0)))
    with pytest.raises(GeometryError):
        Polytope2(((0, 0), (1, 0), (2, 0), (0, 1)))
    with pytest.raises(TypeError):
        Polytope2(((0.0, 0), (1, 0), (0, 1)))
    with pytest.raises(GeometryError):
        cut_corner(triangle(3, 2), 4, 1)


def test_resolve_cone_direction():
    assert resolve_cone((2, 3), (-1, 0)) == [(1, 2), (0, 1)]
    with pytest.raises(GeometryError):
        resolve_cone((-1, 0), (2, 3))


@pytest.mark.parametrize("m", range(2, 13))
def test_lattice_hull_matches_continued_fractions(m):
    from math import gcd
    for q in range(1, m):
        if gcd(m, q) == 1:
            assert resolve_cone((m, -q), (0, 1)) == resolve_by_fractions(m, q)


def test_continued_fraction():
    assert hj_continued_fraction(5, 2) == [3, 2]
    assert hj_continued_fraction(4, 3) == [2, 2, 2]
    with pytest.raises(ValueError):
        hj_continued_fraction(4, 2)


def test_cut_scale_and_figure_polygon():
    assert cut_scale(-3) == 2
    assert delta_lambda(4, Fraction(1, 2)).vertices[0] == (2, 0)


def test_svg_and_json():
    poly = delta_lambda(4, Fraction(1, 2))
    fan = hj_resolve(poly)
    svg = to_svg(poly, fan)
    assert svg.startswith("<svg") and "polygon" in svg
    j = fan_json(poly, fan, fan.clockwise_from((0, 1)))
    assert j["conormals"][:3] == [[0, 1], [1, 2], [2, 3]]


unimodular = st.sampled_from([((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1)),
                              ((1, 0), (0, -1)), ((3, 2), (1, 1)), ((1, -2), (0, 1))])
pts = st.tuples(st.fractions(-10, 10, max_denominator=6), st.fractions(-10, 10, max_denominator=6))


@settings(max_examples=1000)
@given(pts, pts, st.lists(unimodular, min_size=1, max_size=3),
       st.tuples(st.fractions(-5, 5, max_denominator=4), st.fractions(-5, 5, max_denominator=4)))
def test_affine_length_unimodular_invariance(p, q, mats, shift):
    assume(p != q)
    a, b = p, q
    for (r1, r2) in mats:
        assert det(r1, r2) in (1, -1)
        a = (r1[0] * a[0] + r1[1] * a[1], r2[0] * a[0] + r2[1] * a[1])
        b = (r1[0] * b[0] + r1[1] * b[1], r2[0] * b[0] + r2[1] * b[1])
    a = (a[0] + shift[0], a[1] + shift[1])
    b = (b[0] + shift[0], b[1] + shift[1])
    assert affine_length(a, b) == affine_length(p, q)
