import json
from fractions import Fraction
from math import floor, ceil

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import small_fractions
from mdsblowup.errors import DegenerateTriangle, NonCanonicalShape, NotAWps
from mdsblowup.lattice import (RationalTriangle, area, contains, generates_lattice,
                               homothety_ratio, lattice_points, normal_fan_rays,
                               parallel_triangle, positive_relation, triangle_from_base,
                               wps_weights)

points = st.tuples(small_fractions(), small_fractions())


def shoelace(pts):
    (a, b), (c, d), (e, f) = pts
    return abs((c - a) * (f - b) - (e - a) * (d - b)) / 2


def brute_lattice_points(T):
    xs = [v[0] for v in T.vertices]
    ys = [v[1] for v in T.vertices]
    out = []
    for i in range(floor(min(xs)), ceil(max(xs)) + 1):
        for j in range(floor(min(ys)), ceil(max(ys)) + 1):
            # barycentric sign test, independent of the half-plane code
            (a, b), (c, d), (e, f) = T.vertices
            s1 = (c - a) * (j - b) - (d - b) * (i - a)
            s2 = (e - c) * (j - d) - (f - d) * (i - c)
            s3 = (a - e) * (j - f) - (b - f) * (i - e)
            if (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0):
                out.append((i, j))
    return sorted(out)


@st.composite
def triangles(draw):
    pts = draw(st.lists(points, min_size=3, max_size=3))
    try:
        return RationalTriangle(*pts)
    except DegenerateTriangle:
        assume(False)


def test_p5_77_101_triangle(p5_77_101):
    assert area(p5_77_101) == Fraction(385, 202)
    assert sorted(wps_weights(normal_fan_rays(p5_77_101))) == [5, 77, 101]


def test_p16_97_683_triangle():
    T = RationalTriangle((Fraction(-1, 16), 0), (1 + Fraction(25, 97), 0), (2, 3))
    assert sorted(wps_weights(normal_fan_rays(T))) == [16, 97, 683]


def test_p2_standard_simplex():
    T = RationalTriangle((0, 0), (1, 0), (0, 1))
    rays = normal_fan_rays(T)
    assert sorted(rays) == [(-1, -1), (0, 1), (1, 0)]
    assert wps_weights(rays) == (1, 1, 1)
    assert sorted(normal_fan_rays(T, outward=True)) == [(-1, 0), (0, -1), (1, 1)]


def test_not_a_wps():
    rays = [(2, 1), (-1, 1), (-1, -2)]  # index-3 sublattice, P^2 / (Z/3)
    assert positive_relation(rays) == (1, 1, 1)
    assert not generates_lattice(rays)
    with pytest.raises(NotAWps) as info:
        wps_weights(rays)
    assert info.value.weights == (1, 1, 1)


def test_degenerate():
    with pytest.raises(DegenerateTriangle):
        RationalTriangle((0, 0), (1, 1), (2, 2))


def test_canonical_shape():
    left, right = Fraction(-1, 9), Fraction(5, 14)
    T = triangle_from_base(left, right, 2 / (1 - left), 2 / (1 - right))
    assert T.vertices[0] == (Fraction(-1, 9), 0)
    assert T.canonical().apex == (1, 2)
    with pytest.raises(NonCanonicalShape):
        RationalTriangle((0, 0), (2, 3), (Fraction(125, 101), Fraction(-5, 101))).canonical()


@given(triangles())
def test_area_and_lattice_points(T):
    assert area(T) == shoelace(T.vertices)
    assert lattice_points(T) == brute_lattice_points(T)


@given(triangles())
def test_vertex_order_is_canonical(T):
    v = T.vertices
    assert v[0] == min(v)
    assert RationalTriangle(v[2], v[1], v[0]) == T
    assert RationalTriangle.parse(T.to_text()) == T
    assert RationalTriangle.from_dict(json.loads(json.dumps(T.to_dict()))) == T


@given(triangles())
def test_inward_normals_and_relation(T):
    rays = normal_fan_rays(T)
    for (u, c), v in zip(T.halfplanes(), T.vertices):
        assert u[0] * v[0] + u[1] * v[1] > c  # opposite vertex strictly inside
    a, b, c = positive_relation(rays)
    assert min(a, b, c) > 0
    assert all(a * r1 + b * r2 + c * r3 == 0 for r1, r2, r3 in zip(*rays))
    assert [(-x, -y) for x, y in rays] == normal_fan_rays(T, outward=True)


@given(triangles(), small_fractions(1, 4), small_fractions(-3, 3), small_fractions(-3, 3))
def test_scale_translate(T, k, dx, dy):
    assume(k > 0)
    assert area(T.scale(k)) == k * k * area(T)
    moved = T.translate(dx, dy)
    assert area(moved) == area(T)
    assert normal_fan_rays(moved) == normal_fan_rays(T)
    assert homothety_ratio(T.vertices, T) == 1
    assert homothety_ratio(T.scale(k).vertices, T) == k


@given(triangles())
def test_contains(T):
    assert contains(T, T.vertices)
    cx = sum(v[0] for v in T.vertices) / 3
    cy = sum(v[1] for v in T.vertices) / 3
    assert contains(T, (cx, cy))
    far = max(abs(v[0]) for v in T.vertices) + 1
    assert not contains(T, (far, cy))


def test_parallel_triangle():
    delta = RationalTriangle((Fraction(-1, 9), 0), (Fraction(5, 14), 0), (1, 2))
    base = parallel_triangle(delta, 0, 1)
    assert base.vertices[0] == (0, 0) and base.vertices[1] == (1, 0)
    ratio = Fraction(1) / (Fraction(5, 14) + Fraction(1, 9))
    assert area(base) == ratio ** 2 * area(delta)
    assert lattice_points(base) == [(0, 0), (1, 0), (1, 1)]


@pytest.mark.parametrize("text", ["0,0 1,0", "0,0 1,0 0,x", "{\"vertices\": [[0,0],[1,0]]}"])
def test_parse_errors(text):
    with pytest.raises(Exception):
        RationalTriangle.parse(text)
