import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import admissible_main2
from mdsblowup.blowup import (EXCEPTIONAL, DegreeInterval, NegativityReport, NumericClass,
                              class_of, class_of_triangle, degree_interval, intersect,
                              is_negative_curve, vertical_segment_height)
from mdsblowup.certify import main1_triangle
from mdsblowup.curves import fgh, xi
from mdsblowup.errors import InvalidInterval, WrongShape, ZeroPolynomial
from mdsblowup.lattice import RationalTriangle, area, parallel_triangle
from mdsblowup.laurent import LaurentPoly, x_

small_polys = st.dictionaries(st.tuples(st.integers(-2, 4), st.integers(0, 4)),
                              st.integers(-3, 3).filter(bool), min_size=1, max_size=6).map(LaurentPoly)
classes = st.builds(NumericClass, st.fractions(-5, 5, max_denominator=9),
                    st.fractions(-5, 5, max_denominator=9))


def test_p5_77_101_self_intersection(p5_77_101):
    c = class_of(xi(2), p5_77_101)
    assert c == NumericClass(1, 2)
    assert intersect(c, c, p5_77_101) == Fraction(-19, 101)
    assert intersect(c, c, p5_77_101) == 2 * area(p5_77_101) - 4
    d = class_of(fgh()[2], p5_77_101)
    assert d == NumericClass(Fraction(202, 385), 1)
    assert vertical_segment_height(p5_77_101) == Fraction(385, 202)
    assert intersect(c, d, p5_77_101) == 0


def test_exceptional_curve():
    T = RationalTriangle((0, 0), (1, 0), (0, 1))
    assert intersect(EXCEPTIONAL, EXCEPTIONAL, T) == -1
    assert intersect(NumericClass(1, 0), EXCEPTIONAL, T) == 0


def test_zero_curve_in_blown_up_plane():
    # a line through t0 on Bl P^2 has self-intersection 0 and still counts
    T = RationalTriangle((0, 0), (1, 0), (0, 1))
    rep = is_negative_curve(LaurentPoly.parse("1 - x"), T)
    assert rep.self_intersection == 0 and rep.negative and rep.zero_curve
    assert NegativityReport.from_dict(json.loads(json.dumps(rep.to_dict()))) == rep


@given(classes, classes, classes)
def test_intersection_form_is_symmetric_bilinear(a, b, c):
    T = RationalTriangle((0, 0), (3, 0), (1, 2))
    assert intersect(a, b, T) == intersect(b, a, T)
    assert intersect(a + b, c, T) == intersect(a, c, T) + intersect(b, c, T)
    assert intersect(3 * a, c, T) == 3 * intersect(a, c, T)


@given(small_polys, small_polys)
def test_degree_interval_is_minkowski_additive(f, g):
    T = RationalTriangle((Fraction(-1, 9), 0), (Fraction(5, 14), 0), (1, 2))
    assert degree_interval(f * g, T) == degree_interval(f, T) + degree_interval(g, T)


@given(small_polys, small_polys)
def test_class_is_additive(f, g):
    T = RationalTriangle((Fraction(-1, 16), 0), (Fraction(82, 65), 0), (2, 3))
    assert class_of(f * g, T) == class_of(f, T) + class_of(g, T)


@given(small_polys)
def test_class_height_from_degree_interval(f):
    # the base sits on the x-axis, so the relation needs support meeting y = 0
    f = f.shift(0, -min(j for _, j in f.support()))
    T = RationalTriangle((Fraction(-1, 9), 0), (Fraction(5, 14), 0), (1, 2))
    d = degree_interval(f, T)
    base = Fraction(5, 14) + Fraction(1, 9)
    assert class_of(f, T).h == (d.b - d.a) / base


def test_degree_labels_on_example():
    m, a, b = 3, Fraction(1, 22), Fraction(101, 500)
    T = RationalTriangle((-a, 0), (m - 1 + b, 0), (m, m + 1))
    f, _, h = fgh()
    x = x_()
    assert degree_interval(xi(m), T) == DegreeInterval(-a, m - 1 + b)
    assert degree_interval(x ** m * h ** (m + 1), T) == DegreeInterval(-a, m)
    assert degree_interval(f ** (m + 1), T) == DegreeInterval(0, m + b)


def test_main1_class_of_d_uses_vertical_height():
    rnd = random.Random(5)
    for _ in range(10):
        m = rnd.randint(1, 6)
        T = main1_triangle(m, Fraction(rnd.randint(1, 9), 10), Fraction(rnd.randint(1, 9), 10))
        height = vertical_segment_height(T)
        assert class_of(fgh()[2], T) == NumericClass(1 / height, 1)


def test_class_of_triangle():
    params = admissible_main2(random.Random(2), 2)
    delta = params.triangle()
    sub = parallel_triangle(delta, 0, 2)
    c = class_of_triangle(sub, delta, 3)
    assert c == NumericClass(Fraction(2) / (1 + params.alpha + params.beta), 3)


def test_errors():
    T = RationalTriangle((0, 0), (2, 3), (Fraction(125, 101), Fraction(-5, 101)))
    with pytest.raises(ZeroPolynomial):
        class_of(LaurentPoly(), T)
    with pytest.raises(InvalidInterval):
        DegreeInterval(2, 1)
    with pytest.raises(WrongShape):
        vertical_segment_height(RationalTriangle((0, 0), (2, 0), (1, 1)))


def test_class_parse_and_roundtrip():
    c = NumericClass.parse("3/5, 2")
    assert c == NumericClass(Fraction(3, 5), 2)
    assert NumericClass.from_dict(json.loads(json.dumps(c.to_dict()))) == c
    d = DegreeInterval(Fraction(-1, 3), 2)
    assert DegreeInterval.from_dict(d.to_dict()) == d
    assert d.within(-1, 2) and not d.within(0, 2)
