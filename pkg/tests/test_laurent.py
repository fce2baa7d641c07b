import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mdsblowup import laurent
from mdsblowup.errors import FieldMismatch, InputError
from mdsblowup.fields import QQ, FieldSpec
from mdsblowup.laurent import LaurentPoly, convex_hull, x_, y_

X, Y, U, V = sympy.symbols("x y u v")

coeffs = st.integers(-5, 5)
exps = st.tuples(st.integers(-3, 4), st.integers(-3, 4))
polys = st.dictionaries(exps, coeffs, max_size=8).map(LaurentPoly)


def to_sympy(f):
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** i * Y ** j
                for (i, j), c in f.terms.items()), sympy.Integer(0))


def naive_mul(f, g, p):
    out = {}
    for (a, b), c in f.items():
        for (d, e), k in g.items():
            out[(a + d, b + e)] = (out.get((a + d, b + e), 0) + c * k) % p
    return {k: v for k, v in out.items() if v}


def oracle_multiplicity(f):
    if f.is_zero():
        return None
    mi = min(i for i, _ in f.support())
    mj = min(j for _, j in f.support())
    expr = sympy.expand(to_sympy(f.shift(-mi, -mj)).subs({X: 1 + U, Y: 1 + V}))
    return min(sum(m) for m in sympy.Poly(expr, U, V).monoms())


def test_xi2_text():
    f = LaurentPoly.parse("1 + x - 3xy + x^2y^3")
    assert f.to_text() == "1 + x - 3*x*y + x^2*y^3"
    assert LaurentPoly.parse(f.to_text()) == f


def test_parse_variants():
    assert LaurentPoly.parse("x^-1*y - 2/3") == LaurentPoly({(-1, 1): 1, (0, 0): Fraction(-2, 3)})
    assert LaurentPoly.parse("0").is_zero()
    assert LaurentPoly.parse('{"field": "Fp:5", "terms": [[1, 0, "3"]]}').field == FieldSpec(5)
    with pytest.raises(InputError):
        LaurentPoly.parse("1 + z")


@given(polys, polys)
def test_ring_ops_match_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sympy.expand(to_sympy(f + g) - to_sympy(f) - to_sympy(g)) == 0
    assert (f - g) + g == f
    assert f * (g + f) == f * g + f * f


@given(polys)
def test_roundtrips(f):
    assert LaurentPoly.parse(f.to_text()) == f
    assert LaurentPoly.from_dict(json.loads(json.dumps(f.to_dict()))) == f


@given(polys)
def test_multiplicity_matches_taylor_expansion(f):
    if f.is_zero():
        return
    assert f.multiplicity_at_t0() == oracle_multiplicity(f)


@given(polys, polys)
def test_multiplicity_is_additive(f, g):
    if f.is_zero() or g.is_zero():
        return
    assert (f * g).multiplicity_at_t0() == f.multiplicity_at_t0() + g.multiplicity_at_t0()


def test_multiplicity_of_fgh():
    x, y = x_(), y_()
    assert (1 - x * y).multiplicity_at_t0() == 1
    assert ((1 - y) ** 5 * (1 - x)).multiplicity_at_t0() == 6
    assert LaurentPoly.constant(3).multiplicity_at_t0() == 0


@given(polys)
def test_newton_polygon_matches_sympy_hull(f):
    pts = f.support()
    if len(pts) < 3:
        return
    hull = sympy.convex_hull(*[sympy.Point(p) for p in pts])
    if isinstance(hull, sympy.Polygon):
        expected = {tuple(int(c) for c in v) for v in hull.vertices}
        assert set(f.newton_polygon()) == expected
        assert convex_hull(pts)[0] == min(expected)


@pytest.mark.parametrize("p", [2, 3, 7])
def test_frobenius_power(p):
    F = FieldSpec(p)
    f = LaurentPoly({(0, 0): 1, (1, 0): 2, (1, 1): -1, (0, 2): 1}, F)
    slow = LaurentPoly.constant(1, F)
    for _ in range(p):
        slow = slow * f
    assert f ** p == slow == f.frobenius()
    assert f ** (3 * p) == slow ** 3


def test_kronecker_product_matches_naive():
    rnd = random.Random(11)
    p = 101
    F = FieldSpec(p)
    f = {(rnd.randint(-5, 60), rnd.randint(0, 70)): rnd.randint(1, p - 1) for _ in range(120)}
    g = {(rnd.randint(0, 50), rnd.randint(-4, 40)): rnd.randint(1, p - 1) for _ in range(90)}
    got = LaurentPoly(f, F) * LaurentPoly(g, F)
    assert got.terms == naive_mul(f, g, p)


def test_dense_multiplicity_matches_sparse():
    p = 13
    F = FieldSpec(p)
    f, _, h = (1 - x_(F) * y_(F)), None, (1 - y_(F))
    poly = f ** 9 * h ** 4 + LaurentPoly.monomial(3, 2, 1, F) * f ** 20
    assert len(poly) >= laurent._DENSE_MULT_MIN
    dense = laurent._dense_multiplicity(poly.terms, p)
    sparse = laurent._sparse_multiplicity(poly.terms, p)
    assert dense == sparse == 13


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        LaurentPoly({(0, 0): 1}) + LaurentPoly({(0, 0): 1}, FieldSpec(3))


def test_reduce_and_substitute():
    f = LaurentPoly({(0, 0): Fraction(1, 2), (2, 1): 4})
    g = f.reduce_mod_p(3)
    assert g.coefficient(0, 0) == 2 and g.coefficient(2, 1) == 1
    # (i, j) -> (i + j, j) is unimodular
    s = f.substitute_unimodular(((1, 1), (0, 1)))
    assert s.coefficient(3, 1) == 4
    with pytest.raises(InputError):
        f.substitute_unimodular(((2, 0), (0, 1)))
    assert f.at_y(1) == LaurentPoly({(0, 0): Fraction(1, 2), (2, 0): 4})
