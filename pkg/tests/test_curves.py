import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mdsblowup.curves import (check_recursion_b, check_recursion_c, eisenstein_certificate,
                              fgh, parallelogram_conditions, parallelogram_irreducible, xi)
from mdsblowup.errors import CertificateFails
from mdsblowup.fields import QQ, FieldSpec
from mdsblowup.laurent import LaurentPoly

X, Y = sympy.symbols("x y")


def xi_oracle(m):
    """xi_1 = g, xi_{k+1} = f xi_k + x^k h^(k+1), expanded by sympy."""
    e = 1 - X * Y ** 2
    for k in range(1, m):
        e = sympy.expand((1 - X * Y) * e + X ** k * (1 - Y) ** (k + 1))
    return e


def as_sympy(f):
    return sum((int(c) * X ** i * Y ** j for (i, j), c in f.terms.items()), sympy.Integer(0))


def test_first_members():
    assert xi(1).to_text() == "1 - x*y^2"
    assert xi(2).to_text() == "1 + x - 3*x*y + x^2*y^3"
    f, g, h = fgh()
    assert (f.to_text(), g.to_text(), h.to_text()) == ("1 - x*y", "1 - x*y^2", "1 - y")


@pytest.mark.parametrize("m", range(1, 10))
def test_closed_form_matches_recursion_oracle(m):
    assert sympy.expand(as_sympy(xi(m)) - xi_oracle(m)) == 0


@pytest.mark.parametrize("m", range(1, 9))
@pytest.mark.parametrize("field", [QQ, FieldSpec(2), FieldSpec(3), FieldSpec(7)])
def test_recursions(m, field):
    assert check_recursion_b(m, field)
    assert check_recursion_c(m, field)


@given(st.integers(1, 12))
def test_invariants(m):
    f = xi(m)
    assert f.multiplicity_at_t0() == m
    corners = [(0, 0), (m - 1, 0), (m, m + 1)] if m > 1 else [(0, 0), (1, 2)]
    assert f.newton_polygon() == corners
    assert f.coefficient(0, 0) == 1
    assert f.at_y(1) == LaurentPoly({(1, 0): 1, (0, 0): -1}) ** m * (-1) ** m


@given(st.integers(1, 10), st.sampled_from([2, 3, 5, 11]))
def test_reduction_mod_p_commutes(m, p):
    assert xi(m, FieldSpec(p)) == xi(m).reduce_mod_p(p)


@pytest.mark.parametrize("m", range(1, 8))
@pytest.mark.parametrize("field", [QQ, FieldSpec(2), FieldSpec(5)])
def test_eisenstein(m, field):
    cert = eisenstein_certificate(m, field)
    assert cert.holds
    assert cert.to_dict()["holds"] is True


def test_eisenstein_fails_on_reducible():
    f, _, h = fgh()
    with pytest.raises(CertificateFails):
        eisenstein_certificate(2, poly=f * h)
    assert not eisenstein_certificate(2, poly=f * h, strict=False).holds


@pytest.mark.parametrize("m", range(1, 8))
def test_irreducible_over_q_by_factoring(m):
    factors = sympy.factor_list(as_sympy(xi(m)))[1]
    assert len(factors) == 1 and factors[0][1] == 1


def test_parallelogram_criterion():
    f = LaurentPoly.parse("x + y^2 + x^2*y")
    conds = parallelogram_conditions(f, (1, 0), (0, 1), (0, 0), 2, 2)
    assert all(conds.values()), conds
    assert parallelogram_irreducible(f, (1, 0), (0, 1), (0, 0), 2, 2)
    assert len(sympy.factor_list(as_sympy(f))[1]) == 1
    reducible = LaurentPoly.parse("x^2 - y^2")
    assert not parallelogram_irreducible(reducible, (1, 0), (0, 1), (0, 0), 2, 2)
    assert not parallelogram_irreducible(f, (2, 0), (0, 1), (0, 0), 1, 2)
