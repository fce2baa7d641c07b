from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdsblowup.errors import BadPrime, InputError
from mdsblowup.fields import QQ, FieldSpec, is_prime, primes_upto
from mdsblowup.rational import as_fraction, ceil_div, floor_div, fmt


def trial_division(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@given(st.integers(-10, 20000))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == trial_division(n)


def test_large_primes():
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_primes_upto():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_upto(100)) == 25


@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)),
                                        (" 6/8 ", Fraction(3, 4))])
def test_as_fraction_strings(text, value):
    assert as_fraction(text) == value


@pytest.mark.parametrize("bad", [0.5, True, "x", "1/0", None])
def test_as_fraction_rejects(bad):
    with pytest.raises((InputError, TypeError, ValueError, ZeroDivisionError)):
        as_fraction(bad)


@given(st.fractions())
def test_fmt_roundtrip_and_rounding(q):
    assert as_fraction(fmt(q)) == q
    assert floor_div(q) <= q <= ceil_div(q)
    assert ceil_div(q) - floor_div(q) == (0 if q.denominator == 1 else 1)


def test_field_spec():
    F7 = FieldSpec(7)
    assert str(F7) == "Fp:7" and str(QQ) == "Q"
    assert FieldSpec.parse("Fp:7") == F7 and FieldSpec.parse("Q") == QQ
    assert F7(Fraction(1, 3)) == 5
    assert F7(-1) == 6
    assert F7.to_str(6) == "-1"
    assert F7.inv(3) * 3 % 7 == 1
    with pytest.raises(BadPrime):
        F7(Fraction(1, 7))
    with pytest.raises(InputError):
        FieldSpec(8)
    with pytest.raises(InputError):
        FieldSpec.parse("GF(7)")
