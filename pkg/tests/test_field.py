from fractions import Fraction

import pytest
from conftest import numbers
from hypothesis import given

from mcsusy.field import ONE, SQRT2, ZERO, ExactScalar, I, Number


def test_sqrt_normalises_squares():
    assert Number.sqrt(8) == SQRT2 * 2
    assert Number.sqrt(Fraction(1, 2)) == SQRT2 / 2
    assert Number.sqrt(9) == 3
    assert Number.sqrt(-4) == I * 2
    assert SQRT2 * SQRT2 == 2


def test_mixed_radicals_multiply():
    assert Number.sqrt(2) * Number.sqrt(3) == Number.sqrt(6)
    assert Number.sqrt(6) * Number.sqrt(3) == Number.sqrt(2) * 3


def test_rational_hash_matches_fraction():
    assert hash(Number(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert Number(2) == 2 and Number(Fraction(1, 2)) == Fraction(1, 2)


def test_complex_literals():
    assert Number(3 + 2j) == Number(3, 2)
    with pytest.raises(TypeError):
        Number(0.5 + 1j)


def test_inverse_of_multiquadratic_element():
    x = ONE + SQRT2 + Number.sqrt(3) + I
    assert x * x.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(numbers(), numbers(), numbers())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a / a == 1


@given(numbers())
def test_conjugate_is_involutive_and_matches_float(a):
    assert a.conjugate().conjugate() == a
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-9
    assert abs(complex(a * a) - complex(a) ** 2) < 1e-9


def test_exact_scalar_arithmetic():
    x = ExactScalar(Number(Fraction(1, 4)), -2)
    assert x * x == ExactScalar(Number(Fraction(1, 16)), -4)
    assert str(x) == "(1/4)*pi^-2"
    assert abs(float(x) - 0.25 / 3.141592653589793 ** 2) < 1e-15
