from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ainfty.fields import Field, QQ

F5 = Field(5)
F2 = Field(2)

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


def test_characteristic_validation():
    Field(0)
    Field(2)
    Field(97)
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(1)
    with pytest.raises(ValueError):
        Field(-3)


def test_constants():
    assert QQ.char == 0 and F5.char == 5
    assert QQ.is_zero(QQ.zero)
    assert not QQ.is_zero(QQ.one)
    assert F5.add(F5.of(3), F5.of(2)) == F5.zero


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    a, b, c = QQ.of(a), QQ.of(b), QQ.of(c)
    assert QQ.add(a, b) == QQ.add(b, a)
    assert QQ.mul(a, b) == QQ.mul(b, a)
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    assert QQ.add(a, QQ.neg(a)) == QQ.zero
    if not QQ.is_zero(a):
        assert QQ.mul(a, QQ.inv(a)) == QQ.one


@given(st.integers(), st.integers())
def test_prime_field_axioms(x, y):
    a, b = F5.of(x), F5.of(y)
    assert F5.add(a, b) == F5.add(b, a)
    assert F5.sub(a, b) == F5.add(a, F5.neg(b))
    if not F5.is_zero(a):
        assert F5.mul(a, F5.inv(a)) == F5.one
        assert F5.div(b, a) == F5.mul(b, F5.inv(a))


@given(rationals)
def test_qq_string_round_trip(a):
    a = QQ.of(a)
    assert QQ.parse(QQ.to_str(a)) == a


@given(st.integers())
def test_f5_string_round_trip(x):
    a = F5.of(x)
    assert F5.parse(F5.to_str(a)) == a


def test_parse_normalization():
    assert QQ.to_str(QQ.parse("-1/2")) == "-1/2"
    assert QQ.parse("4/2") == QQ.of(2)
    assert F5.parse("7") == F5.of(2)
    with pytest.raises(ValueError):
        QQ.parse("x")
    with pytest.raises(ValueError):
        QQ.parse("")


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero)
    with pytest.raises(ZeroDivisionError):
        F2.div(F2.one, F2.zero)


def test_of_accepts_fractions_and_ints():
    assert QQ.of(Fraction(1, 3)) == QQ.div(QQ.one, QQ.of(3))
    assert F5.of(-1) == F5.of(4)
