"""Scalar arithmetic: exactness, canonical forms, field axioms."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matconj import (
    DivisionByZero,
    FieldElement,
    FieldMismatch,
    ParseError,
    is_prime,
    prime_field,
    rationals,
)

QQ = rationals()
GF7 = prime_field(7)


def test_rational_addition():
    assert QQ.element(Fraction(1, 2)) + QQ.element(Fraction(1, 3)) == QQ.element(
        Fraction(5, 6)
    )


def test_gf7_multiplication():
    assert GF7.element(5) * GF7.element(4) == GF7.element(6)


def test_additive_identity():
    for value in (Fraction(3, 7), Fraction(-2), Fraction(0)):
        x = QQ.element(value)
        assert x + QQ.zero == x


def test_rational_inverse():
    assert QQ.element(Fraction(3, 4)).inv() == QQ.element(Fraction(4, 3))


def test_gf7_inverse():
    assert GF7.element(3).inv() == GF7.element(5)


def test_inverse_of_one():
    for spec in (QQ, GF7, prime_field(2)):
        assert spec.one.inv() == spec.one


def test_is_zero_is_one():
    assert QQ.element(0).is_zero()
    assert prime_field(5).element(6).is_one()
    assert not QQ.element(Fraction(1, 10**100)).is_zero()  # no underflow, ever


def test_division():
    a = GF7.element(3)
    b = GF7.element(5)
    assert (a / b) * b == a
    with pytest.raises(DivisionByZero):
        a / GF7.zero
    with pytest.raises(DivisionByZero):
        QQ.zero.inv()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        QQ.element(1) + GF7.element(1)
    with pytest.raises(FieldMismatch):
        GF7.element(1) * prime_field(5).element(1)
    assert QQ.element(1) != GF7.element(1)


def test_canonical_residues():
    assert GF7.element(-1).value == 6
    assert GF7.element(20).value == 6
    assert prime_field(5).coerce(Fraction(1, 2)) == 3  # 2 * 3 = 6 = 1 mod 5


def test_canonical_rationals():
    x = QQ.element(Fraction(2, -4))
    assert x.value.numerator == -1 and x.value.denominator == 2


def test_prime_validation():
    with pytest.raises(ValueError):
        prime_field(4)
    with pytest.raises(ValueError):
        prime_field(1)
    with pytest.raises(ValueError):
        prime_field(561)  # Carmichael number
    prime_field(2)
    prime_field((1 << 61) - 1)


def test_rationals_take_no_modulus():
    import matconj

    with pytest.raises(ValueError):
        matconj.FieldSpec(matconj.FieldKind.RATIONALS, 7)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 101, 997}
    for m in range(-2, 1000):
        assert is_prime(m) == (m in primes or (m > 1 and all(m % d for d in range(2, m))))


def test_parse_format_roundtrip():
    for text in ("-3/4", "7", "0", "23/1", "+5"):
        elem = QQ.parse(text)
        assert QQ.parse(str(elem)) == elem
    assert str(QQ.parse("23/1")) == "23"
    assert GF7.parse("-1") == GF7.element(6)
    assert str(GF7.parse("20")) == "6"


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", "", "1/2/3", "2 3"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        QQ.parse(bad)


def test_parse_rejects_prime_field_fraction():
    with pytest.raises(ParseError):
        GF7.parse("1/2")


def _random_element(spec, rng):
    if spec.is_prime_field:
        return spec.element(rng.randrange(spec.modulus))
    return spec.element(Fraction(rng.randint(-30, 30), rng.randint(1, 30)))


@pytest.mark.parametrize("spec", [QQ, GF7, prime_field(2)], ids=str)
def test_field_axioms_1000_triples(spec):
    rng = random.Random(20260808)
    one = spec.one
    for _ in range(1000):
        a, b, c = (_random_element(spec, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == spec.zero
        if not a.is_zero():
            assert a * a.inv() == one
        assert (a + b) - b == a  # exactness: no drift, ever


@given(
    num1=st.integers(-10**12, 10**12),
    den1=st.integers(1, 10**12),
    num2=st.integers(-10**12, 10**12),
    den2=st.integers(1, 10**12),
)
def test_rational_canonical_uniqueness(num1, den1, num2, den2):
    a = QQ.element(Fraction(num1, den1))
    b = QQ.element(Fraction(num2, den2))
    equal_as_values = Fraction(num1, den1) == Fraction(num2, den2)
    assert (a == b) == equal_as_values
    if equal_as_values:
        assert (a.value.numerator, a.value.denominator) == (
            b.value.numerator,
            b.value.denominator,
        )


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_gf_elements_stay_canonical(x, y):
    p = 101
    spec = prime_field(p)
    for result in (
        spec.element(x) + spec.element(y),
        spec.element(x) * spec.element(y),
        -spec.element(x),
    ):
        assert 0 <= result.value < p


def test_element_hashable_and_immutable():
    a = QQ.element(Fraction(1, 2))
    assert hash(a) == hash(QQ.element(Fraction(2, 4)))
    with pytest.raises(Exception):
        a.value = Fraction(1)


def test_str_of_spec():
    assert str(QQ) == "Q"
    assert str(GF7) == "GF(7)"
