from fractions import Fraction
from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hrdet.fields import (
    QQ,
    BinaryField,
    FieldError,
    PrimeField,
    default_modulus,
    is_irreducible_gf2,
    parse_char,
    sampling_field,
)

FIELDS = [QQ, PrimeField(7), PrimeField(2**31 - 1), BinaryField(4), BinaryField(10)]


def elements(field):
    seeds = st.integers(min_value=0, max_value=10**6)
    return seeds.map(lambda s: field.random(Random(s)))


@pytest.mark.parametrize("field", FIELDS, ids=repr)
@given(data=st.data())
def test_field_axioms(field, data):
    a, b, c = (data.draw(elements(field)) for _ in range(3))
    assert field.add(a, b) == field.add(b, a)
    assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
    assert field.add(a, field.neg(a)) == field.zero
    assert field.sub(a, b) == field.add(a, field.neg(b))
    if not field.is_zero(b):
        assert field.mul(field.div(a, b), b) == a
        assert field.mul(b, field.inv(b)) == field.one


@pytest.mark.parametrize("field", FIELDS, ids=repr)
@given(data=st.data(), k=st.integers(min_value=0, max_value=12))
def test_pow_matches_repeated_multiplication(field, data, k):
    a = data.draw(elements(field))
    expected = field.one
    for _ in range(k):
        expected = field.mul(expected, a)
    assert field.pow(a, k) == expected


@pytest.mark.parametrize("field", [PrimeField(11), BinaryField(6)], ids=repr)
def test_nonzero_elements_form_a_group_of_the_right_order(field):
    size = field.p - 1 if isinstance(field, PrimeField) else 2**field.e - 1
    g_orders = set()
    for x in range(1, size + 1):
        a = field.from_scalar(x) if isinstance(field, PrimeField) else x
        assert field.pow(a, size) == field.one
        g_orders.add(a)
    assert len(g_orders) == size


def test_binary_field_characteristic_two():
    f = BinaryField(10)
    rng = Random(3)
    for _ in range(50):
        a = f.random(rng)
        assert f.add(a, a) == f.zero
    assert f.characteristic == 2


@pytest.mark.parametrize("e", [1, 2, 3, 4, 8, 10, 16])
def test_default_modulus_is_irreducible_of_degree_e(e):
    m = default_modulus(e)
    assert m.bit_length() - 1 == e
    assert is_irreducible_gf2(m)


def test_irreducibility_known_cases():
    assert is_irreducible_gf2(0b111)  # x^2 + x + 1
    assert not is_irreducible_gf2(0b101)  # (x + 1)^2
    assert is_irreducible_gf2(0b10000011011)  # x^10 + x^4 + x^3 + x + 1


def test_rational_square_classes():
    assert QQ.square_class(Fraction(9, 4)) == 1
    assert QQ.square_class(Fraction(-8, 9)) == -2
    assert QQ.square_class(Fraction(12)) == 3
    with pytest.raises(FieldError):
        QQ.square_class(Fraction(0))


@given(st.fractions().filter(lambda x: x != 0), st.fractions().filter(lambda x: x != 0))
def test_square_class_ignores_square_factors(a, b):
    assert QQ.square_class(a * b * b) == QQ.square_class(a)


def test_prime_field_square_class_is_legendre():
    f = PrimeField(11)
    squares = {x * x % 11 for x in range(1, 11)}
    for x in range(1, 11):
        assert (f.square_class(x) == 1) == (x in squares)


def test_binary_field_every_element_is_a_square():
    f = BinaryField(5)
    for x in range(1, 32):
        r = f.sqrt(x)
        assert f.mul(r, r) == x


@pytest.mark.parametrize(
    "text, expected",
    [("0", QQ), ("7", PrimeField(7)), ("2^10", BinaryField(10))],
)
def test_parse_char(text, expected):
    assert parse_char(text) == expected


def test_parse_char_rejects_odd_extension():
    with pytest.raises(FieldError):
        parse_char("3^2")


def test_sampling_fields():
    assert sampling_field(QQ) == PrimeField(2**31 - 1)
    assert sampling_field(PrimeField(2)).characteristic == 2
    assert sampling_field(BinaryField(10)).characteristic == 2


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_format_parse_roundtrip(field):
    rng = Random(0)
    for _ in range(20):
        a = field.random(rng)
        assert field.parse(field.format(a)) == a
