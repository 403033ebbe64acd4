import pytest
from hypothesis import given
from hypothesis import strategies as st

from hrdet.fields import BinaryField, PrimeField
from hrdet.series import LaurentDomain, PrecisionLost

P = 10007
FIELD = PrimeField(P)
N = 8
DOM = LaurentDomain(FIELD, N)


def truncated_product(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] = (out[i + j] + x * y) % P
    return out


def from_poly(coeffs):
    """Exact polynomial in t as a series."""
    s = DOM.zero
    for k, c in enumerate(coeffs):
        term = DOM.pow(DOM.linear(0, 1), k) if k else DOM.one
        s = DOM.add(s, DOM.mul(DOM.from_int(c), term))
    return s


coeff_lists = st.lists(st.integers(min_value=0, max_value=P - 1), min_size=1, max_size=4)


@given(coeff_lists, coeff_lists)
def test_multiplication_is_truncated_polynomial_product(a, b):
    prod = DOM.mul(from_poly(a), from_poly(b))
    if DOM.is_zero(prod):
        assert not any(truncated_product(a, b, len(a) + len(b)))
        return
    v, coeffs = prod
    expected = truncated_product(a, b, len(a) + len(b) - 1)
    assert v == next(k for k, x in enumerate(expected) if x)
    assert coeffs[: len(expected) - v] == expected[v:][: len(coeffs)]


@given(coeff_lists.filter(any), st.integers(min_value=0, max_value=3))
def test_inverse_is_multiplicative_inverse(a, shift):
    x = DOM.mul(from_poly(a), DOM.pow(DOM.linear(0, 1), shift))
    prod = DOM.mul(x, DOM.inverse(x))
    v, coeffs = prod
    assert v == 0 and coeffs[0] == 1 and not any(coeffs[1:])


def test_valuation_of_powers_and_poles():
    t = DOM.linear(0, 1)
    one_plus_t = DOM.linear(1, 1)
    x = DOM.div(DOM.mul(DOM.pow(t, 3), one_plus_t), DOM.pow(t, 5))
    assert DOM.valuation(x) == -2
    assert DOM.valuation(DOM.pow(t, -1)) == -1


def test_cancellation_loses_precision():
    t = DOM.linear(0, 1)
    a = DOM.add(DOM.one, DOM.pow(t, N))  # the t^N term lies beyond the window
    diff = DOM.sub(a, DOM.one)
    assert DOM.valuation(diff) is None
    with pytest.raises(PrecisionLost):
        DOM.inverse(diff)


def test_exact_zero_is_absorbing():
    x = DOM.linear(3, 5)
    assert DOM.add(DOM.zero, x) == x
    assert DOM.is_zero(DOM.mul(DOM.zero, x))
    # cancellation inside the window is only known to vanish to that order
    assert DOM.valuation(DOM.sub(x, x)) is None


def test_characteristic_two():
    dom = LaurentDomain(BinaryField(4), 6)
    x = dom.linear(1, 1)
    sq = dom.mul(x, x)
    assert sq[0] == 0 and sq[1][:3] == [1, 0, 1]
    assert dom.valuation(dom.sum([x, x])) is None
