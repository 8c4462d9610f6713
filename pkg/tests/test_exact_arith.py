import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from webcat.exact_arith import binom, double_factorial, factorial, format_scalar, parse_scalar, scalar


def falling_product_binom(n, k):
    num = 1
    for j in range(k):
        num *= n - j
    return Fraction(num, math.factorial(k))


@pytest.mark.parametrize("n,k,expected", [(3, 2, 3), (2, 5, 0), (7, 0, 1), (0, 0, 1)])
def test_binom_values(n, k, expected):
    assert binom(n, k) == expected


def test_binom_negative_top_matches_loop_oracle():
    assert falling_product_binom(-1, 2) == 1
    assert binom(-1, 2) == falling_product_binom(-1, 2)


@given(st.integers(-12, 12), st.integers(0, 8))
def test_binom_matches_loop_oracle(n, k):
    assert binom(n, k) == falling_product_binom(n, k)


def test_binom_rejects_negative_k():
    with pytest.raises(ValueError):
        binom(3, -1)


@pytest.mark.parametrize("k,expected", [(0, 1), (4, 24)])
def test_factorial_values(k, expected):
    assert factorial(k) == expected


def test_factorial_ten_against_product():
    assert factorial(10) == math.prod(range(1, 11)) == 3628800


def test_double_factorial():
    assert [double_factorial(k) for k in (-1, 1, 3, 5, 7)] == [1, 1, 3, 15, 105]


@pytest.mark.parametrize("n", range(-6, 7))
@pytest.mark.parametrize("k", range(1, 7))
def test_pascal_rule(n, k):
    assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)


@pytest.mark.parametrize("x", range(-4, 5))
@pytest.mark.parametrize("y", range(-4, 5))
def test_chu_vandermonde(x, y):
    for c in range(7):
        assert sum(binom(x, c - d) * binom(y, d) for d in range(c + 1)) == binom(x + y, c)


fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f.numerator) < 10**6)


@given(fractions, fractions, fractions)
def test_field_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)


@given(fractions.filter(bool))
def test_field_inverse(a):
    assert a * (1 / a) == 1


@given(fractions)
def test_scalar_text_round_trip(a):
    text = format_scalar(a)
    assert parse_scalar(text) == a
    assert ("/" in text) == (a.denominator != 1)


def test_scalar_is_reduced_with_positive_denominator():
    v = scalar("-6/4")
    assert (v.numerator, v.denominator) == (-3, 2)
    assert format_scalar(Fraction(4, 2)) == "2"


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        scalar(0.5)
