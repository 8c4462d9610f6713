"""Exact rational scalars and the integer coefficients used by web relations."""

from __future__ import annotations

from fractions import Fraction
from math import factorial as _int_factorial

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"scalar {text!r} must be an integer or p/q")
    return Fraction(text)


def format_scalar(value) -> str:
    value = scalar(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def binom(n: int, k: int) -> Fraction:
    """Generalized binomial coefficient n(n-1)...(n-k+1)/k! for any integer n."""
    if k < 0:
        raise ValueError("binom requires k >= 0")
    num = 1
    for j in range(k):
        num *= n - j
    return Fraction(num // _int_factorial(k))


def factorial(k: int) -> Fraction:
    if k < 0:
        raise ValueError("factorial requires k >= 0")
    return Fraction(_int_factorial(k))


def double_factorial(k: int) -> int:
    """k!! with the conventions (-1)!! = 0!! = 1."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out
