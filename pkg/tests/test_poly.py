"""Exact polynomial and fraction-field arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ckexpand.poly import (
    Poly,
    Scalar,
    ScalarDivisionError,
    as_scalar,
    exact_div,
    parse_scalar,
)

SYMBOLS = ("x", "y", "z")


# -- naive reference implementation ----------------------------------------
#
# Multiplication oracle kept deliberately dumb: monomials are dicts of
# exponents, products merge them with explicit loops.


def naive_mul(a: Poly, b: Poly) -> Poly:
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            merged = dict(ma)
            for sym, e in mb:
                merged[sym] = merged.get(sym, 0) + e
            key = tuple(sorted(merged.items()))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return Poly({k: v for k, v in out.items() if v})


monomials = st.builds(
    lambda pairs: tuple(sorted({s: e for s, e in pairs if e}.items())),
    st.lists(
        st.tuples(st.sampled_from(SYMBOLS), st.integers(0, 3)), max_size=3
    ),
)
coeffs = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
).filter(lambda q: q != 0)
polys = st.builds(
    lambda terms: Poly(dict(terms)),
    st.lists(st.tuples(monomials, coeffs), max_size=4).map(dict),
)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


@given(polys, polys)
def test_mul_matches_naive_oracle(a, b):
    assert (a * b).terms == naive_mul(a, b).terms


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Poly.const(0) == a
    assert a * Poly.const(1) == a
    assert (a - a).is_zero


@given(polys, nonzero_polys)
def test_exact_division_roundtrip(a, b):
    quotient = exact_div(a * b, b)
    assert quotient is not None
    assert quotient == a


def test_exact_division_rejects_remainder():
    x, y = Poly.symbol("x"), Poly.symbol("y")
    assert exact_div(x * x + y, x) is None


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_scalar_equality_is_cross_multiplication(a, b, c):
    # a/b == (a*c)/(b*c) regardless of whether normalization cancels c
    assert Scalar(a, b) == Scalar(a * c, b * c)


def test_scalar_normalizes_exact_divisor():
    x = Poly.symbol("x")
    one = Poly.const(1)
    # the denominator divides the numerator exactly, so it cancels
    assert str(Scalar((x + one) * (x + one), x + one)) == "x + 1"
    # common factors that are not exact divisors are left alone (there is
    # no multivariate gcd); equality still sees through them
    s = Scalar((x + one) * (x - one), (x + one) * (x + one))
    assert s == Scalar(x - one, x + one)
    assert str(s) == "(x^2 - 1)/(x^2 + 2*x + 1)"


@given(nonzero_polys)
def test_scalar_inverse(a):
    s = Scalar(a)
    assert s * s.inverse() == Scalar.one()


def test_zero_denominator_rejected():
    with pytest.raises(ScalarDivisionError):
        Scalar(Poly.const(1), Poly.const(0))
    with pytest.raises(ScalarDivisionError):
        Scalar.one() / Scalar.zero()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", Scalar.zero()),
        ("2 + 3", as_scalar(5)),
        ("-x^2", Scalar(-Poly.symbol("x") ** 2)),
        ("1/2 * x", Scalar(Poly({((("x"), 1),): Fraction(1, 2)}))),
        ("(x + 1)*(x - 1)", Scalar(Poly.symbol("x") ** 2 - Poly.const(1))),
        ("x / (y + 1)", Scalar(Poly.symbol("x"), Poly.symbol("y") + Poly.const(1))),
        ("2^3", as_scalar(8)),
    ],
)
def test_parse_scalar_examples(text, expected):
    assert parse_scalar(text) == expected


@given(nonzero_polys, nonzero_polys)
def test_parse_roundtrips_str(a, b):
    s = Scalar(a, b)
    assert parse_scalar(str(s)) == s


def test_parse_rejects_garbage():
    for bad in ("", "x +", "((x)", "x ** 2", "1//2"):
        with pytest.raises(ValueError):
            parse_scalar(bad)


def test_substitute():
    s = parse_scalar("x^2 + y")
    assert s.substitute({"x": 2, "y": -1}) == as_scalar(3)
    assert s.substitute({"y": as_scalar("x")}) == parse_scalar("x^2 + x")


def test_coercion():
    assert as_scalar(Fraction(3, 4)) == parse_scalar("3/4")
    assert as_scalar("w1") == Scalar.symbol("w1")
    assert as_scalar(7) == Scalar(Poly.const(7))
