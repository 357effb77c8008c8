from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realcheck.exact_arith import (
    INFINITE_ORDER,
    DivergentLimitError,
    RatFunc,
    UniPoly,
    format_rational,
    leading_coefficient_at_zero,
    limit_at_zero,
    order_at_zero,
    parse_rational,
    poly_gcd,
    scale_by_x_power,
)
from strategies import nonzero_polys, nonzero_ratfuncs, polys, ratfuncs, rationals

X = RatFunc.x()


def test_parse_and_format():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(" 7 ") == 7
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("1/0x")


@given(rationals)
def test_rational_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_poly_basics():
    p = UniPoly([1, 0, 2])
    assert p.degree == 2 and p.leading == 2
    assert p(3) == 19
    assert UniPoly([]).degree == -1
    assert UniPoly.from_roots([1, 2]) == UniPoly([2, -3, 1])
    q, r = divmod(UniPoly([1, 0, 2]), UniPoly([1, 1]))
    assert q * UniPoly([1, 1]) + r == p


@given(polys, nonzero_polys)
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides(a, b, c):
    g = poly_gcd(a * c, b * c)
    assert (a * c) % g == UniPoly([]) and (b * c) % g == UniPoly([])
    assert (g % c.monic()).is_zero()


@given(ratfuncs)
def test_ratfunc_normal_form(f):
    assert f.den.leading == 1
    g = poly_gcd(f.num, f.den) if not f.num.is_zero() else f.den
    assert g.degree == 0
    assert RatFunc.from_json(f.to_json()) == f


@given(ratfuncs, ratfuncs)
def test_ratfunc_hash_eq(f, g):
    if f == g:
        assert hash(f) == hash(g)


def test_ratfunc_examples():
    f = (X * X - 1) / (X - 1)
    assert f == X + 1
    assert f(Fraction(1, 2)) == Fraction(3, 2)
    assert (X / (X * X + 1)).inverse() == X + 1 / X
    with pytest.raises(ZeroDivisionError):
        RatFunc.constant(0).inverse()


def test_orders_and_limits():
    assert order_at_zero(X.inverse()) == -1
    assert order_at_zero(RatFunc.constant(0)) == INFINITE_ORDER
    f = (2 * X + 3 * X * X) / (X * (X + 5))
    assert order_at_zero(f) == 0 and limit_at_zero(f) == Fraction(2, 5)
    assert limit_at_zero(X) == 0
    with pytest.raises(DivergentLimitError):
        limit_at_zero(1 / X)
    g = (3 + X) / (X * X)
    assert leading_coefficient_at_zero(g) == 3
    assert limit_at_zero(scale_by_x_power(g, -order_at_zero(g))) == 3


@given(nonzero_ratfuncs, st.integers(-3, 3))
def test_scale_shifts_order(f, k):
    assert order_at_zero(scale_by_x_power(f, k)) == order_at_zero(f) + k


@given(nonzero_ratfuncs, nonzero_ratfuncs)
def test_order_is_a_valuation(f, g):
    assert order_at_zero(f * g) == order_at_zero(f) + order_at_zero(g)
    s = f + g
    if not s.is_zero():
        assert order_at_zero(s) >= min(order_at_zero(f), order_at_zero(g))


@settings(max_examples=200)
@given(ratfuncs, rationals)
def test_evaluation_is_a_homomorphism(f, c):
    if f.den(c) != 0:
        g = f * f + f
        assert g(c) == f(c) * f(c) + f(c)
