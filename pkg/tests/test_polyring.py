"""Scalar fields, monomial orders, and sparse polynomial arithmetic."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from koszul_lab.groebner import quotient_ring
from koszul_lab.polyring import (
    GF,
    QQ,
    Ring,
    compare_monomials,
    divide_exact,
    graded_components,
    make_order,
    mon_mul,
    parse_field,
    poly_arith,
    quotient_normalize,
)

R2 = Ring(("x", "y"), QQ)
X, Y = R2.variables()


# -- scalar fields

def test_rational_field_reduces_and_divides():
    assert QQ.coerce(Fraction(4, 6)) == Fraction(2, 3)
    assert QQ.div(QQ.from_int(3), QQ.from_int(4)) == Fraction(3, 4)
    assert QQ.is_one(QQ.mul(Fraction(2, 3), Fraction(3, 2)))


def test_prime_field_inverses():
    f = GF(7)
    for a in range(1, 7):
        assert f.mul(a, f.inv(a)) == 1
    assert f.characteristic == 7


def test_prime_field_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(6)


def test_parse_field_specs():
    assert parse_field("q") is QQ
    assert parse_field("fp:7").characteristic == 7
    with pytest.raises(ValueError):
        parse_field("fp:8")
    with pytest.raises(ValueError):
        parse_field("r")


# -- explicit arithmetic identities

def test_add_cancellation():
    assert poly_arith(X + Y, X - Y, "add") == X.scale(2)


def test_difference_of_squares():
    assert poly_arith(X - Y, X + Y, "mul") == X * X - Y * Y


def test_zero_absorbs():
    f = X ** 5 - Y ** 5
    assert (f * R2.zero()).is_zero()


def test_arith_rejects_ring_mismatch():
    other = Ring(("x", "y", "z"), QQ)
    with pytest.raises(ValueError):
        poly_arith(X, other.variable("x"), "add")


def test_divide_exact_and_remainder_error():
    assert divide_exact(X * X - Y * Y, X - Y) == X + Y
    with pytest.raises(ValueError):
        divide_exact(X * X + Y, X - Y)


def test_graded_components_split():
    parts = graded_components(X * X + X.scale(3) + R2.constant(5))
    assert sorted(parts) == [0, 1, 2]
    assert parts[1] == X.scale(3)


# -- monomial orders

def test_grevlex_breaks_degree_ties_from_the_back():
    assert compare_monomials((2, 1), (1, 2), make_order("grevlex")) == 1


def test_lex_ignores_degree():
    assert compare_monomials((0, 3), (1, 0), make_order("lex")) == -1


def test_compare_reflexive():
    assert compare_monomials((1, 2), (1, 2), make_order("glex")) == 0


small_exponent = st.integers(min_value=0, max_value=5)
monomials2 = st.tuples(small_exponent, small_exponent)
order_names = st.sampled_from(["lex", "glex", "grevlex"])


@given(monomials2, monomials2, monomials2, order_names)
@settings(max_examples=120, deadline=None)
def test_order_multiplicative(u, v, w, name):
    ord_ = make_order(name)
    before = compare_monomials(u, v, ord_)
    after = compare_monomials(mon_mul(u, w), mon_mul(v, w), ord_)
    assert before == after


@given(monomials2, order_names)
@settings(max_examples=60, deadline=None)
def test_one_is_minimal(u, name):
    ord_ = make_order(name)
    if u != (0, 0):
        assert compare_monomials((0, 0), u, ord_) == -1


# -- random polynomials: exact arithmetic

coefficients = st.fractions(
    min_value=-9, max_value=9, max_denominator=7).filter(lambda c: c != 0)
poly_dicts = st.dictionaries(monomials2, coefficients, max_size=5)


def poly_of(d):
    return R2.from_dict(d)


@given(poly_dicts, poly_dicts)
@settings(max_examples=100, deadline=None)
def test_add_then_subtract_is_identity(da, db):
    a, b = poly_of(da), poly_of(db)
    assert (a + b) - b == a


@given(poly_dicts, poly_dicts, poly_dicts)
@settings(max_examples=60, deadline=None)
def test_multiplication_distributes(da, db, dc):
    a, b, c = poly_of(da), poly_of(db), poly_of(dc)
    assert a * (b + c) == a * b + a * c


@given(poly_dicts)
@settings(max_examples=60, deadline=None)
def test_terms_canonical(da):
    p = poly_of(da)
    keys = [m for m, _ in p.terms]
    assert len(set(keys)) == len(keys)
    for m, c in p.terms:
        assert c != 0
    order = R2.order
    for a, b in zip(keys, keys[1:]):
        assert compare_monomials(a, b, order) == 1


# -- quotient normal forms

def test_power_relation_annihilates():
    r1 = Ring(("x",), QQ)
    q = quotient_ring(r1, [r1.variable("x") ** 2])
    assert quotient_normalize(r1.variable("x") ** 3, q).is_zero()


def test_linear_relation_substitutes():
    base = Ring(("x", "y"), QQ, make_order("lex"))
    x, y = base.variables()
    q = quotient_ring(base, [x - y])
    assert quotient_normalize(x + y, q) == y.scale(2)


@given(poly_dicts)
@settings(max_examples=40, deadline=None)
def test_normalize_idempotent(da):
    q = quotient_ring(R2, [X ** 3, X * Y ** 2])
    once = quotient_normalize(poly_of(da), q)
    assert quotient_normalize(once, q) == once


# -- linear changes of variables

def test_identity_change_fixes_everything():
    f = X * X - Y.scale(2)
    assert f.apply_linear_change([[1, 0], [0, 1]]) == f


def test_swap_change_permutes():
    assert (X * X).apply_linear_change([[0, 1], [1, 0]]) == Y * Y


def test_shear_change_expands():
    assert (X * Y).apply_linear_change([[1, 1], [0, 1]]) == X * Y + Y * Y


def test_singular_change_rejected():
    with pytest.raises(ValueError):
        (X + Y).apply_linear_change([[1, 1], [1, 1]])
