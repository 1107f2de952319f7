"""Integral closure: Newton polyhedra, membership verdicts, certificates."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszul_lab import corpus
from koszul_lab.closure import (
    ClosureVerdict,
    fractional_membership,
    ideal_integral_containment,
    is_integral_over,
    monomial_closure,
    newton_polyhedron,
    verify_facet_refutation,
    verify_member_witness,
)
from koszul_lab.groebner import quotient_ring
from koszul_lab.modops import IdealHandle, ideal, ideals_equal
from koszul_lab.polyring import ring


@pytest.fixture()
def r2():
    return ring("x,y")


def _monomial_handle(base, exps):
    return IdealHandle(base, tuple(base.monomial(e) for e in exps))


def test_golden_closure_of_coordinate_cubes(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x ** 3, y ** 3))
    closed = monomial_closure(i)
    expected = IdealHandle(r2, (x ** 3, x * x * y, x * y * y, y ** 3))
    assert ideals_equal(closed, expected)
    # every added generator carries a replaying member witness
    for g in closed.minimal_generators():
        v = is_integral_over(g, i)
        assert v.status == "member"
        assert verify_member_witness(g, i, v.witness)


def test_principal_monomial_is_closed():
    r1 = ring("x")
    (x,) = r1.variables()
    for a in range(1, 5):
        i = IdealHandle(r1, (x ** a,))
        assert ideals_equal(monomial_closure(i), i)


def test_square_of_irrelevant_ideal_is_closed(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    assert ideals_equal(monomial_closure(i), i)


def test_membership_inside_ideal_has_zero_witness(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, y * y))
    v = is_integral_over(x * x + y * y, i)
    assert v.status == "member" and v.witness == 0
    assert verify_member_witness(x * x + y * y, i, 0)


def test_nonmember_facet_certificate(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x,))
    v = is_integral_over(x, i)
    assert v.status == "non_member"
    assert verify_facet_refutation(x, i, v.facet, v.violating_exponent)
    # tampered certificate must fail to replay
    normal, rhs = v.facet
    assert not verify_facet_refutation(x, i, (normal, rhs - 2),
                                       v.violating_exponent)


def test_binomial_example_extra_generator_is_integral():
    rec = next(r for r in corpus.paper_examples() if r.name == "binomial-CHV")
    data = rec.build()
    i, extra = data["ideal"], data["extra"]
    v = is_integral_over(extra, i)
    assert v.status == "member"
    assert verify_member_witness(extra, i, v.witness)


def test_inconclusive_keeps_bound(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x + y * y * y,))
    v = is_integral_over(x, i, m_max=2)
    assert v.status == "inconclusive"
    assert v.bound == 2


def test_premature_witness_fails_to_verify(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x ** 3, y ** 3))
    v = is_integral_over(x * x * y, i)
    assert v.status == "member" and v.witness >= 1
    assert not verify_member_witness(x * x * y, i, 0)


def test_polyhedron_contains_all_generators(r2):
    for seed in range(8):
        i = corpus.generate(corpus.GeneratorRecipe(
            "monomial_mprimary", seed, nvars=2, max_degree=4))
        poly = newton_polyhedron(i)
        for g in i.minimal_generators():
            e = g.lm()
            for normal, rhs in poly.facets:
                assert sum(a * v for a, v in zip(normal, e)) >= rhs


def test_closure_errors(r2):
    x, y = r2.variables()
    with pytest.raises(ValueError):
        monomial_closure(IdealHandle(r2, (x * x + y,)))
    q = quotient_ring(r2, [x * y])
    with pytest.raises(ValueError):
        monomial_closure(IdealHandle(q, (x,)))
    with pytest.raises(ValueError):
        newton_polyhedron(IdealHandle(r2, ()))


_exponents = st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(any)
_monomial_sets = st.lists(_exponents, min_size=1, max_size=4, unique=True)


@settings(max_examples=40, deadline=None)
@given(_monomial_sets)
def test_closure_idempotent_and_contains_input(exps):
    base = ring("x,y")
    i = _monomial_handle(base, exps)
    closed = monomial_closure(i)
    assert closed.contains_ideal(i)
    assert ideals_equal(monomial_closure(closed), closed)


@settings(max_examples=30, deadline=None)
@given(_monomial_sets, _exponents)
def test_closure_is_monotone(exps, extra):
    base = ring("x,y")
    small = _monomial_handle(base, exps)
    large = _monomial_handle(base, list(exps) + [extra])
    assert monomial_closure(large).contains_ideal(monomial_closure(small))


@settings(max_examples=30, deadline=None)
@given(_monomial_sets, _exponents)
def test_verdicts_agree_with_polyhedron(exps, probe):
    base = ring("x,y")
    i = _monomial_handle(base, exps)
    c = base.monomial(probe)
    closed = monomial_closure(i)
    v = is_integral_over(c, i)
    if v.status == "member":
        assert closed.contains(c)
    elif v.status == "non_member":
        assert not closed.contains(c)


def test_closure_generators_certify_membership():
    for seed in range(4):
        i = corpus.generate(corpus.GeneratorRecipe(
            "monomial_mprimary", seed, nvars=2, max_degree=4))
        closed = monomial_closure(i)
        for g in closed.minimal_generators():
            v = is_integral_over(g, i)
            assert v.status == "member"
            assert verify_member_witness(g, i, v.witness)


def test_prebuilt_closed_ideals_are_fixed_points():
    for seed in range(5):
        i = corpus.generate(corpus.GeneratorRecipe(
            "integrally_closed_monomial", seed, nvars=2, max_degree=4))
        assert ideals_equal(monomial_closure(i), i)


def test_fractional_membership_collapses_at_one(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x ** 3, y ** 3))
    for c in (x * x * y, x + y, x ** 3):
        assert fractional_membership(c, i, 1, 1).status == \
            is_integral_over(c, i).status


def test_fractional_membership_halves(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x,))
    assert fractional_membership(x, i, 1, 2).status == "member"
    assert is_integral_over(x, i).status == "non_member"
    with pytest.raises(ValueError):
        fractional_membership(x, i, 0, 2)
    with pytest.raises(ValueError):
        fractional_membership(x, i, 1, 0)


def test_containment_inside_ideal_all_zero_witnesses(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    a = IdealHandle(r2, (x * x, y * y))
    summary = ideal_integral_containment(a, i)
    assert summary.status == "member"
    assert all(v.witness == 0 for _, v in summary.verdicts)


def test_containment_refuted_per_generator(r2):
    x, y = r2.variables()
    summary = ideal_integral_containment(IdealHandle(r2, (x,)),
                                         IdealHandle(r2, (x * x,)))
    assert summary.status == "non_member"
    gen, v = summary.verdicts[0]
    assert v.status == "non_member"
    assert verify_facet_refutation(gen, IdealHandle(r2, (x * x,)),
                                   v.facet, v.violating_exponent)


def test_containment_square_mode_tests_generator_squares(r2):
    x, y = r2.variables()
    a = IdealHandle(r2, (x, y))
    i = IdealHandle(r2, (x * x, y * y))
    summary = ideal_integral_containment(a, i, square=True)
    assert summary.status == "member" and summary.squared
    assert {str(g) for g, _ in summary.verdicts} == {"x", "y"}
