"""Ideal calculus: colon, intersection, power, socle, length, annihilators."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from koszul_lab import corpus, linalg
from koszul_lab.groebner import ModuleElement, ModuleOrder
from koszul_lab.koszul import build_koszul
from koszul_lab.modops import (
    SubquotientModule,
    annihilator,
    bidual_via_colon,
    colon,
    ideal,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    ideals_equal,
    intersect_submodules,
    maximal_ideal,
    minimal_generators,
    module_colon,
    socle_colon,
    unit_ideal,
    zero_ideal,
)
from koszul_lab.polyring import QQ, Ring

R2 = Ring(("x", "y"), QQ)
X, Y = R2.variables()


def monomial_ideal(rng: random.Random, mprimary=False, max_degree=4):
    gens = []
    if mprimary:
        gens.append(X ** rng.randrange(1, max_degree + 1))
        gens.append(Y ** rng.randrange(1, max_degree + 1))
    for _ in range(rng.randrange(1, 4)):
        a, b = rng.randrange(max_degree + 1), rng.randrange(max_degree + 1)
        if a + b == 0:
            a = 1
        gens.append(X ** a * Y ** b)
    return ideal(R2, gens)


# -- colon

def test_colon_adjunction_on_random_ideals():
    rng = random.Random(5)
    for trial in range(8):
        a = monomial_ideal(rng)
        b = monomial_ideal(rng)
        q = colon(a, b)
        assert a.contains_ideal(ideal_product(b, q))


def test_colon_against_linear_algebra_oracle():
    rng = random.Random(13)
    cases = [(ideal(R2, (X ** 2, X * Y)), X ** 2),
             (ideal(R2, (X ** 3, Y ** 3)), X * Y),
             (ideal(R2, (X ** 2 - Y ** 2, X * Y)), X + Y)]
    for trial in range(3):
        cases.append((monomial_ideal(rng), X ** rng.randrange(3) * Y ** rng.randrange(3)))
    for a, b in cases:
        q = colon(a, b)
        for d in range(6):
            assert _ideal_graded_dimension(q, d) == _colon_dimension_oracle(a, b, d)


def _monomials(d):
    return [(e, d - e) for e in range(d + 1)]


def _ideal_graded_dimension(a, d):
    rows = []
    slots = {}
    for g in a.groebner().polys():
        e = g.degree()
        if e > d:
            continue
        for m in _monomials(d - e):
            prod = R2.monomial(m) * g
            vec = {}
            for mm, c in prod.terms:
                vec[mm] = c
                slots.setdefault(mm, len(slots))
            rows.append(vec)
    if not rows:
        return 0
    dense = [[Fraction(0)] * len(slots) for _ in rows]
    for i, vec in enumerate(rows):
        for k, c in vec.items():
            dense[i][slots[k]] = c
    return linalg.rank(dense, QQ)


def _colon_dimension_oracle(a, b, d):
    """dim{f of degree d : f*b inside a} via the linearity of normal forms."""
    basis = _monomials(d)
    gb = a.groebner()
    rows = []
    slots = {}
    for m in basis:
        nf = gb.reduce_poly(R2.monomial(m) * b)
        vec = {}
        for mm, c in nf.terms:
            vec[mm] = c
            slots.setdefault(mm, len(slots))
        rows.append(vec)
    dense = [[Fraction(0)] * len(slots) for _ in rows]
    for i, vec in enumerate(rows):
        for k, c in vec.items():
            dense[i][slots[k]] = c
    return len(basis) - linalg.rank(dense, QQ)


def test_colon_by_zero_is_everything():
    a = ideal(R2, (X ** 2,))
    assert colon(a, R2.zero()).is_unit()


def test_socle_colon_of_square():
    msq = ideal_power(maximal_ideal(R2), 2)
    assert ideals_equal(socle_colon(msq), maximal_ideal(R2))


def test_socle_colon_of_two_squares():
    a = ideal(R2, (X ** 2, Y ** 2))
    assert ideals_equal(socle_colon(a), ideal(R2, (X ** 2, Y ** 2, X * Y)))


# -- sums, products, powers, intersections

def test_power_matches_repeated_product():
    m = maximal_ideal(R2)
    assert ideals_equal(ideal_power(m, 3), ideal_product(m, ideal_product(m, m)))


def test_intersection_of_principal_monomials():
    a = ideal(R2, (X ** 2,))
    b = ideal(R2, (X * Y,))
    assert ideals_equal(ideal_intersection(a, b), ideal(R2, (X ** 2 * Y,)))


def test_length_additivity_on_staircases():
    rng = random.Random(29)
    for trial in range(6):
        a = monomial_ideal(rng, mprimary=True)
        b = monomial_ideal(rng, mprimary=True)
        meet = ideal_intersection(a, b)
        join = ideal_sum(a, b)
        assert meet.length() + join.length() == a.length() + b.length()


def test_unit_and_zero_edges():
    assert unit_ideal(R2).length() == 0
    assert zero_ideal(R2).is_zero()
    assert not zero_ideal(R2).contains(X)


# -- structural readings

def test_minimal_generators_drop_redundancy():
    a = ideal(R2, (X ** 2, X * Y, Y ** 2, X ** 3))
    assert len(minimal_generators(a)) == 3
    assert a.mu() == 3


def test_minimal_generators_need_homogeneous_input():
    a = ideal(R2, (X ** 2 + Y,))
    with pytest.raises(ValueError):
        a.minimal_generators()


def test_dimension_and_height_of_line_and_point():
    line = ideal(R2, (X,))
    assert line.dimension() == 1 and line.height() == 1
    point = ideal(R2, (X ** 2, Y ** 3))
    assert point.dimension() == 0 and point.height() == 2
    assert point.is_mprimary()
    assert point.length() == 6


def test_length_none_for_positive_dimension():
    assert ideal(R2, (X,)).length() is None


# -- module-level colon and annihilators

def _cyclic_quotient(a):
    order = ModuleOrder(R2.order)
    e0 = ModuleElement.from_dict(R2, 1, order, {(0, (0, 0)): Fraction(1)})
    bounds = [ModuleElement.from_poly(g, 0, 1, order) for g in a.preimage_polys()]
    return SubquotientModule(R2, 1, [e0], bounds)


def test_annihilator_of_cyclic_quotient_recovers_ideal():
    rng = random.Random(31)
    for trial in range(5):
        a = monomial_ideal(rng)
        assert ideals_equal(annihilator(_cyclic_quotient(a)), a)


def test_module_colon_principal():
    order = ModuleOrder(R2.order)
    e0 = ModuleElement.from_dict(R2, 1, order, {(0, (0, 0)): Fraction(1)})
    bx = ModuleElement.from_poly(X, 0, 1, order)
    assert ideals_equal(module_colon([bx], e0, R2), ideal(R2, (X,)))


def test_intersect_submodules_of_principal_spans():
    order = ModuleOrder(R2.order)
    u = [ModuleElement.from_poly(X, 0, 1, order)]
    v = [ModuleElement.from_poly(Y, 0, 1, order)]
    got = intersect_submodules(u, v, R2, 1)
    polys = [e.to_poly() for e in got]
    assert ideals_equal(ideal(R2, polys), ideal(R2, (X * Y,)))


def test_boundary_outside_cycles_rejected():
    order = ModuleOrder(R2.order)
    zx = ModuleElement.from_poly(X, 0, 1, order)
    e0 = ModuleElement.from_dict(R2, 1, order, {(0, (0, 0)): Fraction(1)})
    with pytest.raises(ValueError):
        SubquotientModule(R2, 1, [zx], [e0])


# -- double colon along a regular sequence

def test_last_homology_matches_double_colon():
    for seed in (0, 1):
        recipe = corpus.GeneratorRecipe("monomial_mprimary", seed, nvars=2,
                                        max_degree=3)
        i = corpus.generate(recipe)
        j = corpus.general_elements(i, 2, seed, require_height=2)
        n, g = i.mu(), 2
        komplex = build_koszul(i.minimal_generators(), R2)
        top = komplex.homology(n - g).annihilator
        expected = colon(j, colon(j, i))
        assert ideals_equal(top, expected)


def test_bidual_idempotent_on_tested_cases():
    for a, elem in (
            (ideal(R2, (X ** 2, X * Y)), X ** 2),
            (ideal(R2, (X ** 3, X * Y ** 2)), X ** 3),
            (ideal(R2, (X ** 2 - Y ** 2, X * Y)), X * Y)):
        once = bidual_via_colon(a, elem)
        twice = bidual_via_colon(once, elem)
        assert ideals_equal(once, twice)


def test_bidual_validates_element():
    a = ideal(R2, (X ** 2,))
    with pytest.raises(ValueError):
        bidual_via_colon(a, Y)
