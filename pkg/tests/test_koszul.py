"""Koszul complexes: differentials, homology, annihilators, duality."""
from __future__ import annotations

import random

import pytest

from koszul_lab import corpus
from koszul_lab.groebner import quotient_ring
from koszul_lab.koszul import (
    ann_h1,
    build_koszul,
    cochain_homology,
    cohomology_annihilators,
    delta_invariant,
    homology,
    presentation_and_content,
)
from koszul_lab.modops import (
    annihilator,
    colon,
    ideal,
    ideal_product,
    ideals_equal,
    maximal_ideal,
    socle_colon,
)
from koszul_lab.polyring import QQ, Ring

R2 = Ring(("x", "y"), QQ)
X, Y = R2.variables()


def mprimary(seed, max_degree=3):
    recipe = corpus.GeneratorRecipe("monomial_mprimary", seed, nvars=2,
                                    max_degree=max_degree)
    return corpus.generate(recipe)


# -- complex structure

def test_differentials_compose_to_zero():
    gens = (X ** 2 - Y ** 2, X * Y, Y ** 3)
    k = build_koszul(gens, R2)
    zero = R2.zero()
    for i in range(2, k.n + 1):
        outer = k.differential(i - 1)
        inner = k.differential(i)
        for r in range(len(outer)):
            for c in range(len(inner[0]) if inner else 0):
                acc = zero
                for t in range(len(inner)):
                    acc = acc + outer[r][t] * inner[t][c]
                assert acc.is_zero()


def test_ranks_are_binomials():
    k = build_koszul((X, Y, X + Y, X - Y), R2)
    assert [k.rank(i) for i in range(5)] == [1, 4, 6, 4, 1]


def test_homology_index_bounds():
    k = build_koszul((X, Y), R2)
    with pytest.raises(ValueError):
        k.homology(3)


# -- homology over the polynomial ring

def test_ideal_annihilates_its_homology():
    for seed in (0, 1, 2):
        i = mprimary(seed)
        k = build_koszul(i.minimal_generators(), R2)
        for t in range(k.n + 1):
            rec = k.homology(t)
            if rec.vanishing:
                continue
            for g in i.gens:
                assert rec.module.kills(g)


def test_homology_vanishes_above_codimension_defect():
    for seed in (0, 3):
        i = mprimary(seed)
        n, g = i.mu(), 2
        k = build_koszul(i.minimal_generators(), R2)
        for t in range(n - g + 1, n + 1):
            assert k.homology(t).vanishing
        assert not k.homology(n - g).vanishing


def test_regular_sequence_has_no_first_homology():
    k = build_koszul((X, Y), R2)
    assert k.homology(1).vanishing
    assert k.homology(2).vanishing
    assert not k.homology(0).vanishing


def test_annihilator_fails_fast_on_redundant_generators():
    with pytest.raises(ValueError):
        ann_h1((X, Y, X + Y), R2)


# -- annihilator calculus

def test_annihilator_between_ideal_and_content_colon():
    rng = random.Random(37)
    for seed in range(4):
        i = mprimary(seed)
        gens = i.minimal_generators()
        a = ann_h1(gens, R2)
        _, content = presentation_and_content(gens, R2)
        bound = colon(i, content)
        assert a.contains_ideal(i)
        assert bound.contains_ideal(a)
        delta, syzygetic = delta_invariant(gens, R2)
        if syzygetic:
            assert ideals_equal(a, bound)


def test_colon_stability_for_socle_level_killers():
    m = maximal_ideal(R2)
    for seed in range(3):
        i = mprimary(seed)
        if i.mu() <= i.height():
            continue
        gens = i.minimal_generators()
        k = build_koszul(gens, R2)
        h1 = k.homology(1)
        mi = ideal_product(m, i)
        for c in socle_colon(i).minimal_generators():
            if i.contains(c) or not h1.module.kills(c):
                continue
            assert ideals_equal(colon(i, c), colon(mi, c))


def test_square_of_maximal_ideal_is_not_syzygetic():
    delta, vanishes = delta_invariant((X ** 2, X * Y, Y ** 2), R2)
    assert not vanishes
    assert [delta.graded_dimension(d) for d in range(5)] == [0, 0, 1, 0, 0]


def test_presentation_content_of_square():
    _, content = presentation_and_content((X ** 2, X * Y, Y ** 2), R2)
    assert ideals_equal(content, maximal_ideal(R2))


# -- cochain oracle against the duality route

def test_cohomology_annihilators_match_direct_cochain():
    for gens in ((X ** 2, X * Y, Y ** 2), (X ** 3, X * Y, Y ** 3)):
        k = build_koszul(gens, R2)
        via_duality = cohomology_annihilators(gens, R2)
        for i in range(1, k.n + 1):
            direct = annihilator(cochain_homology(k, i))
            assert ideals_equal(direct, via_duality[i - 1])


# -- homology over Artinian quotient bases

def test_length_symmetry_over_selfdual_quotient():
    q = quotient_ring(R2, [X ** 2, Y ** 2])
    xq, yq = q.base.variables()
    k = build_koszul((xq, yq), q)
    lengths = [k.homology(i).module.length_up_to(6) for i in range(3)]
    assert lengths == [1, 2, 1]
    assert lengths == lengths[::-1]


def test_length_symmetry_over_monomial_ci_quotient():
    q = quotient_ring(R2, [X ** 3, Y ** 2])
    xq, yq = q.base.variables()
    k = build_koszul((xq, yq), q)
    lengths = [k.homology(i).module.length_up_to(8) for i in range(3)]
    assert lengths == lengths[::-1]


# -- socle annihilation on skew-matrix ideals

def test_socle_kills_first_homology_on_skew_corpus():
    for seed in range(2):
        recipe = corpus.GeneratorRecipe("pfaffian_gorenstein", seed, nvars=3,
                                        size=2)
        i = corpus.generate(recipe)
        base = i.ring
        k = build_koszul(i.minimal_generators(), base)
        h1 = k.homology(1)
        assert not h1.vanishing
        for c in socle_colon(i).minimal_generators():
            assert h1.module.kills(c)
