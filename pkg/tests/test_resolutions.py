"""Free resolutions, Betti numbers, Tor, and the socle-image checks."""

from __future__ import annotations

from fractions import Fraction

import pytest

from koszul_lab import closure, corpus, linalg, scenarios
from koszul_lab.groebner import ModuleElement, ModuleOrder, quotient_ring
from koszul_lab.modops import IdealHandle, ideal_sum
from koszul_lab.polyring import ring, quotient_normalize
from koszul_lab.resolutions import (
    ActionModule,
    GradedFreeResolution,
    burch_socle_check,
    classify,
    image_contains,
    matlis_dual,
    minimal_resolution,
    projective_dimension,
    regular_action_module,
    tor,
)
from koszul_lab.scenarios import run_check, verify_certificate


@pytest.fixture()
def r2():
    return ring("x,y")


def _compose_entries(res, t):
    """Entries of phi_t . phi_(t+1) as honest polynomial products."""
    lower = res.matrix_entries(t)
    upper = res.matrix_entries(t + 1)
    if not lower or not upper or not upper[0]:
        return []
    rows, mid, cols = len(lower), len(upper), len(upper[0])
    out = []
    for r in range(rows):
        for c in range(cols):
            acc = lower[r][0].ring.zero()
            for k in range(mid):
                acc = acc + lower[r][k] * upper[k][c]
            out.append(acc)
    return out


def test_consecutive_maps_compose_to_zero(r2):
    x, y = r2.variables()
    for gens in [(x, y), (x * x, x * y, y * y), (x * x, y * y * y)]:
        res = minimal_resolution(IdealHandle(r2, gens), r2)
        for t in range(1, res.length):
            for entry in _compose_entries(res, t):
                assert entry.is_zero()


def test_broken_composition_rejected(r2):
    x, y = r2.variables()
    res = minimal_resolution(IdealHandle(r2, (x, y)), r2)
    order = ModuleOrder(r2.order)
    bad_col = ModuleElement.from_poly(x, 0, 2, order)
    with pytest.raises(AssertionError):
        GradedFreeResolution(r2, (res.maps[0], (bad_col,)),
                             res.twists, False, 6)


def test_unit_entry_rejected(r2):
    x, y = r2.variables()
    order = ModuleOrder(r2.order)
    col = ModuleElement.from_poly(r2.one(), 0, 1, order)
    with pytest.raises(AssertionError):
        GradedFreeResolution(r2, ((col,),), ((0,), (0,)), False, 6)


def test_residue_field_betti_numbers(r2):
    x, y = r2.variables()
    res = minimal_resolution(IdealHandle(r2, (x, y)), r2)
    assert not res.truncated
    assert [res.rank(t) for t in range(3)] == [1, 2, 1]
    assert res.length == 2
    # minimality: every entry sits in the irrelevant ideal
    for t in range(1, res.length + 1):
        for row in res.matrix_entries(t):
            for e in row:
                assert e.is_zero() or e.degree() >= 1


def test_height_two_perfect_resolution_shape():
    for seed in (0, 1, 2):
        i = corpus.generate(corpus.GeneratorRecipe(
            "hilbert_burch", seed, nvars=3, size=3))
        res = minimal_resolution(i, i.ring)
        n = i.mu()
        assert not res.truncated
        assert res.length == 2
        assert res.rank(1) == n
        assert res.rank(2) == n - 1


def test_projective_dimension_matches_declared():
    for seed in range(6):
        name, module, pd = scenarios.module_with_known_pd(seed)
        base = ring("x,y")
        got = projective_dimension(module, base)
        assert got == ("exact", pd), name


def test_tor_vanishing_tracks_projective_dimension(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    for seed in range(3):
        name, module, pd = scenarios.module_with_known_pd(seed)
        res = minimal_resolution(module, r2)
        for t in (1, 2, 3):
            vanishes = tor(module, i, t, res=res).is_zero_module()
            assert vanishes == (pd < t), (name, t)


def test_tor_zero_is_quotient_by_sum(r2):
    x, y = r2.variables()
    a = IdealHandle(r2, (x * x, y * y))
    b = IdealHandle(r2, (x, y * y * y))
    t0 = tor(a, b, 0)
    assert t0.length_up_to(8) == ideal_sum(a, b).length()


def test_tor_one_step_resolution():
    r1 = ring("x")
    (x,) = r1.variables()
    h = IdealHandle(r1, (x,))
    t1 = tor(h, h, 1)
    assert t1.length_up_to(4) == 1
    assert t1.graded_dimension(0) == 1


def test_tor_is_symmetric(r2):
    x, y = r2.variables()
    a = IdealHandle(r2, (x * x, y * y))
    b = IdealHandle(r2, (x, y * y * y))
    for t in range(4):
        assert tor(a, b, t).length_up_to(8) == tor(b, a, t).length_up_to(8)


def test_tor_guards(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x, y))
    with pytest.raises(ValueError):
        tor(i, i, -1)
    q = quotient_ring(r2, [x * y])
    with pytest.raises(ValueError):
        tor(IdealHandle(q, (x,)), IdealHandle(q, (x,)), 1)
    short = minimal_resolution(IdealHandle(r2, (x * x, x * y, y * y)), r2,
                               max_length=1)
    with pytest.raises(ValueError):
        tor(IdealHandle(r2, (x * x, x * y, y * y)), i, 1, res=short)


def test_quotient_ring_resolution_truncates(r2):
    x, y = r2.variables()
    q = quotient_ring(r2, [x * y])
    res = minimal_resolution(IdealHandle(q, (x, y)), q, max_length=4)
    assert res.truncated
    assert [res.rank(t) for t in range(5)] == [1, 2, 2, 2, 2]
    # composites vanish only after reduction by the defining relation
    for t in range(1, res.length):
        for entry in _compose_entries(res, t):
            assert quotient_normalize(entry, q).is_zero()


def test_quotient_resolution_entries_escape_scaled_closure(r2):
    """Over a reduced non-regular quotient, the maps resolving the residue
    field keep an entry outside the closure of the squared irrelevant
    ideal, with a refutation certificate that replays."""
    x, y = r2.variables()
    q = quotient_ring(r2, [x * y])
    res = minimal_resolution(IdealHandle(q, (x, y)), q, max_length=4)
    target = IdealHandle(r2, (x * x, x * y, y * y))
    for t in range(1, res.length + 1):
        escapes = False
        for row in res.matrix_entries(t):
            for e in row:
                if e.is_zero():
                    continue
                v = closure.is_integral_over(quotient_normalize(e, q), target)
                if v.status == "non_member":
                    assert closure.verify_facet_refutation(
                        quotient_normalize(e, q), target, v.facet,
                        v.violating_exponent)
                    escapes = True
        assert escapes, t


def test_periodic_resolution_never_terminates():
    r1 = ring("x")
    (x,) = r1.variables()
    q = quotient_ring(r1, [x * x])
    res = minimal_resolution(IdealHandle(q, (x,)), q, max_length=5)
    assert res.truncated
    assert [res.rank(t) for t in range(6)] == [1] * 6
    for bound in (2, 4):
        assert projective_dimension(IdealHandle(q, (x,)), q, bound=bound) == \
            ("at_least", bound)


def test_classify_flags(r2):
    x, y = r2.variables()
    ci = classify(IdealHandle(r2, (x * x, y * y * y)))
    assert ci["complete_intersection"] and ci["perfect"]
    assert ci["gorenstein_quotient"]

    pf = corpus.generate(corpus.GeneratorRecipe(
        "pfaffian_gorenstein", 0, nvars=3, size=2))
    flags = classify(pf)
    assert flags["perfect"] and flags["gorenstein_quotient"]
    assert flags["height"] == 3 and flags["mu"] == 5
    assert not flags["complete_intersection"]

    quintic = next(r for r in corpus.paper_examples()
                   if r.name == "example-4.3").build()["ideal"]
    aci = classify(quintic)
    assert aci["almost_complete_intersection"]
    assert aci["height"] == 2 and aci["mu"] == 3

    q = quotient_ring(r2, [x * y])
    with pytest.raises(ValueError):
        classify(IdealHandle(q, (x,)))


def test_matlis_dual_transposes_actions(r2):
    x, y = r2.variables()
    q = quotient_ring(r2, [x * x, y * y])
    reg = regular_action_module(q)
    dual = matlis_dual(q)
    assert dual.dimension() == reg.dimension() == 4
    for a, b in zip(dual.actions, reg.actions):
        assert a == tuple(map(tuple, linalg.transpose(b)))
    assert dual.grading == tuple(-g for g in reg.grading)


def test_matlis_dual_dimension_is_length(r2):
    x, y = r2.variables()
    for rels in [(x, y), (x * x, y * y), (x * x, x * y, y * y * y)]:
        q = quotient_ring(r2, list(rels))
        lam = IdealHandle(r2, rels).length()
        assert matlis_dual(q).dimension() == lam


def test_matlis_dual_rejects_positive_dimension(r2):
    x, y = r2.variables()
    with pytest.raises(ValueError):
        matlis_dual(quotient_ring(r2, [x]))


def test_action_module_validation(r2):
    with pytest.raises(ValueError):
        ActionModule(r2, ("a", "b"),
                     ([[0, 1], [0, 0]], [[0, 0], [1, 0]]), (0, 1))
    r1 = ring("x")
    (x,) = r1.variables()
    q = quotient_ring(r1, [x * x])
    with pytest.raises(ValueError):
        ActionModule(q, ("e",), ([[1]],), (0,))


def test_socle_check_free_module_guard(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    report = burch_socle_check((2, (0, 1), ()), i, 1)
    assert report.hypothesis_holds is True
    assert report.intersection_zero
    assert not report.entry_verdicts


def test_socle_check_hypothesis_failure_guard(r2):
    """Entries outside the scaled-annihilator closure: the guard reports
    the failed hypothesis and still computes the intersection."""
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    report = burch_socle_check(IdealHandle(r2, (x * x,)), i, 1)
    assert report.hypothesis_holds is False
    assert report.intersection_zero
    assert not report.socle_witnesses


def test_socle_check_guards(r2):
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    with pytest.raises(ValueError):
        burch_socle_check(i, i, 0)
    q = quotient_ring(r2, [x * y])
    with pytest.raises(ValueError):
        burch_socle_check(IdealHandle(q, (x,)), IdealHandle(q, (x,)), 1)
    with pytest.raises(ValueError):
        burch_socle_check(i, IdealHandle(r2, (r2.zero(),)), 1)


def test_socle_conclusion_holds_on_random_modules(r2):
    """Whenever the closure hypothesis certifies, the image meets the
    socle only in zero (checked independently by the report's own
    degreewise linear algebra)."""
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    tested = 0
    for seed in range(9):
        name, module, pd = scenarios.module_with_known_pd(seed)
        report = burch_socle_check(module, i, 1)
        if report.hypothesis_holds is True:
            assert report.intersection_zero, name
            tested += 1
    assert tested >= 3


def test_image_covering_gap_surfaces_as_refutation(r2):
    """Negative control: the covering claim J_t.F_t inside image(phi_(t+1))
    fails without a minimality hypothesis on the annihilator side.  The
    checker must refute and produce a replayable certificate, not pass."""
    x, y = r2.variables()
    m = IdealHandle(r2, (x, y))
    msq = IdealHandle(r2, (x * x, x * y, y * y))
    report = burch_socle_check(msq, m, 1)
    assert report.hypothesis_holds is True
    assert report.intersection_zero

    res = minimal_resolution(msq, r2)
    order = ModuleOrder(r2.order)
    j1 = report.tor_annihilator.preimage_polys()
    gap_found = False
    for g in j1:
        for comp in range(res.rank(1)):
            prod = ModuleElement.from_poly(g, comp, res.rank(1), order)
            if not image_contains(res, 1, prod, r2):
                gap_found = True
    assert gap_found

    outcome = run_check("C9", {"name": "covering-gap", "ideal": m,
                               "module": msq, "t": 1})
    assert outcome.status == "refuted"
    assert outcome.certificate["kind"] == "module_image_gap"
    assert verify_certificate(outcome)


def test_vanishing_tor_forces_socle_in_previous_tor(r2):
    """When Tor_t vanishes for an ideal with the whole irrelevant ideal
    associated, either pd < t-1 or Tor_(t-1) is nonzero with a top-degree
    element (killed into zero by every variable)."""
    x, y = r2.variables()
    i = IdealHandle(r2, (x * x, x * y, y * y))
    for seed in range(6):
        name, module, pd = scenarios.module_with_known_pd(seed)
        res = minimal_resolution(module, r2)
        for t in (2, 3):
            if not tor(module, i, t, res=res).is_zero_module():
                continue
            if pd < t - 1:
                continue
            prev = tor(module, i, t - 1, res=res)
            dims = [prev.graded_dimension(d) for d in range(9)]
            assert any(dims), (name, t)
            top = max(d for d, v in enumerate(dims) if v)
            assert all(v == 0 for v in dims[top + 1:])


def test_image_contains_basics(r2):
    x, y = r2.variables()
    msq = IdealHandle(r2, (x * x, x * y, y * y))
    res = minimal_resolution(msq, r2)
    for col in res.matrix_columns(2):
        assert image_contains(res, 1, col, r2)
    order = ModuleOrder(r2.order)
    e0 = ModuleElement.from_poly(r2.one(), 0, res.rank(1), order)
    assert not image_contains(res, 1, e0, r2)
