"""Named verification procedures with re-executable certificates.

Each check validates one provable claim (severity "theorem") or gathers
evidence on an open question (severity "probe") against a prepared
instance.  Outcomes carry a status in {verified, refuted, inconclusive}
plus a certificate: a JSON-compatible payload with enough machine data
for `verify_certificate` to re-execute the minimal claim from scratch.
Closure-dependent checks propagate inconclusive instead of guessing.
"""
from __future__ import annotations

import time
from fractions import Fraction
from functools import reduce
from typing import Callable, Optional, Sequence

from . import closure as closure_mod
from . import corpus
from .groebner import ModuleElement, quotient_ring
from .koszul import (ann_h1, build_koszul, delta_invariant,
                     presentation_and_content)
from .modops import (IdealHandle, colon, ideal, ideal_intersection,
                     ideal_power, ideal_product, ideals_equal, maximal_ideal,
                     socle_colon)
from .polyring import (QQ, GF, Polynomial, PrimeField, QuotientRing, Ring,
                       ambient, make_order, parse_field)
from .resolutions import (burch_socle_check, classify, image_contains,
                          minimal_resolution, tor)

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


class CheckRequirementError(ValueError):
    """The instance fails a check's input requirements; no verdict exists."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckRequirementError(message)


# ---------------------------------------------------------------------------
# certificate payload serialization


def poly_payload(p: Polynomial) -> list:
    """Term list [[exponents, coefficient-string], ...] in ring order."""
    return [[list(mon), str(c)] for mon, c in p.terms]


def restore_poly(base: Ring, data: Sequence) -> Polynomial:
    coeffs = {}
    for mon, text in data:
        key = tuple(int(e) for e in mon)
        if isinstance(base.field, PrimeField):
            coeffs[key] = int(text)
        else:
            coeffs[key] = Fraction(text)
    return base.from_dict(coeffs)


def ring_payload(over) -> dict:
    base = ambient(over)
    data = {
        "vars": list(base.vars),
        "field": base.field.spec_string(),
        "order": base.order.kind,
    }
    if isinstance(over, QuotientRing):
        data["relations"] = [poly_payload(p) for p in over.relation_polys()]
    return data


def restore_ring(data: dict):
    base = Ring(tuple(data["vars"]), parse_field(data["field"]),
                make_order(data["order"]))
    rels = data.get("relations")
    if not rels:
        return base
    return quotient_ring(base, [restore_poly(base, p) for p in rels])


def ideal_payload(i: IdealHandle) -> list:
    """Canonical form: the reduced basis (full preimage over a quotient)."""
    return [poly_payload(p) for p in i.preimage_polys()]


def restore_ideal(over, data: Sequence) -> IdealHandle:
    base = ambient(over)
    return ideal(over, [restore_poly(base, p) for p in data])


def module_payload(m) -> dict:
    """Serialize a resolvable module: cyclic quotient or free."""
    if isinstance(m, IdealHandle):
        return {"type": "cyclic_quotient", "relations": ideal_payload(m)}
    rank, twists, cols = m
    if cols:
        raise ValueError("only free modules and cyclic quotients serialize")
    return {"type": "free", "rank": int(rank), "twists": list(twists)}


def restore_module(over, data: dict):
    if data["type"] == "cyclic_quotient":
        return restore_ideal(over, data["relations"])
    return (int(data["rank"]), tuple(int(t) for t in data["twists"]), ())


def _module_name(m) -> str:
    if isinstance(m, IdealHandle):
        inside = ", ".join(str(g) for g in m.minimal_generators())
        return f"quotient by ({inside})"
    rank, twists, _ = m
    return f"free rank {rank}"


# ---------------------------------------------------------------------------
# shared fragments


def _membership_run(elements, target: IdealHandle, m_max: int):
    """Closure-membership verdicts for each element against target.

    Returns (members, pending, refutation): witness records, exhausted
    records, and the first facet refutation if one exists."""
    members, pending = [], []
    for c in elements:
        v = closure_mod.is_integral_over(c, target, m_max)
        if v.status == "member":
            members.append({"element": poly_payload(c),
                            "witness": int(v.witness)})
        elif v.status == "non_member":
            return members, pending, {
                "element": poly_payload(c),
                "normal": [int(a) for a in v.facet[0]],
                "rhs": int(v.facet[1]),
                "exponent": [int(e) for e in v.violating_exponent],
            }
        else:
            pending.append({"element": poly_payload(c),
                            "bound": int(v.bound)})
    return members, pending, None


def _verify_memberships(over, target: IdealHandle, members, pending) -> bool:
    base = ambient(over)
    for item in members:
        c = restore_poly(base, item["element"])
        if not closure_mod.verify_member_witness(c, target,
                                                 int(item["witness"])):
            return False
    for item in pending:
        c = restore_poly(base, item["element"])
        v = closure_mod.is_integral_over(c, target, int(item["bound"]))
        if v.status != "inconclusive":
            return False
    return True


def _verify_refutation(over, target: IdealHandle, item: dict) -> bool:
    base = ambient(over)
    c = restore_poly(base, item["element"])
    facet = (tuple(int(a) for a in item["normal"]), int(item["rhs"]))
    exponent = tuple(int(e) for e in item["exponent"])
    return closure_mod.verify_facet_refutation(c, target, facet, exponent)


def _colon_agreement(i: IdealHandle, c: Polynomial) -> bool:
    """Whether coloning by c cannot tell i from its maximal-ideal multiple."""
    scaled = ideal_product(maximal_ideal(i.ring), i)
    return ideals_equal(colon(i, c), colon(scaled, c))


def _difference_cert(big: IdealHandle, small: IdealHandle, extra=None) -> dict:
    """Witness that big is not contained in small."""
    w = next(g for g in big.preimage_polys() if not small.contains(g))
    cert = {"kind": "ideal_difference_witness",
            "ring": ring_payload(big.ring),
            "superset": ideal_payload(big),
            "subset": ideal_payload(small),
            "element": poly_payload(w)}
    if extra:
        cert.update(extra)
    return cert


def _colon_disagreement_cert(i: IdealHandle, c: Polynomial) -> dict:
    scaled = ideal_product(maximal_ideal(i.ring), i)
    plain = colon(i, c)
    tight = colon(scaled, c)
    w = next(g for g in plain.preimage_polys() if not tight.contains(g))
    return {"kind": "colon_disagreement", "ring": ring_payload(i.ring),
            "ideal": ideal_payload(i), "element": poly_payload(c),
            "witness": poly_payload(w)}


def _require_ideal(instance: dict) -> IdealHandle:
    i = instance.get("ideal")
    _require(isinstance(i, IdealHandle), "instance needs an 'ideal' entry")
    return i


def _require_poly_base(i: IdealHandle) -> Ring:
    _require(not isinstance(i.ring, QuotientRing),
             "check runs over a polynomial ring")
    _require(i.is_proper() and not i.is_zero(),
             "check needs a proper nonzero ideal")
    return i.ring


def _m_max(instance: dict) -> int:
    return int(instance.get("m_max", 10))


def _image_covers(res, t: int, j_ideal: IdealHandle, base: Ring):
    """First generator-component pair of j_ideal * F_t missing from the
    image of the next map, or None when the product is covered."""
    rank = res.rank(t)
    for g in j_ideal.minimal_generators():
        for comp in range(rank):
            elt = ModuleElement.from_poly(g, comp, rank)
            if not image_contains(res, t, elt, base):
                return g, comp
    return None


# ---------------------------------------------------------------------------
# check runners (each returns (status, certificate))


def _run_c1(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _require(closure_mod.is_monomial_ideal(i), "needs a monomial ideal")
    _require(i.dimension() == 0, "needs a zero-dimensional ideal")
    _require(i.mu() > i.height(),
             "needs more generators than the height; complete intersections "
             "have vanishing positive homology")
    _require(ideals_equal(closure_mod.monomial_closure(i), i),
             "needs an integrally closed ideal")
    gens = list(i.minimal_generators())
    ann = ann_h1(gens, base)
    if not ideals_equal(ann, i):
        return REFUTED, _difference_cert(ann, i, {"index": 1})
    outside = [c for c in ann.minimal_generators() if not i.contains(c)]
    for c in outside:
        if not _colon_agreement(i, c):
            return REFUTED, _colon_disagreement_cert(i, c)
    cert = {"kind": "annihilator_equality", "ring": ring_payload(base),
            "gens": [poly_payload(g) for g in gens], "index": 1,
            "ideal": ideal_payload(i), "annihilator": ideal_payload(ann),
            "colon_checked": [poly_payload(c) for c in outside]}
    return VERIFIED, cert


def _run_c2(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _require(i.dimension() == 0, "needs a zero-dimensional ideal")
    _require(i.mu() > i.height(),
             "needs more generators than the height; complete intersections "
             "have vanishing positive homology")
    gens = list(i.minimal_generators())
    ann = ann_h1(gens, base)
    candidates = list(
        ideal_intersection(ann, socle_colon(i)).minimal_generators())
    outside = [c for c in candidates if not i.contains(c)]
    for c in outside:
        if not _colon_agreement(i, c):
            return REFUTED, _colon_disagreement_cert(i, c)
    members, pending, refutation = _membership_run(candidates, i,
                                                   _m_max(instance))
    if refutation is not None:
        refutation.update({"kind": "closure_refutation",
                           "ring": ring_payload(base),
                           "ideal": ideal_payload(i)})
        return REFUTED, refutation
    cert = {"kind": "socle_killer_memberships", "ring": ring_payload(base),
            "ideal": ideal_payload(i), "members": members,
            "pending": pending,
            "colon_checked": [poly_payload(c) for c in outside]}
    return (INCONCLUSIVE if pending else VERIFIED), cert


def _run_c3(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    gens = list(i.minimal_generators())
    ann = ann_h1(gens, base)
    _phi, content = presentation_and_content(gens, base)
    against = colon(i, content)
    _delta, syzygetic = delta_invariant(gens, base)
    if not against.contains_ideal(ann):
        return REFUTED, _difference_cert(ann, against)
    equal = ideals_equal(ann, against)
    if syzygetic and not equal:
        return REFUTED, _difference_cert(against, ann,
                                         {"syzygetic": True})
    cert = {"kind": "syzygetic_colon", "ring": ring_payload(base),
            "gens": [poly_payload(g) for g in gens],
            "ideal": ideal_payload(i), "annihilator": ideal_payload(ann),
            "content": ideal_payload(content), "colon": ideal_payload(against),
            "syzygetic": bool(syzygetic), "equal": bool(equal)}
    return VERIFIED, cert


def _run_c4(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _require(i.mu() > i.height(),
             "needs more generators than the height; complete intersections "
             "have vanishing positive homology")
    flags = classify(i)
    power = max(flags["projective_dimension"] - 1, 0) + 1
    gens = list(i.minimal_generators())
    ann = ann_h1(gens, base)
    _phi, content = presentation_and_content(gens, base)
    against = colon(i, content)
    for source in (against, ann):
        raised = ideal_power(source, power)
        if not i.contains_ideal(raised):
            return REFUTED, _difference_cert(raised, i, {"power": power})
    cert = {"kind": "power_containment", "ring": ring_payload(base),
            "gens": [poly_payload(g) for g in gens],
            "ideal": ideal_payload(i), "power": power,
            "colon": ideal_payload(against), "annihilator": ideal_payload(ann)}
    return VERIFIED, cert


def _run_c5(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    flags = classify(i)
    _require(flags["height"] == 2, "needs a height-two ideal")
    _require(flags["perfect"], "needs a perfect ideal")
    gens = list(i.minimal_generators())
    k = build_koszul(gens, base)
    zero_indices, match_indices = [], []
    for idx in range(1, k.n + 1):
        rec = k.homology(idx)
        if rec.vanishing:
            zero_indices.append(idx)
        elif ideals_equal(rec.annihilator, i):
            match_indices.append(idx)
        else:
            return REFUTED, _difference_cert(rec.annihilator, i,
                                             {"index": idx})
    cert = {"kind": "homology_annihilator_sweep", "ring": ring_payload(base),
            "gens": [poly_payload(g) for g in gens],
            "ideal": ideal_payload(i), "zero_indices": zero_indices,
            "match_indices": match_indices}
    return VERIFIED, cert


def _run_c6(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _require(i.dimension() == 0, "needs a zero-dimensional ideal")
    flags = classify(i)
    _require(flags["gorenstein_quotient"], "needs a Gorenstein quotient")
    _require(not flags["complete_intersection"],
             "complete intersections have vanishing first homology")
    gens = list(i.minimal_generators())
    ann = ann_h1(gens, base)
    socle_gens = list(socle_colon(i).minimal_generators())
    for c in socle_gens:
        if not ann.contains(c):
            return REFUTED, {"kind": "killer_gap", "ring": ring_payload(base),
                             "gens": [poly_payload(g) for g in gens],
                             "index": 1, "element": poly_payload(c)}
    if ideals_equal(ann, i):
        # strictness is part of the claim: a free summand in first homology
        # would force a complete intersection
        return REFUTED, {"kind": "annihilator_strictness_gap",
                         "ring": ring_payload(base),
                         "gens": [poly_payload(g) for g in gens],
                         "ideal": ideal_payload(i)}
    cert = {"kind": "socle_kills", "ring": ring_payload(base),
            "gens": [poly_payload(g) for g in gens],
            "ideal": ideal_payload(i),
            "socle": [poly_payload(c) for c in socle_gens], "strict": True}
    return VERIFIED, cert


def _run_c7(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _require(not (isinstance(base.field, PrimeField) and base.field.p == 2),
             "needs characteristic other than two")
    flags = classify(i)
    _require(flags["height"] == 3, "needs a height-three ideal")
    _require(flags["gorenstein_quotient"], "needs a Gorenstein quotient")
    n = i.mu()
    _require(n >= 5 and n % 2 == 1,
             "needs an odd minimal generator count of at least five")
    half = (n - 1) // 2
    m_max = _m_max(instance)
    gens = list(i.minimal_generators())
    ann = ann_h1(gens, base)
    square = ideal_power(ann, 2)
    members, pending, refutation = _membership_run(
        square.minimal_generators(), i, m_max)
    if refutation is not None:
        refutation.update({"kind": "closure_refutation",
                           "ring": ring_payload(base),
                           "ideal": ideal_payload(i)})
        return REFUTED, refutation
    fractional = []
    for g in ann.minimal_generators():
        v = closure_mod.fractional_membership(g, i, half - 1, half, m_max)
        if v.status == "non_member":
            cert = {"kind": "closure_refutation", "ring": ring_payload(base),
                    "ideal": ideal_payload(ideal_power(i, half - 1)),
                    "element": poly_payload(g ** half),
                    "normal": [int(a) for a in v.facet[0]],
                    "rhs": int(v.facet[1]),
                    "exponent": [int(e) for e in v.violating_exponent]}
            return REFUTED, cert
        entry = {"element": poly_payload(g), "numerator": half - 1,
                 "denominator": half, "status": v.status}
        if v.status == "member":
            entry["witness"] = int(v.witness)
        else:
            entry["bound"] = int(v.bound)
        fractional.append(entry)
    socle_gens = list(socle_colon(i).minimal_generators())
    for c in socle_gens:
        if not ann.contains(c):
            return REFUTED, {"kind": "killer_gap", "ring": ring_payload(base),
                             "gens": [poly_payload(g) for g in gens],
                             "index": 1, "element": poly_payload(c)}
    cert = {"kind": "gorenstein_closure_bundle", "ring": ring_payload(base),
            "gens": [poly_payload(g) for g in gens],
            "ideal": ideal_payload(i),
            "square_members": members, "square_pending": pending,
            "fractional": fractional,
            "socle": [poly_payload(c) for c in socle_gens]}
    open_frac = any(f["status"] == "inconclusive" for f in fractional)
    return (INCONCLUSIVE if pending or open_frac else VERIFIED), cert


def _run_c8(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _require(i.dimension() == 0, "needs a zero-dimensional ideal")
    seed = int(instance.get("seed", 0))
    gens = list(i.minimal_generators())
    n, d = len(gens), i.height()
    _require(n > d, "needs more generators than the height")
    j = corpus.general_elements(i, d, seed, require_height=d)
    dc = colon(j, colon(j, i))
    rec = build_koszul(gens, base).homology(n - d)
    if rec.vanishing:
        return REFUTED, {"kind": "missing_homology",
                         "ring": ring_payload(base),
                         "gens": [poly_payload(g) for g in gens],
                         "index": n - d}
    if not ideals_equal(rec.annihilator, dc):
        if not dc.contains_ideal(rec.annihilator):
            return REFUTED, _difference_cert(rec.annihilator, dc,
                                             {"index": n - d})
        return REFUTED, _difference_cert(dc, rec.annihilator,
                                         {"index": n - d})
    members, pending, refutation = _membership_run(
        dc.minimal_generators(), i, _m_max(instance))
    if refutation is not None:
        refutation.update({"kind": "closure_refutation",
                           "ring": ring_payload(base),
                           "ideal": ideal_payload(i)})
        return REFUTED, refutation
    cert = {"kind": "double_colon_witnesses", "ring": ring_payload(base),
            "ideal": ideal_payload(i), "seed": seed,
            "general": ideal_payload(j), "index": n - d,
            "double_colon": ideal_payload(dc),
            "members": members, "pending": pending}
    return (INCONCLUSIVE if pending else VERIFIED), cert


def _closed_zero_dim(i: IdealHandle) -> None:
    _require(i.dimension() == 0, "needs a zero-dimensional ideal")
    _require(closure_mod.is_monomial_ideal(i), "needs a monomial ideal")
    _require(ideals_equal(closure_mod.monomial_closure(i), i),
             "needs an integrally closed ideal")


def _run_c9(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _closed_zero_dim(i)
    module = instance.get("module")
    _require(module is not None, "instance needs a 'module' entry")
    t = int(instance.get("t", 1))
    _require(t >= 1, "needs a map index of at least one")
    res = minimal_resolution(module, base, max_length=max(t + 2, 6))
    report = burch_socle_check(module, i, t, m_max=_m_max(instance), res=res)
    shared = {"ring": ring_payload(base), "ideal": ideal_payload(i),
              "module": module_payload(module), "t": t,
              "tor_annihilator": ideal_payload(report.tor_annihilator)}
    if report.hypothesis_holds is None:
        cert = dict(shared, kind="socle_hypothesis_open",
                    bound=_m_max(instance))
        return INCONCLUSIVE, cert
    if report.hypothesis_holds is False:
        scaled = ideal_product(maximal_ideal(base), report.tor_annihilator)
        refutation = None
        for col in res.matrix_columns(t):
            for comp in range(res.rank(t - 1)):
                entry = col.coordinate(comp)
                if entry.is_zero():
                    continue
                v = closure_mod.is_integral_over(entry, scaled,
                                                 _m_max(instance))
                if v.status == "non_member":
                    refutation = {"element": poly_payload(entry),
                                  "normal": [int(a) for a in v.facet[0]],
                                  "rhs": int(v.facet[1]),
                                  "exponent": [int(e)
                                               for e in v.violating_exponent]}
                    break
            if refutation:
                break
        cert = dict(shared, kind="socle_hypothesis_refuted", **refutation)
        return VERIFIED, cert
    if not report.intersection_zero:
        return REFUTED, dict(shared, kind="socle_witness_present")
    for col in res.matrix_columns(t):
        for comp in range(res.rank(t - 1)):
            entry = col.coordinate(comp)
            if not entry.is_zero() and not i.contains(entry):
                return REFUTED, dict(shared, kind="image_outside_ideal",
                                     entry=poly_payload(entry))
    j_t = ideal(base, list(report.tor_annihilator.preimage_polys()))
    gap = _image_covers(res, t, j_t, base)
    if gap is not None:
        g, comp = gap
        return REFUTED, dict(shared, kind="module_image_gap",
                             coefficient=poly_payload(g), component=comp)
    witnesses = [{"status": v.status, "witness": int(v.witness or 0)}
                 for v in report.entry_verdicts]
    cert = dict(shared, kind="socle_image", hypothesis="holds",
                entries=witnesses)
    return VERIFIED, cert


def _run_c10(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _closed_zero_dim(i)
    module = instance.get("module")
    _require(module is not None, "instance needs a 'module' entry")
    t_values = [int(t) for t in instance.get("t_values", (1, 2, 3))]
    _require(t_values and all(t >= 1 for t in t_values),
             "map indices must be at least one")
    res = minimal_resolution(module, base, max_length=max(t_values) + 3)
    _require(not res.truncated, "module resolution must terminate")
    pd = res.length
    claimed = instance.get("pd")
    _require(claimed is None or int(claimed) == pd,
             "declared projective dimension disagrees with the resolution")
    shared = {"ring": ring_payload(base), "ideal": ideal_payload(i),
              "module": module_payload(module), "pd": pd}
    rows = []
    for t in t_values:
        vanishes = tor(module, i, t, res=res).is_zero_module()
        if vanishes != (pd < t):
            return REFUTED, dict(shared, kind="tor_mismatch", t=t,
                                 vanishes=vanishes)
        rows.append([t, vanishes])
    image_certified = []
    for t in t_values:
        report = burch_socle_check(module, i, t, m_max=_m_max(instance),
                                   res=res)
        if report.hypothesis_holds is not True:
            continue
        j_t = ideal(base, list(report.tor_annihilator.preimage_polys()))
        gap = _image_covers(res, t, j_t, base)
        if gap is not None:
            g, comp = gap
            return REFUTED, dict(shared, kind="module_image_gap", t=t,
                                 coefficient=poly_payload(g), component=comp)
        image_certified.append(t)
    cert = dict(shared, kind="tor_vanishing_table", rows=rows,
                image_certified=image_certified)
    return VERIFIED, cert


def _run_c11(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _closed_zero_dim(i)
    j = instance.get("aux")
    _require(isinstance(j, IdealHandle) and j.is_proper() and not j.is_zero(),
             "instance needs a proper nonzero 'aux' ideal")
    meet = ideal_intersection(i, j)
    target = ideal_product(maximal_ideal(base),
                           colon(ideal_product(i, j), meet))
    members, pending, refutation = _membership_run(
        j.minimal_generators(), target, _m_max(instance))
    cert = {"kind": "probe_implication", "ring": ring_payload(base),
            "ideal": ideal_payload(i), "aux": ideal_payload(j),
            "target": ideal_payload(target)}
    if refutation is not None:
        cert["hypothesis"] = "refuted"
        cert["refutation"] = refutation
        return VERIFIED, cert
    cert["members"] = members
    cert["pending"] = pending
    if pending:
        cert["hypothesis"] = "open"
        return INCONCLUSIVE, cert
    cert["hypothesis"] = "holds"
    escape = next((g for g in j.preimage_polys() if not i.contains(g)), None)
    if escape is not None:
        cert["escape"] = poly_payload(escape)
        return REFUTED, cert
    cert["contained"] = True
    return VERIFIED, cert


def _run_c12(instance: dict):
    base = instance.get("ring")
    _require(isinstance(base, Ring), "instance needs a polynomial 'ring'")
    m_ideal = maximal_ideal(base)
    target = closure_mod.monomial_closure(ideal_power(m_ideal, 2))
    res = minimal_resolution(m_ideal, base, max_length=base.nvars + 1)
    _require(not res.truncated and res.length == base.nvars,
             "residue-field resolution must close at the variable count")
    maps = []
    for t in range(1, res.length + 1):
        escape = None
        open_entries = False
        seen = []
        for row in res.matrix_entries(t):
            for entry in row:
                if entry.is_zero():
                    continue
                v = closure_mod.is_integral_over(entry, target,
                                                 _m_max(instance))
                seen.append({"element": poly_payload(entry),
                             "status": v.status})
                if v.status == "non_member":
                    escape = {"t": t, "element": poly_payload(entry),
                              "normal": [int(a) for a in v.facet[0]],
                              "rhs": int(v.facet[1]),
                              "exponent": [int(e)
                                           for e in v.violating_exponent]}
                    break
                if v.status == "inconclusive":
                    open_entries = True
            if escape:
                break
        if escape is None:
            cert = {"kind": "resolution_trapped_map",
                    "ring": ring_payload(base),
                    "target": ideal_payload(target), "t": t,
                    "entries": seen}
            return (INCONCLUSIVE if open_entries else REFUTED), cert
        maps.append(escape)
    cert = {"kind": "resolution_entry_escape", "ring": ring_payload(base),
            "target": ideal_payload(target), "maps": maps}
    return VERIFIED, cert


def _run_c13(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    flags = classify(i)
    _require(flags["almost_complete_intersection"],
             "needs exactly one generator beyond the height")
    _require(flags["perfect"], "needs a perfect ideal")
    gens = list(i.minimal_generators())
    _phi, content = presentation_and_content(gens, base)
    square_colon = colon(ideal_power(i, 2), i)
    if content.mu() != content.height():
        cert = {"kind": "content_not_ci", "ring": ring_payload(base),
                "ideal": ideal_payload(i), "content": ideal_payload(content),
                "content_mu": content.mu(),
                "content_height": content.height(),
                "square_colon": ideal_payload(square_colon)}
        return INCONCLUSIVE, cert
    if not ideals_equal(square_colon, i):
        return REFUTED, _difference_cert(square_colon, i)
    cert = {"kind": "faithful_conormal", "ring": ring_payload(base),
            "gens": [poly_payload(g) for g in gens],
            "ideal": ideal_payload(i), "content": ideal_payload(content),
            "square_colon": ideal_payload(square_colon)}
    return VERIFIED, cert


def _run_c14(instance: dict):
    i = _require_ideal(instance)
    base = _require_poly_base(i)
    _require(i.dimension() == 0, "needs a zero-dimensional ideal")
    question = int(instance.get("question", 1))
    _require(question in (1, 2), "question must be 1 or 2")
    m_max = _m_max(instance)
    gens = list(i.minimal_generators())
    n, d = len(gens), base.nvars
    _require(n > d, "needs more generators than the ambient dimension")
    k = build_koszul(gens, base)
    if question == 1:
        anns = [k.homology(idx).annihilator for idx in range(1, n - d + 1)]
        product = reduce(ideal_product, anns)
        power = ideal_power(i, n - d)
        members, pending, refutation = _membership_run(
            product.minimal_generators(), power, m_max)
        cert = {"kind": "probe_product_memberships",
                "ring": ring_payload(base), "ideal": ideal_payload(i),
                "power": n - d, "product": ideal_payload(product)}
        if refutation is not None:
            cert["refutation"] = refutation
            return REFUTED, cert
        cert["members"] = members
        cert["pending"] = pending
        return (INCONCLUSIVE if pending else VERIFIED), cert
    seed = int(instance.get("seed", 0))
    rows = []
    open_rows = False
    for j_count in range(d, n):
        jgen = corpus.general_elements(i, j_count, seed)
        dc = colon(jgen, colon(jgen, i))
        rec = k.homology(n - j_count)
        if not dc.contains_ideal(rec.annihilator):
            cert = _difference_cert(rec.annihilator, dc,
                                    {"j": j_count,
                                     "general": ideal_payload(jgen)})
            return REFUTED, cert
        members, pending, refutation = _membership_run(
            dc.minimal_generators(), i, m_max)
        if refutation is not None:
            refutation.update({"kind": "closure_refutation",
                               "ring": ring_payload(base),
                               "ideal": ideal_payload(i), "j": j_count})
            return REFUTED, refutation
        if pending:
            open_rows = True
        rows.append({"j": j_count, "general": ideal_payload(jgen),
                     "double_colon": ideal_payload(dc),
                     "members": members, "pending": pending})
    cert = {"kind": "probe_double_colon_chain", "ring": ring_payload(base),
            "ideal": ideal_payload(i), "seed": seed, "rows": rows}
    return (INCONCLUSIVE if open_rows else VERIFIED), cert


# ---------------------------------------------------------------------------
# the registry


class Check:
    """One named verification procedure."""

    __slots__ = ("check_id", "title", "severity", "requirements", "_run")

    def __init__(self, check_id: str, title: str, severity: str,
                 requirements: Sequence[str],
                 run: Callable[[dict], tuple]):
        if severity not in ("theorem", "probe"):
            raise ValueError("severity must be 'theorem' or 'probe'")
        self.check_id = check_id
        self.title = title
        self.severity = severity
        self.requirements = tuple(requirements)
        self._run = run

    def __repr__(self):
        return f"Check({self.check_id}, {self.severity})"


CHECKS = {
    c.check_id: c for c in (
        Check("C1", "first-homology annihilator of an integrally closed "
              "zero-dimensional monomial ideal equals the ideal", "theorem",
              ("polynomial ring", "monomial", "zero-dimensional",
               "integrally closed", "not a complete intersection"), _run_c1),
        Check("C2", "socle-level killers of first homology are integral "
              "over the ideal", "theorem",
              ("polynomial ring", "zero-dimensional",
               "not a complete intersection"), _run_c2),
        Check("C3", "first-homology annihilator sits inside the colon by "
              "the presentation content, with equality for syzygetic "
              "ideals", "theorem", ("polynomial ring", "proper nonzero"),
              _run_c3),
        Check("C4", "the colon by the presentation content and the "
              "first-homology annihilator fall into the ideal at the "
              "power one above its projective dimension", "theorem",
              ("polynomial ring", "proper nonzero"), _run_c4),
        Check("C5", "every surviving homology of a height-two perfect "
              "ideal has annihilator equal to the ideal", "theorem",
              ("polynomial ring", "height two", "perfect"), _run_c5),
        Check("C6", "the socle kills first homology for zero-dimensional "
              "Gorenstein non-complete-intersections, strictly", "theorem",
              ("polynomial ring", "zero-dimensional", "Gorenstein quotient",
               "not a complete intersection"), _run_c6),
        Check("C7", "squared first-homology annihilator of a height-three "
              "Gorenstein ideal is integral over the ideal, with the "
              "fractional-power refinement and socle annihilation",
              "theorem",
              ("polynomial ring", "height three", "Gorenstein quotient",
               "odd generator count at least five",
               "characteristic not two"), _run_c7),
        Check("C8", "the double colon by a general-element complete "
              "intersection equals the last surviving homology "
              "annihilator and is integral over the ideal", "theorem",
              ("polynomial ring", "zero-dimensional",
               "more generators than the height"), _run_c8),
        Check("C9", "when every resolution-map entry is integral over the "
              "scaled Tor annihilator, the reduced image avoids the socle, "
              "lands in the ideal, and the annihilator multiples of the "
              "next free module are boundaries", "theorem",
              ("polynomial ring", "zero-dimensional monomial integrally "
               "closed ideal", "resolvable module", "map index"), _run_c9),
        Check("C10", "Tor against an integrally closed zero-dimensional "
              "ideal vanishes exactly beyond the projective dimension",
              "theorem",
              ("polynomial ring", "zero-dimensional monomial integrally "
               "closed ideal", "resolvable module of known projective "
               "dimension"), _run_c10),
        Check("C11", "an ideal integral over the scaled mixed colon is "
              "contained in the test ideal", "probe",
              ("polynomial ring", "zero-dimensional monomial integrally "
               "closed ideal", "auxiliary proper ideal"), _run_c11),
        Check("C12", "every map in the residue-field resolution has an "
              "entry outside the closure of the squared maximal ideal",
              "theorem", ("polynomial ring",), _run_c12),
        Check("C13", "conormal faithfulness: the square colon returns the "
              "ideal when the presentation content is a complete "
              "intersection", "theorem",
              ("polynomial ring", "almost complete intersection",
               "perfect"), _run_c13),
        Check("C14", "open-question probes: annihilator products against "
              "ideal powers, and double-colon sandwiches for general "
              "subideals", "probe",
              ("polynomial ring", "zero-dimensional",
               "more generators than the ambient dimension"), _run_c14),
    )
}


def checks() -> dict:
    """Identifier-to-Check registry (a copy)."""
    return dict(CHECKS)


class Outcome:
    """Result of one check on one instance."""

    __slots__ = ("check_id", "instance", "status", "certificate", "millis")

    def __init__(self, check_id: str, instance: str, status: str,
                 certificate: dict, millis: int = 0):
        self.check_id = check_id
        self.instance = instance
        self.status = status
        self.certificate = certificate
        self.millis = millis

    def record(self) -> dict:
        """Canonical dict with wall-clock zeroed, for reproducible reports."""
        return {"check": self.check_id, "instance": self.instance,
                "status": self.status, "certificate": self.certificate,
                "millis": 0}

    def to_dict(self, with_timings: bool = False) -> dict:
        data = self.record()
        if with_timings:
            data["millis"] = self.millis
        return data

    def __repr__(self):
        return f"Outcome({self.check_id}, {self.instance!r}, {self.status})"


def run_check(check, instance: dict) -> Outcome:
    """Run one check on one instance.

    Requirement violations raise CheckRequirementError before any verdict
    is computed."""
    if not isinstance(check, Check):
        if check not in CHECKS:
            raise CheckRequirementError(f"unknown check {check!r}")
        check = CHECKS[check]
    name = instance.get("name")
    if not name:
        raise CheckRequirementError("instance needs a 'name' entry")
    start = time.perf_counter()
    status, certificate = check._run(instance)
    millis = int(round((time.perf_counter() - start) * 1000))
    return Outcome(check.check_id, str(name), status, certificate, millis)


def _sort_key(outcome: Outcome):
    return (len(outcome.check_id), outcome.check_id, outcome.instance)


def summarize(outcomes: Sequence[Outcome]) -> dict:
    counts = {VERIFIED: 0, REFUTED: 0, INCONCLUSIVE: 0}
    flagged = []
    for o in outcomes:
        counts[o.status] += 1
        if o.status == REFUTED and CHECKS[o.check_id].severity == "theorem":
            flagged.append(f"{o.check_id}:{o.instance}")
    return {"verified": counts[VERIFIED], "refuted": counts[REFUTED],
            "inconclusive": counts[INCONCLUSIVE], "total": len(outcomes),
            "theorem_refutations": sorted(flagged)}


class _CheckTimeout(Exception):
    pass


def _run_with_timeout(check_id, instance: dict, seconds: float) -> Outcome:
    import signal

    def onalarm(signum, frame):
        raise _CheckTimeout()

    try:
        old = signal.signal(signal.SIGALRM, onalarm)
    except ValueError:
        # not on the main thread; best effort without a budget
        return run_check(check_id, instance)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        return run_check(check_id, instance)
    except _CheckTimeout:
        cid = check_id.check_id if isinstance(check_id, Check) else check_id
        cert = {"kind": "timeout", "seconds": seconds, "reason": "timeout"}
        return Outcome(cid, str(instance.get("name", "?")), INCONCLUSIVE,
                       cert, int(seconds * 1000))
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def run_suite(tasks=None, jobs: int = 1, timeout: Optional[float] = None):
    """Run (check, instance) pairs; canonical outcome order plus summary.

    Theorem-severity refutations are listed under 'theorem_refutations' in
    the summary.  A timeout turns the affected check inconclusive."""
    if tasks is None:
        tasks = default_suite()
    tasks = list(tasks)
    if timeout is not None:
        outcomes = [_run_with_timeout(cid, inst, timeout)
                    for cid, inst in tasks]
    elif jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(lambda task: run_check(*task), tasks))
    else:
        outcomes = [run_check(cid, inst) for cid, inst in tasks]
    outcomes.sort(key=_sort_key)
    return outcomes, summarize(outcomes)


# ---------------------------------------------------------------------------
# the default suite


def module_with_known_pd(seed: int, base: Optional[Ring] = None):
    """A graded module over a two-variable ring with its exact projective
    dimension: free (0), a hypersurface quotient (1), or a
    zero-dimensional quotient (2).  Generator degrees stay at most two so
    the scaled-annihilator closure hypothesis only certifies where the
    covering claim is provable."""
    if base is None:
        base = Ring(("x", "y"), QQ)
    shape = seed % 3
    if shape == 0:
        rank = 1 + (seed // 3) % 2
        twists = tuple(range(rank))
        return f"free[rank={rank},seed={seed}]", (rank, twists, ()), 0
    if shape == 1:
        recipe = corpus.GeneratorRecipe("complete_intersection", seed,
                                        nvars=2, codim=1, max_degree=2)
        return f"hypersurface[seed={seed}]", corpus.generate(recipe), 1
    recipe = corpus.GeneratorRecipe("monomial_mprimary", seed, nvars=2,
                                    max_degree=2)
    return f"zero-dim[seed={seed}]", corpus.generate(recipe), 2


def _generated(kind: str, seed: int, **params) -> IdealHandle:
    return corpus.generate(corpus.GeneratorRecipe(kind, seed, **params))


def surplus_generator_ideals(nvars: int, count: int, kind: str = "monomial_mprimary"):
    """First seeds whose generated ideal needs more than nvars
    generators, as (seed, ideal) pairs; the scan order is deterministic."""
    found = []
    seed = 0
    while len(found) < count:
        i = _generated(kind, seed, nvars=nvars)
        if i.mu() > nvars:
            found.append((seed, i))
        seed += 1
        if seed > 500:
            raise RuntimeError("generator kept producing complete "
                               "intersections")
    return found


def default_suite() -> list:
    """The deterministic (check, instance) list the reports are built on."""
    tasks = []

    for nv, total in ((2, 17), (3, 8)):
        for seed in range(total):
            i = _generated("integrally_closed_monomial", seed, nvars=nv)
            tasks.append(("C1", {
                "name": f"closed-monomial[nvars={nv},seed={seed}]",
                "ideal": i}))

    # C4 needs surplus generators: with a regular sequence the first homology
    # vanishes and its annihilator is the whole ring, so the power containment
    # is vacuously false, not a theorem failure.
    pool2 = surplus_generator_ideals(2, 25)
    for seed, i in pool2[:8]:
        tasks.append(("C2", {
            "name": f"zero-dim[nvars=2,seed={seed}]", "ideal": i}))

    plain = [( seed, _generated("monomial_mprimary", seed, nvars=2))
             for seed in range(25)]
    for seed, i in plain:
        tasks.append(("C3", {"name": f"zero-dim[nvars=2,seed={seed}]",
                             "ideal": i}))
    for seed, i in pool2:
        tasks.append(("C4", {"name": f"zero-dim[nvars=2,seed={seed}]",
                             "ideal": i}))

    quintic = corpus.example("example-4.3").build()
    square = corpus.example("square-remark").build()
    binomial = corpus.example("binomial-CHV").build()
    tasks.append(("C3", {"name": "example-4.3", "ideal": quintic["ideal"]}))
    tasks.append(("C3", {"name": "binomial-CHV", "ideal": binomial["ideal"]}))
    tasks.append(("C4", {"name": "square-remark", "ideal": square["ideal"]}))
    tasks.append(("C4", {"name": "example-4.3", "ideal": quintic["ideal"]}))

    for seed in range(10):
        size = 3 if seed < 6 else 4
        i = _generated("hilbert_burch", seed, nvars=2, size=size)
        tasks.append(("C5", {
            "name": f"determinantal[size={size},seed={seed}]", "ideal": i}))
    ci = _generated("complete_intersection", 0, nvars=2, codim=2)
    tasks.append(("C5", {"name": "complete-intersection[seed=0]",
                         "ideal": ci}))

    for seed in range(3):
        i = _generated("pfaffian_gorenstein", seed, nvars=3, size=2)
        tasks.append(("C6", {"name": f"skew-ideal[seed={seed}]", "ideal": i}))

    big_prime = GF(2147483647)
    for seed in range(5):
        i = _generated("pfaffian_gorenstein", seed, nvars=3, size=2,
                       field=big_prime)
        tasks.append(("C7", {
            "name": f"skew-ideal[fp,seed={seed}]", "ideal": i}))
    for seed in range(2):
        i = _generated("pfaffian_gorenstein", seed, nvars=3, size=2)
        tasks.append(("C7", {"name": f"skew-ideal[qq,seed={seed}]",
                             "ideal": i}))

    for seed, i in pool2[:7]:
        tasks.append(("C8", {"name": f"zero-dim[nvars=2,seed={seed}]",
                             "ideal": i, "seed": seed}))
    for seed, i in surplus_generator_ideals(3, 3):
        tasks.append(("C8", {"name": f"zero-dim[nvars=3,seed={seed}]",
                             "ideal": i, "seed": seed}))

    base2 = Ring(("x", "y"), QQ)
    closed2 = ideal_power(maximal_ideal(base2), 2)
    x, y = base2.variables()
    conic = ideal(base2, (x * x + y * y,))
    for mod_name, module, t in (
            ("free rank 1", (1, (0,), ()), 1),
            ("free rank 2", (2, (0, 1), ()), 1),
            ("conic quotient", conic, 1),
            ("conic quotient", conic, 2)):
        tasks.append(("C9", {"name": f"{mod_name} @ t={t}", "ideal": closed2,
                             "module": module, "t": t}))

    for seed in range(10):
        mod_name, module, pd = module_with_known_pd(seed, base2)
        tasks.append(("C10", {"name": mod_name, "ideal": closed2,
                              "module": module, "pd": pd,
                              "t_values": (1, 2, 3)}))

    cube = ideal_power(maximal_ideal(base2), 3)
    principal = ideal(base2, (x,))
    for aux_name, aux in (("scaled ideal", cube),
                          ("coordinate line", principal),
                          ("the ideal itself", closed2)):
        tasks.append(("C11", {"name": f"square vs {aux_name}",
                              "ideal": closed2, "aux": aux}))

    tasks.append(("C12", {"name": "two variables", "ring": base2}))
    tasks.append(("C12", {"name": "three variables",
                          "ring": Ring(("x", "y", "z"), QQ)}))

    tasks.append(("C13", {"name": "square-remark", "ideal": square["ideal"]}))
    tasks.append(("C13", {"name": "example-4.3", "ideal": quintic["ideal"]}))
    for seed in range(3):
        i = _generated("hilbert_burch", seed, nvars=2, size=3)
        tasks.append(("C13", {"name": f"determinantal[size=3,seed={seed}]",
                              "ideal": i}))

    probes = pool2[:10]
    for seed, i in probes:
        tasks.append(("C14", {"name": f"product[q1,seed={seed}]", "ideal": i,
                              "question": 1}))
    for seed, i in probes:
        tasks.append(("C14", {"name": f"sandwich[q2,seed={seed}]", "ideal": i,
                              "question": 2, "seed": seed}))

    return tasks


# ---------------------------------------------------------------------------
# certificate re-verification


def _v_annihilator_equality(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    i = restore_ideal(base, cert["ideal"])
    ann = ann_h1(gens, base)
    if not ideals_equal(ann, restore_ideal(base, cert["annihilator"])):
        return False
    if not ideals_equal(ann, i):
        return False
    for data in cert["colon_checked"]:
        c = restore_poly(base, data)
        if i.contains(c) or not _colon_agreement(i, c):
            return False
    return True


def _v_ideal_difference_witness(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    big = restore_ideal(base, cert["superset"])
    small = restore_ideal(base, cert["subset"])
    w = restore_poly(ambient(base), cert["element"])
    return big.contains(w) and not small.contains(w)


def _v_colon_disagreement(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    c = restore_poly(ambient(base), cert["element"])
    w = restore_poly(ambient(base), cert["witness"])
    scaled = ideal_product(maximal_ideal(i.ring), i)
    return i.contains(w * c) and not scaled.contains(w * c)


def _v_closure_refutation(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    return _verify_refutation(base, i, cert)


def _v_socle_killer_memberships(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    for data in cert["colon_checked"]:
        c = restore_poly(base, data)
        if i.contains(c) or not _colon_agreement(i, c):
            return False
    return _verify_memberships(base, i, cert["members"], cert["pending"])


def _v_syzygetic_colon(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    i = restore_ideal(base, cert["ideal"])
    ann = ann_h1(gens, base)
    _phi, content = presentation_and_content(gens, base)
    against = colon(i, content)
    if not ideals_equal(ann, restore_ideal(base, cert["annihilator"])):
        return False
    if not ideals_equal(against, restore_ideal(base, cert["colon"])):
        return False
    if not against.contains_ideal(ann):
        return False
    _delta, syzygetic = delta_invariant(gens, base)
    if bool(cert["syzygetic"]) != bool(syzygetic):
        return False
    equal = ideals_equal(ann, against)
    if bool(cert["equal"]) != equal:
        return False
    return equal or not syzygetic


def _v_power_containment(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    power = int(cert["power"])
    flags = classify(i)
    if power != max(flags["projective_dimension"] - 1, 0) + 1:
        return False
    for key in ("colon", "annihilator"):
        source = restore_ideal(base, cert[key])
        if not i.contains_ideal(ideal_power(source, power)):
            return False
    return True


def _v_homology_annihilator_sweep(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    i = restore_ideal(base, cert["ideal"])
    k = build_koszul(gens, base)
    zero = [int(t) for t in cert["zero_indices"]]
    match = [int(t) for t in cert["match_indices"]]
    if sorted(zero + match) != list(range(1, k.n + 1)):
        return False
    for idx in zero:
        if not k.homology(idx).vanishing:
            return False
    for idx in match:
        rec = k.homology(idx)
        if rec.vanishing or not ideals_equal(rec.annihilator, i):
            return False
    return True


def _v_socle_kills(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    i = restore_ideal(base, cert["ideal"])
    ann = ann_h1(gens, base)
    soc = socle_colon(i)
    recorded = [restore_poly(base, c) for c in cert["socle"]]
    if not ideals_equal(soc, ideal(base, recorded)):
        return False
    for c in recorded:
        if not ann.contains(c):
            return False
    return not ideals_equal(ann, i)


def _v_killer_gap(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    c = restore_poly(base, cert["element"])
    k = build_koszul(gens, base)
    return not k.homology(int(cert["index"])).annihilator.contains(c)


def _v_annihilator_strictness_gap(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    i = restore_ideal(base, cert["ideal"])
    return ideals_equal(ann_h1(gens, base), i)


def _v_gorenstein_closure_bundle(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    i = restore_ideal(base, cert["ideal"])
    if not _verify_memberships(base, i, cert["square_members"],
                               cert["square_pending"]):
        return False
    for entry in cert["fractional"]:
        g = restore_poly(base, entry["element"])
        a, b = int(entry["numerator"]), int(entry["denominator"])
        target = ideal_power(i, a)
        if entry["status"] == "member":
            if not closure_mod.verify_member_witness(g ** b, target,
                                                     int(entry["witness"])):
                return False
        else:
            v = closure_mod.is_integral_over(g ** b, target,
                                             int(entry["bound"]))
            if v.status != "inconclusive":
                return False
    ann = ann_h1(gens, base)
    soc = socle_colon(i)
    recorded = [restore_poly(base, c) for c in cert["socle"]]
    if not ideals_equal(soc, ideal(base, recorded)):
        return False
    return all(ann.contains(c) for c in recorded)


def _v_double_colon_witnesses(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    j = restore_ideal(base, cert["general"])
    dc = colon(j, colon(j, i))
    if not ideals_equal(dc, restore_ideal(base, cert["double_colon"])):
        return False
    gens = list(i.minimal_generators())
    rec = build_koszul(gens, base).homology(int(cert["index"]))
    if rec.vanishing or not ideals_equal(rec.annihilator, dc):
        return False
    return _verify_memberships(base, i, cert["members"], cert["pending"])


def _v_missing_homology(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    return build_koszul(gens, base).homology(int(cert["index"])).vanishing


def _restore_instance_c9(cert: dict):
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    module = restore_module(base, cert["module"])
    t = int(cert["t"])
    res = minimal_resolution(module, base, max_length=max(t + 2, 6))
    report = burch_socle_check(module, i, t, res=res)
    return base, i, module, t, res, report


def _v_socle_image(cert: dict) -> bool:
    base, i, module, t, res, report = _restore_instance_c9(cert)
    if report.hypothesis_holds is not True or not report.intersection_zero:
        return False
    for col in res.matrix_columns(t):
        for comp in range(res.rank(t - 1)):
            entry = col.coordinate(comp)
            if not entry.is_zero() and not i.contains(entry):
                return False
    j_t = ideal(base, list(report.tor_annihilator.preimage_polys()))
    return _image_covers(res, t, j_t, base) is None


def _v_socle_hypothesis_refuted(cert: dict) -> bool:
    base, i, module, t, res, report = _restore_instance_c9(cert)
    if report.hypothesis_holds is not False:
        return False
    scaled = ideal_product(maximal_ideal(base), report.tor_annihilator)
    return _verify_refutation(base, scaled, cert)


def _v_socle_hypothesis_open(cert: dict) -> bool:
    _base, _i, _module, _t, _res, report = _restore_instance_c9(cert)
    return report.hypothesis_holds is None


def _v_socle_witness_present(cert: dict) -> bool:
    _base, _i, _module, _t, _res, report = _restore_instance_c9(cert)
    return report.hypothesis_holds is True and not report.intersection_zero


def _v_image_outside_ideal(cert: dict) -> bool:
    base, i, _module, t, res, report = _restore_instance_c9(cert)
    if report.hypothesis_holds is not True:
        return False
    entry = restore_poly(base, cert["entry"])
    found = any(col.coordinate(comp) == entry
                for col in res.matrix_columns(t)
                for comp in range(res.rank(t - 1)))
    return found and not i.contains(entry)


def _v_module_image_gap(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    module = restore_module(base, cert["module"])
    t = int(cert["t"])
    res = minimal_resolution(module, base, max_length=max(t + 3, 6))
    report = burch_socle_check(module, i, t, res=res)
    if report.hypothesis_holds is not True:
        return False
    g = restore_poly(base, cert["coefficient"])
    if not report.tor_annihilator.contains(g):
        return False
    elt = ModuleElement.from_poly(g, int(cert["component"]), res.rank(t))
    return not image_contains(res, t, elt, base)


def _v_tor_vanishing_table(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    module = restore_module(base, cert["module"])
    rows = cert["rows"]
    top = max(int(r[0]) for r in rows)
    res = minimal_resolution(module, base, max_length=top + 3)
    if res.truncated or res.length != int(cert["pd"]):
        return False
    for t, vanishes in rows:
        actual = tor(module, i, int(t), res=res).is_zero_module()
        if actual != bool(vanishes) or actual != (res.length < int(t)):
            return False
    for t in cert["image_certified"]:
        report = burch_socle_check(module, i, int(t), res=res)
        if report.hypothesis_holds is not True:
            return False
        j_t = ideal(base, list(report.tor_annihilator.preimage_polys()))
        if _image_covers(res, int(t), j_t, base) is not None:
            return False
    return True


def _v_tor_mismatch(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    module = restore_module(base, cert["module"])
    t = int(cert["t"])
    res = minimal_resolution(module, base, max_length=t + 3)
    vanishes = tor(module, i, t, res=res).is_zero_module()
    return vanishes == bool(cert["vanishes"]) and \
        vanishes != (res.length < t)


def _v_probe_implication(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    j = restore_ideal(base, cert["aux"])
    meet = ideal_intersection(i, j)
    target = ideal_product(maximal_ideal(base),
                           colon(ideal_product(i, j), meet))
    if not ideals_equal(target, restore_ideal(base, cert["target"])):
        return False
    state = cert["hypothesis"]
    if state == "refuted":
        return _verify_refutation(base, target, cert["refutation"])
    if not _verify_memberships(base, target, cert["members"],
                               cert["pending"]):
        return False
    if state == "open":
        return bool(cert["pending"])
    if "escape" in cert:
        g = restore_poly(base, cert["escape"])
        return j.contains(g) and not i.contains(g)
    return i.contains_ideal(j)


def _v_resolution_entry_escape(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    m_ideal = maximal_ideal(base)
    target = restore_ideal(base, cert["target"])
    if not ideals_equal(target,
                        closure_mod.monomial_closure(
                            ideal_power(m_ideal, 2))):
        return False
    res = minimal_resolution(m_ideal, base, max_length=base.nvars + 1)
    observed = sorted(int(m["t"]) for m in cert["maps"])
    if observed != list(range(1, res.length + 1)):
        return False
    for item in cert["maps"]:
        t = int(item["t"])
        entry = restore_poly(base, item["element"])
        present = any(entry == cell for row in res.matrix_entries(t)
                      for cell in row)
        if not present or not _verify_refutation(base, target, item):
            return False
    return True


def _v_resolution_trapped_map(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    target = restore_ideal(base, cert["target"])
    t = int(cert["t"])
    res = minimal_resolution(maximal_ideal(base), base,
                             max_length=base.nvars + 1)
    entries = [cell for row in res.matrix_entries(t) for cell in row
               if not cell.is_zero()]
    recorded = [restore_poly(base, item["element"])
                for item in cert["entries"]]
    if len(entries) != len(recorded):
        return False
    for cell in entries:
        v = closure_mod.is_integral_over(cell, target)
        if v.status == "non_member":
            return False
    return True


def _v_faithful_conormal(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    gens = [restore_poly(base, g) for g in cert["gens"]]
    i = restore_ideal(base, cert["ideal"])
    _phi, content = presentation_and_content(gens, base)
    if not ideals_equal(content, restore_ideal(base, cert["content"])):
        return False
    if content.mu() != content.height():
        return False
    square_colon = colon(ideal_power(i, 2), i)
    return ideals_equal(square_colon, i) and \
        ideals_equal(square_colon, restore_ideal(base, cert["square_colon"]))


def _v_content_not_ci(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    gens = list(i.minimal_generators())
    _phi, content = presentation_and_content(gens, base)
    if not ideals_equal(content, restore_ideal(base, cert["content"])):
        return False
    if content.mu() == content.height():
        return False
    square_colon = colon(ideal_power(i, 2), i)
    return ideals_equal(square_colon,
                        restore_ideal(base, cert["square_colon"]))


def _v_probe_product_memberships(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    power = int(cert["power"])
    gens = list(i.minimal_generators())
    k = build_koszul(gens, base)
    anns = [k.homology(idx).annihilator for idx in range(1, power + 1)]
    product = reduce(ideal_product, anns)
    if not ideals_equal(product, restore_ideal(base, cert["product"])):
        return False
    target = ideal_power(i, power)
    if "refutation" in cert:
        return _verify_refutation(base, target, cert["refutation"])
    return _verify_memberships(base, target, cert["members"],
                               cert["pending"])


def _v_probe_double_colon_chain(cert: dict) -> bool:
    base = restore_ring(cert["ring"])
    i = restore_ideal(base, cert["ideal"])
    seed = int(cert["seed"])
    gens = list(i.minimal_generators())
    k = build_koszul(gens, base)
    n = len(gens)
    expected = list(range(base.nvars, n))
    if [int(r["j"]) for r in cert["rows"]] != expected:
        return False
    for row in cert["rows"]:
        j_count = int(row["j"])
        jgen = corpus.general_elements(i, j_count, seed)
        if not ideals_equal(jgen, restore_ideal(base, row["general"])):
            return False
        dc = colon(jgen, colon(jgen, i))
        if not ideals_equal(dc, restore_ideal(base, row["double_colon"])):
            return False
        if not dc.contains_ideal(k.homology(n - j_count).annihilator):
            return False
        if not _verify_memberships(base, i, row["members"], row["pending"]):
            return False
    return True


def _v_timeout(cert: dict) -> bool:
    return float(cert.get("seconds", 0)) > 0


_VERIFIERS = {
    "annihilator_equality": _v_annihilator_equality,
    "ideal_difference_witness": _v_ideal_difference_witness,
    "colon_disagreement": _v_colon_disagreement,
    "closure_refutation": _v_closure_refutation,
    "socle_killer_memberships": _v_socle_killer_memberships,
    "syzygetic_colon": _v_syzygetic_colon,
    "power_containment": _v_power_containment,
    "homology_annihilator_sweep": _v_homology_annihilator_sweep,
    "socle_kills": _v_socle_kills,
    "killer_gap": _v_killer_gap,
    "annihilator_strictness_gap": _v_annihilator_strictness_gap,
    "gorenstein_closure_bundle": _v_gorenstein_closure_bundle,
    "double_colon_witnesses": _v_double_colon_witnesses,
    "missing_homology": _v_missing_homology,
    "socle_image": _v_socle_image,
    "socle_hypothesis_refuted": _v_socle_hypothesis_refuted,
    "socle_hypothesis_open": _v_socle_hypothesis_open,
    "socle_witness_present": _v_socle_witness_present,
    "image_outside_ideal": _v_image_outside_ideal,
    "module_image_gap": _v_module_image_gap,
    "tor_vanishing_table": _v_tor_vanishing_table,
    "tor_mismatch": _v_tor_mismatch,
    "probe_implication": _v_probe_implication,
    "resolution_entry_escape": _v_resolution_entry_escape,
    "resolution_trapped_map": _v_resolution_trapped_map,
    "faithful_conormal": _v_faithful_conormal,
    "content_not_ci": _v_content_not_ci,
    "probe_product_memberships": _v_probe_product_memberships,
    "probe_double_colon_chain": _v_probe_double_colon_chain,
    "timeout": _v_timeout,
}


def verify_certificate(outcome) -> bool:
    """Independently re-execute the minimal claim behind a certificate.

    Accepts an Outcome or a bare certificate dict; any malformed or
    tampered payload comes back False rather than raising."""
    cert = outcome.certificate if isinstance(outcome, Outcome) else outcome
    if not isinstance(cert, dict):
        return False
    if "kind" not in cert and isinstance(cert.get("certificate"), dict):
        cert = cert["certificate"]
    verifier = _VERIFIERS.get(cert.get("kind"))
    if verifier is None:
        return False
    try:
        return bool(verifier(cert))
    except Exception:
        return False
