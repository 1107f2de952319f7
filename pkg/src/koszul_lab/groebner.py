"""Groebner bases over free modules, syzygies, kernels of module maps.

The engine is Buchberger's algorithm with the Gebauer-Moeller pair update
(product criterion in rank one, chain criterion everywhere) and sugar-degree
pair selection.  Bases are interreduced, made monic, and sorted, so a
reduced basis is a canonical form: two submodules are equal exactly when
their reduced bases are equal.

Everything runs over the ambient polynomial ring.  A computation over a
quotient ring S/J lifts to S by appending J times each standard basis
vector as extra columns; results are projected back.

Syzygies use Schreyer's construction: representations of the basis in terms
of the input are tracked through Buchberger, and the standard expressions
of all S-pair reductions of the final basis give a generating set of the
syzygy module.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from koszul_lab.polyring import (
    AnyRing,
    EliminationOrder,
    Monomial,
    MonomialOrder,
    Polynomial,
    QuotientRing,
    Ring,
    ambient,
    mon_coprime,
    mon_degree,
    mon_div,
    mon_divides,
    mon_lcm,
    mon_mul,
    mon_one,
)


class ModuleOrder:
    """Extension of a ring order to free-module terms (component, monomial).

    POT (the default) ranks by position first, with e_0 largest.  ELIM is
    the block order used for tag-variable elimination: the leading block of
    exponents dominates both position and the base order, so a basis
    element with block-free lead is block-free throughout.
    """

    __slots__ = ("ring_order", "rule")

    def __init__(self, ring_order: MonomialOrder, rule: str = "POT"):
        if rule not in ("POT", "TOP", "ELIM"):
            raise ValueError(f"unknown module order rule {rule!r}")
        if rule == "ELIM" and not isinstance(ring_order, EliminationOrder):
            raise ValueError("ELIM module order needs an EliminationOrder ring order")
        self.ring_order = ring_order
        self.rule = rule

    def key(self, comp: int, mon: Monomial):
        if self.rule == "POT":
            return (-comp, self.ring_order.key(mon))
        if self.rule == "TOP":
            return (self.ring_order.key(mon), -comp)
        block = self.ring_order.block
        head = mon[:block]
        return (sum(head), head, -comp, self.ring_order.base.key(mon[block:]))

    def __eq__(self, other):
        return (
            isinstance(other, ModuleOrder)
            and other.rule == self.rule
            and other.ring_order == self.ring_order
        )

    def __hash__(self):
        return hash((self.rule, self.ring_order))

    def __repr__(self):
        return f"{self.rule}/{self.ring_order}"


class ModuleElement:
    """Element of a free module R^rank: terms (component, monomial, coeff),
    strictly descending in the module order."""

    __slots__ = ("ring", "rank", "order", "terms")

    def __init__(self, ring_: Ring, rank: int, order: ModuleOrder, terms: tuple):
        self.ring = ring_
        self.rank = rank
        self.order = order
        self.terms = terms

    @classmethod
    def from_dict(cls, ring_: Ring, rank: int, order: ModuleOrder, coeffs: dict) -> "ModuleElement":
        field = ring_.field
        items = [
            (comp, mon, c)
            for (comp, mon), c in coeffs.items()
            if not field.is_zero(c)
        ]
        items.sort(key=lambda t: order.key(t[0], t[1]), reverse=True)
        return cls(ring_, rank, order, tuple(items))

    @classmethod
    def from_poly(cls, f: Polynomial, comp: int = 0, rank: int = 1,
                  order: Optional[ModuleOrder] = None) -> "ModuleElement":
        order = order or ModuleOrder(f.ring.order)
        terms = tuple((comp, m, c) for m, c in f.terms)
        if order.rule != "POT":
            terms = tuple(sorted(terms, key=lambda t: order.key(t[0], t[1]), reverse=True))
        return cls(f.ring, rank, order, terms)

    def to_poly(self) -> Polynomial:
        if self.rank != 1:
            raise ValueError("only rank-1 elements convert to polynomials")
        return self.coordinate(0)

    def coordinate(self, i: int) -> Polynomial:
        key = self.ring.order.key
        terms = sorted(
            ((m, c) for comp, m, c in self.terms if comp == i),
            key=lambda t: key(t[0]),
            reverse=True,
        )
        return Polynomial(self.ring, tuple(terms))

    def components(self) -> set:
        return {comp for comp, _, _ in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lead(self) -> tuple:
        if not self.terms:
            raise ValueError("zero element has no lead term")
        return self.terms[0]

    def degree(self, twists: Optional[Sequence[int]] = None) -> int:
        """Largest (twisted) total degree over the terms; -1 when zero."""
        if not self.terms:
            return -1
        if twists is None:
            return max(mon_degree(m) for _, m, _ in self.terms)
        return max(mon_degree(m) + twists[comp] for comp, m, _ in self.terms)

    def is_homogeneous(self, twists: Optional[Sequence[int]] = None) -> bool:
        if not self.terms:
            return True
        if twists is None:
            degs = {mon_degree(m) for _, m, _ in self.terms}
        else:
            degs = {mon_degree(m) + twists[comp] for comp, m, _ in self.terms}
        return len(degs) == 1

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(self.ring, self.rank, self.order,
                             _merge_terms(self, other, sub=False))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(self.ring, self.rank, self.order,
                             _merge_terms(self, other, sub=True))

    def __neg__(self) -> "ModuleElement":
        neg = self.ring.field.neg
        return ModuleElement(self.ring, self.rank, self.order,
                             tuple((cp, m, neg(c)) for cp, m, c in self.terms))

    def term_mul(self, mon: Monomial, coeff) -> "ModuleElement":
        field = self.ring.field
        if field.is_zero(coeff):
            return ModuleElement(self.ring, self.rank, self.order, ())
        return ModuleElement(
            self.ring, self.rank, self.order,
            tuple((cp, mon_mul(m, mon), field.mul(c, coeff)) for cp, m, c in self.terms),
        )

    def poly_mul(self, f: Polynomial) -> "ModuleElement":
        if f.is_zero() or self.is_zero():
            return ModuleElement(self.ring, self.rank, self.order, ())
        field = self.ring.field
        acc: dict = {}
        for fm, fc in f.terms:
            for cp, m, c in self.terms:
                k = (cp, mon_mul(m, fm))
                v = field.mul(c, fc)
                prev = acc.get(k)
                if prev is None:
                    acc[k] = v
                else:
                    s = field.add(prev, v)
                    if field.is_zero(s):
                        del acc[k]
                    else:
                        acc[k] = s
        return ModuleElement.from_dict(self.ring, self.rank, self.order, acc)

    def scale(self, c) -> "ModuleElement":
        field = self.ring.field
        if field.is_zero(c):
            return ModuleElement(self.ring, self.rank, self.order, ())
        return ModuleElement(self.ring, self.rank, self.order,
                             tuple((cp, m, field.mul(x, c)) for cp, m, x in self.terms))

    def monic(self) -> "ModuleElement":
        if not self.terms:
            return self
        field = self.ring.field
        lc = self.terms[0][2]
        if field.is_one(lc):
            return self
        return self.scale(field.inv(lc))

    def embed(self, rank: int, offset: int) -> "ModuleElement":
        """View inside a larger free module, components shifted by offset."""
        return ModuleElement(self.ring, rank, self.order,
                             tuple((cp + offset, m, c) for cp, m, c in self.terms))

    def project(self, rank: int) -> "ModuleElement":
        """Restrict to the first `rank` components."""
        terms = tuple(t for t in self.terms if t[0] < rank)
        return ModuleElement(self.ring, rank, self.order, terms)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and other.ring == self.ring
            and other.rank == self.rank
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, self.rank, self.terms))

    def __repr__(self):
        if not self.terms:
            return "(0)"
        return " + ".join(
            f"({self.coordinate(i)})*e{i}" for i in sorted(self.components())
        )


def _merge_terms(a: ModuleElement, b: ModuleElement, sub: bool) -> tuple:
    field = a.ring.field
    key = a.order.key
    out = []
    ta, tb = a.terms, b.terms
    i, j, na, nb = 0, 0, len(ta), len(tb)
    while i < na and j < nb:
        ca, ma, xa = ta[i]
        cb, mb, xb = tb[j]
        if ca == cb and ma == mb:
            c = field.sub(xa, xb) if sub else field.add(xa, xb)
            if not field.is_zero(c):
                out.append((ca, ma, c))
            i += 1
            j += 1
        elif key(ca, ma) > key(cb, mb):
            out.append(ta[i])
            i += 1
        else:
            out.append((cb, mb, field.neg(xb) if sub else xb))
            j += 1
    out.extend(ta[i:])
    if sub:
        out.extend((cp, m, field.neg(c)) for cp, m, c in tb[j:])
    else:
        out.extend(tb[j:])
    return tuple(out)


def _primitive_or_monic(elt: ModuleElement) -> tuple:
    """Normalize a basis element; returns (scaled element, applied factor).

    Over GF(p) the element is made monic.  Over the rationals it is scaled
    to integer coefficients with content one (keeps Fractions small during
    the computation; the final reduced basis is made monic separately).
    """
    if not elt.terms:
        return elt, elt.ring.field.one()
    field = elt.ring.field
    if field.characteristic:
        factor = field.inv(elt.terms[0][2])
        return elt.scale(factor), factor
    num_gcd = 0
    den_lcm = 1
    for _, _, c in elt.terms:
        num_gcd = gcd(num_gcd, c.numerator)
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    factor = Fraction(den_lcm, num_gcd)
    if elt.terms[0][2] < 0:
        factor = -factor
    return elt.scale(factor), factor


def reduce_element(v: ModuleElement, basis: Sequence[ModuleElement],
                   want_quotients: bool = False):
    """Full normal form of v against basis.

    Returns (nf, quotients); quotients is a list parallel to basis with
    {monomial: coeff} dicts such that v = sum(q_k * basis_k) + nf, or None
    when not requested.
    """
    ring_ = v.ring
    field = ring_.field
    quotients = [dict() for _ in basis] if want_quotients else None
    by_comp: dict = {}
    for idx, g in enumerate(basis):
        if g.terms:
            cp, m, c = g.terms[0]
            by_comp.setdefault(cp, []).append((m, c, idx, g))
    out = []
    current = v
    while current.terms:
        cp, m, coef = current.terms[0]
        hit = None
        for gm, gc, idx, g in by_comp.get(cp, ()):
            if mon_divides(gm, m):
                hit = (gm, gc, idx, g)
                break
        if hit is None:
            out.append((cp, m, coef))
            current = ModuleElement(ring_, v.rank, v.order, current.terms[1:])
            continue
        gm, gc, idx, g = hit
        qm = mon_div(m, gm)
        qc = field.div(coef, gc)
        if want_quotients:
            q = quotients[idx]
            prev = q.get(qm)
            q[qm] = field.add(prev, qc) if prev is not None else qc
        current = current - g.term_mul(qm, qc)
    nf = ModuleElement(ring_, v.rank, v.order, tuple(out))
    return nf, quotients


def _quotient_polys(ring_: Ring, quotients) -> list:
    out = []
    for q in quotients:
        out.append(ring_.from_dict(q) if q else ring_.zero())
    return out


# ---------------------------------------------------------------------------
# Buchberger


def _buchberger_raw(items: list, order: ModuleOrder, track: bool, n_seed: int = 0):
    """Raw Buchberger loop.  Returns (basis, reps) with reps tracking each
    basis element as a polynomial combination of the input items (or None).

    The first n_seed items are installed as-is with no pairs among
    themselves (used to extend an existing basis); tracking requires
    n_seed == 0.
    """
    if track and n_seed:
        raise ValueError("representation tracking cannot be combined with a seed")
    ring_ = items[0].ring
    field = ring_.field
    m = len(items)

    basis: list = []
    sugars: list = []
    reps: list = [] if track else None

    def unit_rep(i):
        return [ring_.one() if k == i else ring_.zero() for k in range(m)]

    pending: list = []  # heap of (sugar, lcm module key, i, j)
    pairs_alive: set = set()

    def lead(i):
        return basis[i].terms[0]

    def add_pairs_for(t: int):
        # Gebauer-Moeller update for new element index t.
        cp_t, m_t, _ = lead(t)
        fresh = []
        for i in range(t):
            cp_i, m_i, _ = lead(i)
            if cp_i != cp_t:
                continue
            fresh.append((i, mon_lcm(m_i, m_t)))
        # M-criterion: drop (i,t) when another new pair's lcm strictly divides.
        keep = []
        for i, l in fresh:
            drop = False
            for i2, l2 in fresh:
                if i2 == i:
                    continue
                if l2 != l and mon_divides(l2, l):
                    drop = True
                    break
            if not drop:
                keep.append((i, l))
        # F-criterion: among identical lcms keep the smallest index.
        seen: dict = {}
        for i, l in keep:
            if l not in seen or i < seen[l][0]:
                seen[l] = (i, l)
        kept = sorted(seen.values())
        # Product criterion (rank one only: tails make it unsound for modules).
        final = []
        for i, l in kept:
            if basis[t].rank == 1 and mon_coprime(lead(i)[1], m_t):
                continue
            final.append((i, l))
        # B-criterion: prune old pairs whose lcm the new lead strictly refines.
        for (i, j) in list(pairs_alive):
            cp_i, m_i, _ = lead(i)
            if cp_i != cp_t:
                continue
            l_ij = mon_lcm(m_i, lead(j)[1])
            if (
                mon_divides(m_t, l_ij)
                and mon_lcm(m_i, m_t) != l_ij
                and mon_lcm(lead(j)[1], m_t) != l_ij
            ):
                pairs_alive.discard((i, j))
        for i, l in final:
            sugar = max(
                sugars[i] + mon_degree(mon_div(l, lead(i)[1])),
                sugars[t] + mon_degree(mon_div(l, m_t)),
            )
            pairs_alive.add((i, t))
            heapq.heappush(pending, (sugar, order.key(cp_t, l), i, t))

    def push_element(elt: ModuleElement, rep):
        elt, factor = _primitive_or_monic(elt)
        if track:
            reps.append([p.scale(factor) for p in rep])
        basis.append(elt)
        sugars.append(elt.degree())
        add_pairs_for(len(basis) - 1)

    for idx, item in enumerate(items):
        if item.is_zero():
            continue
        if idx < n_seed:
            # assumed part of a Groebner basis already: no reduction, no pairs
            basis.append(item)
            sugars.append(item.degree())
            continue
        nf, quot = reduce_element(item, basis, want_quotients=track)
        if nf.is_zero():
            continue
        if track:
            rep = unit_rep(idx)
            qpolys = _quotient_polys(ring_, quot)
            for k, q in enumerate(qpolys):
                if not q.is_zero():
                    rep = [r - q * p for r, p in zip(rep, reps[k])]
        else:
            rep = None
        push_element(nf, rep)

    while pending:
        _, _, i, j = heapq.heappop(pending)
        if (i, j) not in pairs_alive:
            continue
        pairs_alive.discard((i, j))
        cp, m_i, c_i = lead(i)
        _, m_j, c_j = lead(j)
        l = mon_lcm(m_i, m_j)
        u_i = mon_div(l, m_i)
        u_j = mon_div(l, m_j)
        s = basis[i].term_mul(u_i, c_j) - basis[j].term_mul(u_j, c_i)
        nf, quot = reduce_element(s, basis, want_quotients=track)
        if nf.is_zero():
            continue
        if track:
            rep = [
                pi.term_mul(u_i, c_j) - pj.term_mul(u_j, c_i)
                for pi, pj in zip(reps[i], reps[j])
            ]
            qpolys = _quotient_polys(ring_, quot)
            for k, q in enumerate(qpolys):
                if not q.is_zero():
                    rep = [r - q * p for r, p in zip(rep, reps[k])]
        else:
            rep = None
        push_element(nf, rep)

    return basis, reps


def _interreduce(basis: list, reps, order: ModuleOrder):
    """Minimalize and tail-reduce; make monic; sort by lead key ascending."""
    if not basis:
        return [], reps if reps is not None else None
    ring_ = basis[0].ring
    track = reps is not None

    keep = []
    for idx, g in enumerate(basis):
        cp, m, _ = g.terms[0]
        redundant = False
        for idx2, h in enumerate(basis):
            if idx2 == idx:
                continue
            cp2, m2, _ = h.terms[0]
            if cp2 == cp and mon_divides(m2, m):
                if m2 != m or idx2 < idx:
                    redundant = True
                    break
        if not redundant:
            keep.append(idx)

    elems = [basis[i] for i in keep]
    kept_reps = [reps[i] for i in keep] if track else None

    changed = True
    while changed:
        changed = False
        for i in range(len(elems)):
            others = elems[:i] + elems[i + 1 :]
            nf, quot = reduce_element(elems[i], others, want_quotients=track)
            if nf.terms != elems[i].terms:
                changed = True
            if nf.is_zero():
                raise RuntimeError("minimal basis element reduced to zero")
            if track:
                rep = kept_reps[i]
                qpolys = _quotient_polys(ring_, quot)
                other_reps = kept_reps[:i] + kept_reps[i + 1 :]
                for k, q in enumerate(qpolys):
                    if not q.is_zero():
                        rep = [r - q * p for r, p in zip(rep, other_reps[k])]
                kept_reps[i] = rep
            elems[i] = nf

    field = ring_.field
    for i in range(len(elems)):
        lc = elems[i].terms[0][2]
        if not field.is_one(lc):
            inv = field.inv(lc)
            elems[i] = elems[i].scale(inv)
            if track:
                kept_reps[i] = [p.scale(inv) for p in kept_reps[i]]

    perm = sorted(range(len(elems)), key=lambda i: order.key(elems[i].terms[0][0], elems[i].terms[0][1]))
    elems = [elems[i] for i in perm]
    if track:
        kept_reps = [kept_reps[i] for i in perm]
    return elems, kept_reps


class GroebnerBasis:
    """A reduced, monic, sorted module Groebner basis: a canonical form.

    For a computation over a quotient ring S/J the stored elements are a
    basis of the full preimage submodule of S^rank (the defining relations
    times each standard basis vector are folded in), so normal forms are
    canonical representatives and equality of bases is equality of
    submodules of the quotient.
    """

    __slots__ = ("ring", "rank", "order", "elements")

    def __init__(self, ring_: AnyRing, rank: int, order: ModuleOrder, elements: tuple):
        self.ring = ring_
        self.rank = rank
        self.order = order
        self.elements = elements

    def reduce(self, v: ModuleElement) -> ModuleElement:
        nf, _ = reduce_element(v, self.elements)
        return nf

    def reduce_poly(self, f: Polynomial) -> Polynomial:
        if self.rank != 1:
            raise ValueError("reduce_poly needs a rank-1 basis")
        elt = ModuleElement.from_poly(f, 0, 1, self.order)
        return self.reduce(elt).to_poly()

    def contains(self, v: Union[ModuleElement, Polynomial]) -> bool:
        if isinstance(v, Polynomial):
            v = ModuleElement.from_poly(v, 0, 1, self.order)
        return self.reduce(v).is_zero()

    def leading_monomials(self) -> tuple:
        return tuple((e.terms[0][0], e.terms[0][1]) for e in self.elements)

    def polys(self) -> tuple:
        if self.rank != 1:
            raise ValueError("polys() needs a rank-1 basis")
        return tuple(e.to_poly() for e in self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and other.rank == self.rank
            and other.elements == self.elements
        )

    def __hash__(self):
        return hash((self.rank, self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({list(self.elements)!r})"


def _as_elements(items: Iterable, rank: Optional[int], order: Optional[ModuleOrder]):
    elements = []
    first_ring = None
    for item in items:
        if isinstance(item, Polynomial):
            first_ring = first_ring or item.ring
            elements.append(item)
        elif isinstance(item, ModuleElement):
            first_ring = first_ring or item.ring
            elements.append(item)
        else:
            raise TypeError(f"expected Polynomial or ModuleElement, got {type(item)}")
    if first_ring is None:
        raise ValueError("cannot infer the ring from an empty generator list")
    if order is None:
        order = ModuleOrder(first_ring.order)
    out = []
    for item in elements:
        if isinstance(item, Polynomial):
            out.append(ModuleElement.from_poly(item, 0, rank or 1, order))
        else:
            if rank is not None and item.rank != rank:
                raise ValueError("module elements of mixed rank")
            out.append(ModuleElement(item.ring, item.rank, order,
                                     tuple(sorted(item.terms, key=lambda t: order.key(t[0], t[1]), reverse=True))))
    ranks = {e.rank for e in out}
    if len(ranks) != 1:
        raise ValueError(f"module elements of mixed rank: {sorted(ranks)}")
    return out, first_ring, order


def _relation_columns(q: QuotientRing, rank: int, order: ModuleOrder) -> list:
    cols = []
    for rel in q.relation_polys():
        for k in range(rank):
            cols.append(ModuleElement.from_poly(rel, k, rank, order))
    return cols


def buchberger(items: Sequence, over: Optional[AnyRing] = None, rank: Optional[int] = None,
               order: Optional[ModuleOrder] = None, seed: Optional[GroebnerBasis] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal or submodule generated by items.

    `over` may be a quotient ring, in which case the basis describes the
    full preimage submodule.  `seed` lets an existing basis be extended
    with further generators without reprocessing its own S-pairs.
    """
    items = list(items)
    if not items and seed is None:
        if over is None:
            raise ValueError("empty generator list needs an explicit ring")
        base = ambient(over)
        ordr = order or ModuleOrder(base.order)
        rk = rank or 1
        if isinstance(over, QuotientRing):
            rel = _relation_columns(over, rk, ordr)
            return buchberger(rel, over=over, rank=rk, order=ordr)
        return GroebnerBasis(over, rk, ordr, ())
    if seed is not None:
        ordr = seed.order
        rk = seed.rank
        base = ambient(seed.ring)
        elts = []
        for item in items:
            if isinstance(item, Polynomial):
                elts.append(ModuleElement.from_poly(item, 0, rk, ordr))
            else:
                elts.append(ModuleElement(item.ring, rk, ordr,
                                          tuple(sorted(item.terms, key=lambda t: ordr.key(t[0], t[1]), reverse=True))))
        seeded = list(seed.elements) + elts
        basis, _ = _buchberger_seeded(seeded, len(seed.elements), ordr)
        elems, _ = _interreduce(basis, None, ordr)
        return GroebnerBasis(seed.ring, rk, ordr, tuple(elems))

    elts, base, ordr = _as_elements(items, rank, order)
    rk = elts[0].rank
    ring_like = over if over is not None else base
    if isinstance(ring_like, QuotientRing):
        if ring_like.base != base:
            raise ValueError("generators do not live in the base ring of the quotient")
        elts = elts + _relation_columns(ring_like, rk, ordr)
    basis, _ = _buchberger_raw(elts, ordr, track=False)
    elems, _ = _interreduce(basis, None, ordr)
    return GroebnerBasis(ring_like, rk, ordr, tuple(elems))


def _buchberger_seeded(items: list, n_seed: int, order: ModuleOrder):
    """Like _buchberger_raw but items[:n_seed] are an assumed Groebner basis.

    Seed elements are installed without reduction and without pairs among
    themselves (their S-pairs already reduce to zero); new elements pair
    against everything before them as usual.
    """
    basis, _ = _buchberger_raw(items, order, track=False, n_seed=n_seed)
    return basis, None


def normal_form(v, G: GroebnerBasis):
    """Canonical normal form of a polynomial or module element against G."""
    if isinstance(v, Polynomial):
        return G.reduce_poly(v)
    return G.reduce(v)


def ideal_membership(f, G: GroebnerBasis) -> bool:
    return G.contains(f)


class SyzygyMatrix:
    """Columns generating the syzygy module of an ordered list of generators.

    Column j collects the coefficients (one per input generator) of one
    relation sum_i col[i] * gen_i = 0.
    """

    __slots__ = ("ring", "target_rank", "columns")

    def __init__(self, ring_: AnyRing, target_rank: int, columns: tuple):
        self.ring = ring_
        self.target_rank = target_rank
        self.columns = columns

    def entries(self) -> tuple:
        """All nonzero polynomial entries, column by column."""
        out = []
        for col in self.columns:
            for i in sorted(col.components()):
                p = col.coordinate(i)
                if not p.is_zero():
                    out.append(p)
        return tuple(out)

    def to_rows(self) -> list:
        """Dense matrix of polynomials, target_rank x ncols."""
        base = ambient(self.ring)
        rows = [[base.zero() for _ in self.columns] for _ in range(self.target_rank)]
        for j, col in enumerate(self.columns):
            for i in range(self.target_rank):
                rows[i][j] = col.coordinate(i)
        return rows

    def __len__(self):
        return len(self.columns)

    def __repr__(self):
        return f"SyzygyMatrix({self.target_rank} gens, {len(self.columns)} columns)"


def syzygies(items: Sequence, over: Optional[AnyRing] = None,
             order: Optional[ModuleOrder] = None) -> SyzygyMatrix:
    """Generating set of the syzygy module of `items` (Schreyer's method).

    Over a quotient ring the relation columns are appended before the
    computation and the syzygy columns are projected back onto the original
    generators, giving generators of the kernel as a quotient-ring module.
    """
    elts, base, ordr = _as_elements(items, None, order)
    n_orig = len(elts)
    ring_like = over if over is not None else base
    if isinstance(ring_like, QuotientRing):
        if ring_like.base != base:
            raise ValueError("generators do not live in the base ring of the quotient")
        elts = elts + _relation_columns(ring_like, elts[0].rank, ordr)

    cols = _syzygy_columns(elts, ordr)
    out_order = ModuleOrder(base.order)
    projected = []
    for col in cols:
        col = col.project(n_orig) if isinstance(ring_like, QuotientRing) else col
        col = ModuleElement(base, n_orig, out_order,
                            tuple(sorted(col.terms, key=lambda t: out_order.key(t[0], t[1]), reverse=True)))
        if col.terms:
            col, _ = _primitive_or_monic(col)
            projected.append(col)
    # canonical order, duplicates dropped
    uniq = sorted(set(projected), key=lambda c: out_order.key(c.terms[0][0], c.terms[0][1]))
    return SyzygyMatrix(ring_like, n_orig, tuple(uniq))


def _syzygy_columns(elts: list, ordr: ModuleOrder) -> list:
    """Syzygies of elts over the ambient polynomial ring."""
    ring_ = elts[0].ring
    field = ring_.field
    m = len(elts)
    syz_order = ModuleOrder(ring_.order)

    live = [(i, e) for i, e in enumerate(elts) if not e.is_zero()]
    cols: list = []
    # zero generators give coordinate syzygies e_i
    for i, e in enumerate(elts):
        if e.is_zero():
            cols.append(ModuleElement.from_dict(ring_, m, syz_order,
                                                {(i, mon_one(ring_.nvars)): field.one()}))
    if not live:
        return cols

    packed = [e for _, e in live]
    basis, reps = _buchberger_raw(packed, ordr, track=True)
    basis, reps = _interreduce(basis, reps, ordr)
    s = len(basis)

    # Q: express each input in the reduced basis.
    q_rows = []
    for _, e in live:
        nf, quot = reduce_element(e, basis, want_quotients=True)
        if not nf.is_zero():
            raise RuntimeError("generator failed to reduce against its own basis")
        q_rows.append(_quotient_polys(ring_, quot))

    def combine(coeffs: Sequence[Polynomial]) -> list:
        """sum_k coeffs[k] * reps[k] as a vector over the live inputs."""
        acc = [ring_.zero() for _ in range(len(live))]
        for k, c in enumerate(coeffs):
            if c.is_zero():
                continue
            for l in range(len(live)):
                if not reps[k][l].is_zero():
                    acc[l] = acc[l] + c * reps[k][l]
        return acc

    def to_column(vec: Sequence[Polynomial]) -> ModuleElement:
        coeffs: dict = {}
        for local, p in enumerate(vec):
            orig = live[local][0]
            for mon, c in p.terms:
                coeffs[(orig, mon)] = c
        return ModuleElement.from_dict(ring_, m, syz_order, coeffs)

    # tau syzygies from every same-component S-pair of the reduced basis
    for i in range(s):
        cp_i, m_i, c_i = basis[i].terms[0]
        for j in range(i + 1, s):
            cp_j, m_j, c_j = basis[j].terms[0]
            if cp_i != cp_j:
                continue
            l = mon_lcm(m_i, m_j)
            u_i = mon_div(l, m_i)
            u_j = mon_div(l, m_j)
            spoly = basis[i].term_mul(u_i, c_j) - basis[j].term_mul(u_j, c_i)
            nf, quot = reduce_element(spoly, basis, want_quotients=True)
            if not nf.is_zero():
                raise RuntimeError("S-pair of a reduced basis failed to reduce to zero")
            qpolys = _quotient_polys(ring_, quot)
            tau = [ -q for q in qpolys ]
            tau[i] = tau[i] + ring_.monomial(u_i, c_j)
            tau[j] = tau[j] - ring_.monomial(u_j, c_i)
            vec = combine(tau)
            col = to_column(vec)
            if col.terms:
                cols.append(col)

    # identity-minus-projection columns: e_i - sum_k Q[i][k] * rep_k
    for local in range(len(live)):
        vec = combine(q_rows[local])
        vec[local] = vec[local] - ring_.one()
        col = to_column([-p for p in vec])
        if col.terms:
            cols.append(col)
    return cols


def kernel_of_map(rows: Sequence[Sequence[Polynomial]], over: Optional[AnyRing] = None) -> GroebnerBasis:
    """Groebner basis of the kernel of the map R^cols -> R^rows given by a
    polynomial matrix (columns are images of the source basis vectors)."""
    if not rows:
        raise ValueError("kernel_of_map needs a matrix with at least one row")
    ncols = len(rows[0])
    base = None
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        for p in r:
            base = base or p.ring
    if base is None:
        raise ValueError("matrix of no polynomials")
    ring_like = over if over is not None else base
    order = ModuleOrder(base.order)
    nrows = len(rows)
    if ncols == 0:
        return GroebnerBasis(ring_like, 0, order, ())
    columns = []
    for j in range(ncols):
        coeffs: dict = {}
        for i in range(nrows):
            for mon, c in rows[i][j].terms:
                coeffs[(i, mon)] = c
        columns.append(ModuleElement.from_dict(base, nrows, order, coeffs))
    syz = syzygies(columns, over=ring_like)
    return buchberger(list(syz.columns), over=ring_like, rank=ncols, order=ModuleOrder(base.order))


def quotient_ring(base: Ring, relations: Sequence[Polynomial]) -> QuotientRing:
    """Build S/J with J given by generators; J is stored as a reduced basis."""
    gb = buchberger(list(relations), over=base, rank=1)
    if gb.contains(base.one()):
        raise ValueError("defining ideal is the unit ideal")
    return QuotientRing(base, gb)
