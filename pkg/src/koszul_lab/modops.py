"""Ideal calculus and subquotient modules.

An IdealHandle pairs a generator list with a lazily computed reduced
Groebner basis and caches derived invariants; instances are immutable in
the sense that caches are write-once, so sharing across workers is safe.
Over a quotient ring S/J all stored bases describe the full preimage in S,
which makes normal forms canonical and ideal equality a tuple comparison.

Intersections use the classic tag-variable trick: t*A + (1-t)*B in S[t]
with a block order eliminating t.  Colon ideals follow the
intersect-with-principal-then-divide route.  Annihilators of subquotients
fold module colons (B : z) over the cycle generators.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from koszul_lab import linalg
from koszul_lab.groebner import (
    GroebnerBasis,
    ModuleElement,
    ModuleOrder,
    buchberger,
    reduce_element,
    syzygies,
)
from koszul_lab.polyring import (
    AnyRing,
    EliminationOrder,
    Polynomial,
    QuotientRing,
    Ring,
    ambient,
    divide_exact,
    mon_degree,
    mon_divides,
    quotient_normalize,
)


class IdealHandle:
    """An ideal of a polynomial or quotient ring."""

    __slots__ = ("ring", "gens", "_gb", "_mingens", "_dim", "_std", "_cache")

    def __init__(self, ring_: AnyRing, gens: Sequence[Polynomial], _gb: Optional[GroebnerBasis] = None):
        base = ambient(ring_)
        cleaned = []
        for g in gens:
            if g.ring != base:
                raise ValueError("generator outside the ambient ring")
            if isinstance(ring_, QuotientRing):
                g = quotient_normalize(g, ring_)
            if not g.is_zero():
                cleaned.append(g)
        self.ring = ring_
        self.gens = tuple(cleaned)
        self._gb = _gb
        self._mingens = None
        self._dim = None
        self._std = None
        self._cache = {}

    # -- canonical form

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(list(self.gens), over=self.ring, rank=1)
        return self._gb

    def groebner(self) -> GroebnerBasis:
        return self.gb

    def preimage_polys(self) -> tuple:
        """Reduced basis of the ideal (of its full preimage over a quotient)."""
        return self.gb.polys()

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.gb.reduce_poly(f)

    def contains(self, f: Polynomial) -> bool:
        return self.gb.reduce_poly(f).is_zero()

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains(g) for g in other.preimage_polys())

    def is_zero(self) -> bool:
        if isinstance(self.ring, QuotientRing):
            rel = self.ring.relations
            return all(rel.reduce_poly(p).is_zero() for p in self.gb.polys())
        return not self.gb.elements

    def is_unit(self) -> bool:
        return self.contains(ambient(self.ring).one())

    def is_proper(self) -> bool:
        return not self.is_unit()

    def __eq__(self, other):
        return (
            isinstance(other, IdealHandle)
            and other.ring == self.ring
            and other.gb == self.gb
        )

    def __hash__(self):
        return hash((ambient(self.ring).vars, self.gb))

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"ideal({inside})"

    # -- graded structure

    def minimal_generators(self) -> tuple:
        """Minimal homogeneous generators, chosen from the reduced basis
        in increasing degree (ties broken by the monomial order)."""
        if self._mingens is None:
            self._mingens = _minimal_ideal_generators(self)
        return self._mingens

    def mu(self) -> int:
        return len(self.minimal_generators())

    # -- numeric invariants

    def dimension(self) -> int:
        """Krull dimension of R/A (computed from the staircase)."""
        if self._dim is None:
            if self.is_unit():
                raise ValueError("dimension of the unit ideal is undefined")
            self._dim = _staircase_dimension(self.gb, ambient(self.ring).nvars)
        return self._dim

    def height(self) -> int:
        """nvars - dim(R/A) over a polynomial ring; over S/J the
        ambient-relative value dim(S/J) - dim(R/A)."""
        if isinstance(self.ring, QuotientRing):
            ring_dim = _staircase_dimension(self.ring.relations, self.ring.nvars)
            return ring_dim - self.dimension()
        return ambient(self.ring).nvars - self.dimension()

    def is_mprimary(self) -> bool:
        return self.is_proper() and self.dimension() == 0

    def standard_monomials(self) -> tuple:
        """Monomials outside the lead-term ideal; only when finitely many."""
        if self._std is None:
            if self.dimension() != 0:
                raise ValueError("standard monomial basis is infinite")
            self._std = _standard_monomials(self.gb, ambient(self.ring).nvars)
        return self._std

    def length(self) -> Optional[int]:
        """Vector-space dimension of R/A, or None when infinite."""
        if self.is_unit():
            return 0
        if self.dimension() != 0:
            return None
        return len(self.standard_monomials())

    def top_degree(self) -> int:
        """Largest degree of a standard monomial (finite length only)."""
        return max((mon_degree(m) for m in self.standard_monomials()), default=0)


def ideal(ring_: AnyRing, gens: Iterable[Polynomial]) -> IdealHandle:
    return IdealHandle(ring_, tuple(gens))


def zero_ideal(ring_: AnyRing) -> IdealHandle:
    return IdealHandle(ring_, ())


def unit_ideal(ring_: AnyRing) -> IdealHandle:
    return IdealHandle(ring_, (ambient(ring_).one(),))


def maximal_ideal(ring_: AnyRing) -> IdealHandle:
    base = ambient(ring_)
    return IdealHandle(ring_, tuple(base.variable(i) for i in range(base.nvars)))


def ideals_equal(a: IdealHandle, b: IdealHandle) -> bool:
    """Equality of ideals: identical reduced bases."""
    if a.ring != b.ring:
        raise ValueError("ideals live over different rings")
    return a.gb == b.gb


# ---------------------------------------------------------------------------
# sums, products, intersections, powers


def ideal_sum(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    _same_ring(a, b)
    return IdealHandle(a.ring, a.gens + b.gens)


def ideal_product(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    _same_ring(a, b)
    ga = _generators_for_product(a)
    gb_ = _generators_for_product(b)
    prods = [x * y for x in ga for y in gb_]
    return IdealHandle(a.ring, prods)


def ideal_power(a: IdealHandle, k: int) -> IdealHandle:
    if k < 0:
        raise ValueError("negative ideal power")
    if k == 0:
        return unit_ideal(a.ring)
    result = a
    for _ in range(k - 1):
        result = ideal_product(result, a)
    return result


def _generators_for_product(a: IdealHandle) -> tuple:
    # minimal generators keep products small; fall back for non-graded input
    try:
        g = a.minimal_generators()
        if g:
            return g
    except ValueError:
        pass
    return a.gens if a.gens else ()


def ideal_intersection(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """A meet B by tag-variable elimination: t*A + (1-t)*B, eliminate t."""
    _same_ring(a, b)
    base = ambient(a.ring)
    ext, lift, drop = _elimination_context(base)
    t = ext.variable(0)
    one = ext.one()
    gens = [t * lift(p) for p in a.preimage_polys()]
    gens += [(one - t) * lift(p) for p in b.preimage_polys()]
    if not gens:
        return zero_ideal(a.ring)
    gb = buchberger(gens, over=ext, rank=1)
    kept = [drop(p) for p in gb.polys() if _tag_free(p)]
    return IdealHandle(a.ring, kept)


def ideal_combine(a: IdealHandle, b: IdealHandle, op: str) -> IdealHandle:
    if op == "sum":
        return ideal_sum(a, b)
    if op == "product":
        return ideal_product(a, b)
    if op == "intersection":
        return ideal_intersection(a, b)
    raise ValueError(f"unknown ideal op {op!r}")


def _same_ring(a: IdealHandle, b: IdealHandle):
    if a.ring != b.ring:
        raise ValueError("ideals live over different rings")


def _elimination_context(base: Ring):
    """Extended ring with a fresh leading tag variable and lift/drop maps."""
    name = "t0"
    while name in base.vars:
        name = "_" + name
    order = EliminationOrder(base.order, 1)
    ext = Ring((name,) + base.vars, base.field, order)

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(ext, tuple(((0,) + m, c) for m, c in p.terms))

    def drop(p: Polynomial) -> Polynomial:
        terms = tuple((m[1:], c) for m, c in p.terms)
        items = sorted(terms, key=lambda t: base.order.key(t[0]), reverse=True)
        return Polynomial(base, tuple(items))

    return ext, lift, drop


def _tag_free(p: Polynomial) -> bool:
    return all(m[0] == 0 for m, _ in p.terms)


# ---------------------------------------------------------------------------
# colon ideals


def colon(a: IdealHandle, b: Union[IdealHandle, Polynomial]) -> IdealHandle:
    """A : b for a single element, or A : B = meet over minimal generators."""
    if isinstance(b, Polynomial):
        return _colon_element(a, b)
    _same_ring(a, b)
    gens = _generators_for_product(b)
    gens = [g for g in gens if not g.is_zero()]
    if isinstance(a.ring, QuotientRing):
        gens = [quotient_normalize(g, a.ring) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return unit_ideal(a.ring)
    result = None
    for g in gens:
        piece = _colon_element(a, g)
        result = piece if result is None else ideal_intersection(result, piece)
    return result


def _colon_element(a: IdealHandle, b: Polynomial) -> IdealHandle:
    """A : (b) via (A meet (b)) / b.

    Over S/J this computes (A + J) :_S b, the preimage of the quotient-ring
    colon; the principal side deliberately omits J so every intersection
    generator is divisible by b.
    """
    ring_like = a.ring
    base = ambient(ring_like)
    if isinstance(ring_like, QuotientRing):
        b = quotient_normalize(b, ring_like)
    if b.is_zero():
        return unit_ideal(ring_like)
    ext, lift, drop = _elimination_context(base)
    t = ext.variable(0)
    one = ext.one()
    gens = [t * lift(p) for p in a.preimage_polys()]
    gens.append((one - t) * lift(b))
    gb = buchberger(gens, over=ext, rank=1)
    out = []
    for p in gb.polys():
        if _tag_free(p):
            out.append(divide_exact(drop(p), b))
    return IdealHandle(ring_like, out)


def socle_colon(a: IdealHandle) -> IdealHandle:
    """A : m for the irrelevant maximal ideal m = (all variables)."""
    return colon(a, maximal_ideal(a.ring))


def bidual_via_colon(a: IdealHandle, elem: Polynomial) -> IdealHandle:
    """(elem) : ((elem) : A), the double dual probe along a nonzero elem in A."""
    if elem.is_zero():
        raise ValueError("bidual needs a nonzero element")
    if not a.contains(elem):
        raise ValueError("bidual element must lie in the ideal")
    principal = IdealHandle(a.ring, (elem,))
    inner = colon(principal, a)
    return colon(principal, inner)


def dimension_and_height(a: IdealHandle) -> tuple:
    return a.dimension(), a.height()


# ---------------------------------------------------------------------------
# minimal generators (graded)


def _require_homogeneous(polys: Sequence[Polynomial]):
    for p in polys:
        if not p.is_homogeneous():
            raise ValueError(
                f"graded operation on a non-homogeneous element: {p}"
            )


def _minimal_ideal_generators(a: IdealHandle) -> tuple:
    ring_like = a.ring
    candidates = [p for p in a.preimage_polys()]
    if isinstance(ring_like, QuotientRing):
        rel = ring_like.relations
        candidates = [p for p in candidates if not rel.reduce_poly(p).is_zero()]
    if not candidates:
        return ()
    _require_homogeneous(candidates)
    base = ambient(ring_like)
    order_key = base.order.key
    candidates.sort(key=lambda p: (p.degree(), order_key(p.lm())))
    kept: list = []
    current: Optional[GroebnerBasis] = None
    for p in candidates:
        if current is None:
            kept.append(p)
            current = buchberger([p], over=ring_like, rank=1)
            continue
        if current.reduce_poly(p).is_zero():
            continue
        kept.append(p)
        current = buchberger([p], seed=current)
    return tuple(kept)


def minimal_generators(a: IdealHandle) -> tuple:
    return a.minimal_generators()


def minimal_module_generators(items: Sequence[ModuleElement], over: AnyRing,
                              twists: Optional[Sequence[int]] = None) -> tuple:
    """Minimal generators of a graded submodule of a free module.

    Processes generators by increasing (twisted) degree, keeping those not
    in the span of the ones already kept; for graded modules the greedy
    choice is a genuinely minimal generating set.
    """
    live = [e for e in items if not e.is_zero()]
    if isinstance(over, QuotientRing):
        rank = live[0].rank if live else 0
        keep = []
        for e in live:
            nf = _reduce_mod_relations(e, over)
            if not nf.is_zero():
                keep.append(nf)
        live = keep
    if not live:
        return ()
    for e in live:
        if not e.is_homogeneous(twists):
            raise ValueError("graded operation on a non-homogeneous module element")
    order = live[0].order
    live.sort(key=lambda e: (e.degree(twists), order.key(e.terms[0][0], e.terms[0][1])))
    kept: list = []
    current: Optional[GroebnerBasis] = None
    for e in live:
        if current is None:
            kept.append(e)
            current = buchberger([e], over=over, rank=e.rank)
            continue
        if current.reduce(e).is_zero():
            continue
        kept.append(e)
        current = buchberger([e], seed=current)
    return tuple(kept)


def _reduce_mod_relations(e: ModuleElement, q: QuotientRing) -> ModuleElement:
    rel_cols = []
    for relp in q.relation_polys():
        for k in range(e.rank):
            rel_cols.append(ModuleElement.from_poly(relp, k, e.rank, e.order))
    nf, _ = reduce_element(e, rel_cols)
    return nf


# ---------------------------------------------------------------------------
# staircase combinatorics


def _staircase_dimension(gb: GroebnerBasis, nvars: int) -> int:
    """dim R/A from the leading monomials: the largest variable subset U
    such that no lead monomial is supported inside U."""
    leads = [m for comp, m in gb.leading_monomials() if comp == 0]
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    if any(not s for s in supports):
        raise ValueError("unit-like lead in staircase computation")
    best = -1
    for mask in range(1 << nvars):
        u = frozenset(i for i in range(nvars) if mask >> i & 1)
        if any(s <= u for s in supports):
            continue
        best = max(best, len(u))
    return best


def _standard_monomials(gb: GroebnerBasis, nvars: int) -> tuple:
    leads = [m for comp, m in gb.leading_monomials() if comp == 0]
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in leads if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            raise ValueError("staircase is infinite (no pure power bound)")
        bounds.append(min(pure))
    out = []

    def rec(prefix):
        if len(prefix) == nvars:
            m = tuple(prefix)
            if not any(mon_divides(l, m) for l in leads):
                out.append(m)
            return
        for e in range(bounds[len(prefix)]):
            rec(prefix + [e])

    rec([])
    out.sort()
    return tuple(out)


# ---------------------------------------------------------------------------
# subquotients and annihilators


class SubquotientModule:
    """Z/B for submodules B <= Z of a free module R^rank.

    Construction checks that every boundary generator lies in the span of
    the cycles, so the quotient is well formed.
    """

    __slots__ = ("ring", "rank", "cycles", "boundaries", "_b_gb", "_z_gb")

    def __init__(self, ring_: AnyRing, rank: int, cycles: Sequence[ModuleElement],
                 boundaries: Sequence[ModuleElement], check: bool = True):
        self.ring = ring_
        self.rank = rank
        self.cycles = tuple(c for c in cycles if not c.is_zero())
        self.boundaries = tuple(b for b in boundaries if not b.is_zero())
        self._b_gb = None
        self._z_gb = None
        if check and self.boundaries:
            zgb = self.cycle_basis()
            for b in self.boundaries:
                if not zgb.reduce(b).is_zero():
                    raise ValueError("boundary generator outside the cycle span")

    def cycle_basis(self) -> GroebnerBasis:
        if self._z_gb is None:
            self._z_gb = buchberger(list(self.cycles), over=self.ring, rank=self.rank)
        return self._z_gb

    def boundary_basis(self) -> GroebnerBasis:
        if self._b_gb is None:
            self._b_gb = buchberger(list(self.boundaries), over=self.ring, rank=self.rank)
        return self._b_gb

    def is_zero_module(self) -> bool:
        bb = self.boundary_basis()
        return all(bb.reduce(z).is_zero() for z in self.cycles)

    def kills(self, f: Polynomial) -> bool:
        """True when f * (Z/B) = 0."""
        bb = self.boundary_basis()
        return all(bb.reduce(z.poly_mul(f)).is_zero() for z in self.cycles)

    def graded_dimension(self, d: int) -> int:
        """dim_k of the degree-d piece (no twists applied)."""
        z_leads = self.cycle_basis().leading_monomials()
        b_leads = self.boundary_basis().leading_monomials()
        nvars = ambient(self.ring).nvars
        count = 0
        for mon in _monomials_of_degree(nvars, d):
            for comp in range(self.rank):
                in_z = any(c == comp and mon_divides(m, mon) for c, m in z_leads)
                if not in_z:
                    continue
                in_b = any(c == comp and mon_divides(m, mon) for c, m in b_leads)
                if not in_b:
                    count += 1
        return count

    def length_up_to(self, bound: int) -> int:
        """Sum of graded dimensions for degrees 0..bound; exact length when
        the module is known to vanish above the bound."""
        return sum(self.graded_dimension(d) for d in range(bound + 1))

    def __repr__(self):
        return f"Subquotient({len(self.cycles)} cycles / {len(self.boundaries)} boundaries in R^{self.rank})"


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


def module_colon(boundaries: Sequence[ModuleElement], z: ModuleElement,
                 over: AnyRing) -> IdealHandle:
    """(B : z) = {r : r*z in span(B)}, via syzygies of [z | B]."""
    items = [z] + list(boundaries)
    syz = syzygies(items, over=over)
    gens = []
    for col in syz.columns:
        first = col.coordinate(0)
        if not first.is_zero():
            gens.append(first)
    return IdealHandle(over, gens)


def annihilator(m: SubquotientModule) -> IdealHandle:
    """Ann(Z/B) as the meet of (B : z) over the cycle generators."""
    over = m.ring
    bb = m.boundary_basis()
    result = None
    for z in m.cycles:
        if bb.reduce(z).is_zero():
            continue  # this cycle is a boundary, contributes the unit ideal
        piece = module_colon(m.boundaries, z, over)
        result = piece if result is None else ideal_intersection(result, piece)
    if result is None:
        return unit_ideal(over)
    return result


def intersect_submodules(u: Sequence[ModuleElement], v: Sequence[ModuleElement],
                         over: AnyRing, rank: int) -> tuple:
    """Generators of span(u) meet span(v) by tag-variable elimination."""
    base = ambient(over)
    ext, lift, drop = _elimination_context(base)
    order = ModuleOrder(ext.order, "ELIM")
    t_mon = (1,) + (0,) * base.nvars

    def lift_elt(e: ModuleElement, with_t: bool) -> ModuleElement:
        coeffs = {}
        field = base.field
        for comp, mon, c in e.terms:
            full = (0,) + mon
            shifted = (comp, tuple(a + b for a, b in zip(full, t_mon)))
            if with_t:
                coeffs[shifted] = field.add(coeffs.get(shifted, field.zero()), c)
            else:
                # (1 - t) * term
                plain = (comp, full)
                coeffs[plain] = field.add(coeffs.get(plain, field.zero()), c)
                coeffs[shifted] = field.add(coeffs.get(shifted, field.zero()), field.neg(c))
        return ModuleElement.from_dict(ext, rank, order, coeffs)

    gens = [lift_elt(e, True) for e in u if not e.is_zero()]
    gens += [lift_elt(e, False) for e in v if not e.is_zero()]
    if isinstance(over, QuotientRing):
        for relp in over.relation_polys():
            lifted = lift(relp)
            for k in range(rank):
                gens.append(ModuleElement.from_poly(lifted, k, rank, order))
    if not gens:
        return ()
    gb = buchberger(gens, over=ext, rank=rank, order=order)
    out_order = ModuleOrder(base.order)
    out = []
    for e in gb.elements:
        if all(m[0] == 0 for _, m, _ in e.terms):
            terms = tuple((comp, m[1:], c) for comp, m, c in e.terms)
            terms = tuple(sorted(terms, key=lambda tt: out_order.key(tt[0], tt[1]), reverse=True))
            out.append(ModuleElement(base, rank, out_order, terms))
    return tuple(out)
