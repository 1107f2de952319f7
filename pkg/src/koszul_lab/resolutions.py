"""Graded free resolutions, Betti numbers, Tor, and socle checks.

Resolutions are built step by step: minimal generators of the module, then
minimal generators of each successive syzygy module.  Over a polynomial
ring this terminates (length at most the number of variables); over a
quotient ring the construction is truncated at a caller-supplied bound.

An ActionModule is a finite-length module given concretely: a scalar
basis and one commuting action matrix per ring variable.  matlis_dual
builds the vector-space dual of an Artinian quotient ring with transposed
actions, which realizes the injective hull of the residue field.
"""

from __future__ import annotations

from typing import Optional, Sequence

from koszul_lab import closure as closure_mod
from koszul_lab import linalg
from koszul_lab.groebner import (
    ModuleElement,
    ModuleOrder,
    buchberger,
    kernel_of_map,
    quotient_ring,
    syzygies,
)
from koszul_lab.modops import (
    IdealHandle,
    SubquotientModule,
    annihilator,
    ideal,
    ideal_product,
    maximal_ideal,
    minimal_module_generators,
    socle_colon,
)
from koszul_lab.polyring import (
    AnyRing,
    Polynomial,
    QuotientRing,
    ambient,
    mon_degree,
)


class GradedFreeResolution:
    """Minimal graded free resolution F_0 <- F_1 <- ... of a module.

    maps[t-1] holds the columns of phi_t (elements of F_{t-1});
    twists[t] lists the generator degrees of F_t.  `truncated` marks a
    resolution cut off at the construction bound rather than finished.
    """

    __slots__ = ("ring", "maps", "twists", "minimal", "truncated", "bound")

    def __init__(self, ring_: AnyRing, maps: Sequence[tuple], twists: Sequence[tuple],
                 truncated: bool, bound: int):
        self.ring = ring_
        self.maps = tuple(tuple(m) for m in maps)
        self.twists = tuple(tuple(t) for t in twists)
        self.minimal = True
        self.truncated = truncated
        self.bound = bound
        self._check()

    def _check(self):
        base = ambient(self.ring)
        # no entry is a unit, and consecutive maps compose to zero
        for cols in self.maps:
            for col in cols:
                for comp, mon, _ in col.terms:
                    if mon_degree(mon) == 0:
                        raise AssertionError("unit entry in a minimal resolution map")
        for t in range(1, len(self.maps)):
            upper = self.maps[t]
            lower = self.maps[t - 1]
            if not upper or not lower:
                continue
            for col in upper:
                acc = {}
                for comp, mon, c in col.terms:
                    target = lower[comp]
                    shifted = target.term_mul(mon, c)
                    for tc, tm, tv in shifted.terms:
                        key = (tc, tm)
                        acc[key] = base.field.add(acc.get(key, base.field.zero()), tv)
                if not any(not base.field.is_zero(v) for v in acc.values()):
                    continue
                # over a quotient ring the composite only has to vanish after
                # reduction by the defining relations
                if isinstance(self.ring, QuotientRing):
                    per_comp: dict = {}
                    for (tc, tm), tv in acc.items():
                        if base.field.is_zero(tv):
                            continue
                        per_comp.setdefault(tc, {})[tm] = tv
                    if all(self.ring.relations.reduce_poly(base.from_dict(coeffs)).is_zero()
                           for coeffs in per_comp.values()):
                        continue
                raise AssertionError("resolution maps do not compose to zero")

    @property
    def length(self) -> int:
        return len(self.maps)

    def rank(self, t: int) -> int:
        if t < 0 or t > len(self.twists) - 1:
            return 0
        return len(self.twists[t])

    def matrix_columns(self, t: int) -> tuple:
        """Columns of phi_t (1-indexed)."""
        if t < 1 or t > len(self.maps):
            return ()
        return self.maps[t - 1]

    def matrix_entries(self, t: int) -> list:
        """phi_t as a rank(t-1) x rank(t) grid of polynomials."""
        base = ambient(self.ring)
        cols = self.matrix_columns(t)
        rows = self.rank(t - 1)
        grid = [[base.zero() for _ in cols] for _ in range(rows)]
        for c, col in enumerate(cols):
            for comp in range(rows):
                grid[comp][c] = col.coordinate(comp)
        return grid

    def is_complete(self) -> bool:
        return not self.truncated

    def betti(self) -> "BettiTable":
        return BettiTable.from_resolution(self)

    def __repr__(self):
        ranks = "<-".join(str(self.rank(t)) for t in range(len(self.twists)))
        tail = "..." if self.truncated else ""
        return f"Resolution({ranks}{tail})"


class BettiTable:
    """Ranks by (homological degree, internal degree)."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict):
        self.entries = dict(entries)

    @classmethod
    def from_resolution(cls, res: GradedFreeResolution) -> "BettiTable":
        entries: dict = {}
        for t, tw in enumerate(res.twists):
            for d in tw:
                entries[(t, d)] = entries.get((t, d), 0) + 1
        return cls(entries)

    def total(self, t: int) -> int:
        return sum(v for (h, _), v in self.entries.items() if h == t)

    def max_degree(self) -> int:
        return max((h for (h, _) in self.entries), default=0)

    def rows(self) -> list:
        return sorted(self.entries.items())

    def __repr__(self):
        parts = [f"b_{h},{d}={v}" for (h, d), v in sorted(self.entries.items())]
        return "Betti(" + ", ".join(parts) + ")"


# ---------------------------------------------------------------------------
# construction


def _presentation_of(m, over: AnyRing):
    """Normalize module input to (rank of F_0, twists of F_0, relation columns)."""
    if isinstance(m, IdealHandle):
        # resolve the cyclic module R/m
        one_twists = (0,)
        order = ModuleOrder(ambient(over).order)
        cols = [ModuleElement.from_poly(g, 0, 1, order) for g in m.minimal_generators()]
        return 1, one_twists, tuple(cols)
    rank, twists, cols = m
    return rank, tuple(twists), tuple(cols)


def _split_units(rank: int, twists: tuple, cols: tuple, over: AnyRing):
    """Remove unit entries from a presentation by row/column reduction.

    A column with a scalar coordinate means that generator of F_0 is
    redundant: eliminate the column and the coordinate, exactly.
    """
    base = ambient(over)
    field = base.field
    cols = [c for c in cols if not c.is_zero()]
    while True:
        pivot = None
        for ci, col in enumerate(cols):
            for comp, mon, coeff in col.terms:
                if mon_degree(mon) == 0:
                    pivot = (ci, comp, coeff)
                    break
            if pivot:
                break
        if pivot is None:
            return rank, twists, tuple(cols)
        ci, comp, coeff = pivot
        pivot_col = cols[ci]
        inv = field.inv(coeff)
        new_cols = []
        for j, col in enumerate(cols):
            if j == ci:
                continue
            c_val = col.coordinate(comp)
            if not c_val.is_zero():
                col = col.sub(pivot_col.poly_mul(c_val.scale(inv)))
            new_cols.append(col)
        # drop coordinate `comp` everywhere
        dropped = []
        for col in new_cols:
            terms = tuple(
                (cc - 1 if cc > comp else cc, mon, cv)
                for cc, mon, cv in col.terms
                if cc != comp
            )
            order = col.order
            terms = tuple(sorted(terms, key=lambda t: order.key(t[0], t[1]), reverse=True))
            elt = ModuleElement(col.ring, rank - 1, order, terms)
            if not elt.is_zero():
                dropped.append(elt)
        rank -= 1
        twists = twists[:comp] + twists[comp + 1:]
        cols = dropped
        if rank == 0:
            return 0, (), ()


def minimal_resolution(m, over: AnyRing, max_length: int = 6) -> GradedFreeResolution:
    """Minimal graded free resolution of m.

    m is either an IdealHandle (the cyclic module ring/ideal is resolved)
    or a triple (rank, twists, columns) presenting a cokernel.  Exact over
    polynomial rings; truncated at max_length over quotient rings when the
    resolution does not stop.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    rank, twists0, cols = _presentation_of(m, over)
    rank, twists0, cols = _split_units(rank, twists0, cols, over)
    if rank == 0:
        return GradedFreeResolution(over, (), ((),), truncated=False, bound=max_length)
    maps = []
    twists = [twists0]
    current = minimal_module_generators(cols, over, twists0) if cols else ()
    step = 0
    truncated = False
    while True:
        if not current:
            break
        step += 1
        maps.append(current)
        twists.append(tuple(e.degree(twists[-1]) for e in current))
        if step >= max_length:
            nxt = syzygies(list(current), over=over)
            nxt_min = minimal_module_generators(nxt.columns, over, twists[-1])
            truncated = bool(nxt_min)
            break
        nxt = syzygies(list(current), over=over)
        current = minimal_module_generators(nxt.columns, over, twists[-1])
    return GradedFreeResolution(over, maps, twists, truncated=truncated, bound=max_length)


def projective_dimension(m, over: AnyRing, bound: int = 6):
    """('exact', pd) when the minimal resolution terminates within bound,
    else ('at_least', bound)."""
    res = minimal_resolution(m, over, max_length=bound)
    if res.truncated:
        return ("at_least", bound)
    return ("exact", res.length)


# ---------------------------------------------------------------------------
# Tor and classification


def tor(m, i: IdealHandle, t: int, res: Optional[GradedFreeResolution] = None,
        max_length: Optional[int] = None) -> SubquotientModule:
    """Tor_t(R/i, m) as a subquotient over the quotient ring by i.

    Resolves m minimally, tensors with the quotient, and takes homology at
    position t: kernel of phi_t mod i, modulo columns of phi_{t+1}.
    """
    if t < 0:
        raise ValueError("negative Tor index")
    base = i.ring
    if isinstance(base, QuotientRing):
        raise ValueError("Tor is computed over the polynomial ring")
    if res is None:
        res = minimal_resolution(m, base, max_length=max_length or max(t + 2, 6))
    if res.truncated and t + 1 > res.length:
        raise ValueError("resolution truncated below the requested Tor index")
    q = quotient_ring(base, list(i.preimage_polys()))
    rank_t = res.rank(t)
    if rank_t == 0:
        return SubquotientModule(q, 1, (), (), check=False)
    order = ModuleOrder(base.order)
    if t == 0:
        cycles = tuple(
            ModuleElement.from_poly(base.one(), k, rank_t, order) for k in range(rank_t)
        )
        zgb = buchberger(list(cycles), over=q, rank=rank_t)
    else:
        zgb = kernel_of_map(res.matrix_entries(t), over=q)
    boundaries = res.matrix_columns(t + 1)
    return SubquotientModule(q, rank_t, zgb.elements, boundaries, check=False)


def classify(i: IdealHandle) -> dict:
    """Structural flags of an ideal in a polynomial ring."""
    if isinstance(i.ring, QuotientRing):
        raise ValueError("classification runs over the polynomial ring")
    height = i.height()
    mu = i.mu()
    res = minimal_resolution(i, i.ring, max_length=ambient(i.ring).nvars + 1)
    if res.truncated:
        raise AssertionError("resolution over a polynomial ring did not terminate")
    pd = res.length
    perfect = pd == height
    last_rank = res.rank(pd) if pd else 1
    return {
        "perfect": perfect,
        "gorenstein_quotient": perfect and last_rank == 1,
        "complete_intersection": mu == height,
        "almost_complete_intersection": mu == height + 1,
        "projective_dimension": pd,
        "height": height,
        "mu": mu,
    }


# ---------------------------------------------------------------------------
# finite-length modules by explicit actions


class ActionModule:
    """Finite-length module: a scalar basis plus one action matrix per
    ring variable.  Matrices act on column vectors; they must commute and
    must satisfy the defining relations of the ring."""

    __slots__ = ("ring", "field", "labels", "actions", "grading")

    def __init__(self, ring_: AnyRing, labels: Sequence, actions: Sequence,
                 grading: Sequence[int]):
        base = ambient(ring_)
        dim = len(labels)
        if len(actions) != base.nvars:
            raise ValueError("one action matrix per variable required")
        for mat in actions:
            if len(mat) != dim or any(len(row) != dim for row in mat):
                raise ValueError("action matrix shape mismatch")
        field = base.field
        for a in range(len(actions)):
            for b in range(a + 1, len(actions)):
                ab = linalg.mat_mul(actions[a], actions[b], field)
                ba = linalg.mat_mul(actions[b], actions[a], field)
                if ab != ba:
                    raise ValueError("action matrices do not commute")
        if isinstance(ring_, QuotientRing):
            for rel in ring_.relation_polys():
                mat = rel.evaluate_matrices(actions, field, dim)
                if any(not field.is_zero(c) for row in mat for c in row):
                    raise ValueError("actions violate a defining relation")
        self.ring = ring_
        self.field = field
        self.labels = tuple(labels)
        self.actions = tuple(tuple(tuple(row) for row in mat) for mat in actions)
        self.grading = tuple(grading)

    def dimension(self) -> int:
        return len(self.labels)


def regular_action_module(q: QuotientRing) -> ActionModule:
    """The quotient ring acting on itself, over its standard monomials."""
    base = q.base
    std = IdealHandle(base, list(q.relation_polys())).standard_monomials()
    index = {m: i for i, m in enumerate(std)}
    dim = len(std)
    field = base.field
    actions = []
    for v in range(base.nvars):
        mat = linalg.zero_matrix(dim, dim, field)
        xv = base.variable(v)
        for c, mon in enumerate(std):
            prod = q.relations.reduce_poly(xv * base.monomial(mon, field.one()))
            for pm, pc in prod.terms:
                mat[index[pm]][c] = pc
        actions.append(mat)
    grading = tuple(mon_degree(m) for m in std)
    return ActionModule(q, std, actions, grading)


def matlis_dual(q: QuotientRing) -> ActionModule:
    """Vector-space dual of an Artinian quotient ring with transposed
    variable actions: the injective hull of the residue field."""
    reg = regular_action_module(q)
    actions = [linalg.transpose(m) for m in reg.actions]
    grading = tuple(-g for g in reg.grading)
    return ActionModule(q, reg.labels, actions, grading)


# ---------------------------------------------------------------------------
# socle checks


class BurchReport:
    """Result of the socle test: hypothesis status, conclusion status,
    and any witnesses found in the intersection."""

    __slots__ = ("t", "tor_annihilator", "hypothesis_holds", "entry_verdicts",
                 "intersection_zero", "socle_witnesses")

    def __init__(self, t, tor_annihilator, hypothesis_holds, entry_verdicts,
                 intersection_zero, socle_witnesses):
        self.t = t
        self.tor_annihilator = tor_annihilator
        self.hypothesis_holds = hypothesis_holds
        self.entry_verdicts = tuple(entry_verdicts)
        self.intersection_zero = intersection_zero
        self.socle_witnesses = tuple(socle_witnesses)

    def __repr__(self):
        hyp = {True: "holds", False: "fails", None: "inconclusive"}[self.hypothesis_holds]
        return f"BurchReport(t={self.t}, hypothesis {hyp}, intersection_zero={self.intersection_zero})"


def burch_socle_check(m, i: IdealHandle, t: int, m_max: int = 10,
                      res: Optional[GradedFreeResolution] = None) -> BurchReport:
    """Test: when every entry of phi_t lies in the closure of m * Ann(Tor_t),
    the image of phi_t mod i meets the socle of F_{t-1}/i*F_{t-1} only in zero.

    hypothesis_holds is three-valued (None = some closure membership was
    inconclusive); the conclusion is only meaningful when the hypothesis
    holds, but the intersection is computed and reported regardless.
    """
    if t < 1:
        raise ValueError("socle check needs t >= 1")
    base = i.ring
    if isinstance(base, QuotientRing):
        raise ValueError("socle check runs over the polynomial ring")
    if i.height() <= 0:
        raise ValueError("socle check needs an ideal of positive height")
    if res is None:
        res = minimal_resolution(m, base, max_length=max(t + 1, 6))
    if res.truncated and t + 1 > res.length:
        raise ValueError("resolution truncated below the requested index")

    tor_mod = tor(m, i, t, res=res)
    j_t_quotient = annihilator(tor_mod)
    j_t = ideal(base, list(j_t_quotient.preimage_polys()))

    cols = res.matrix_columns(t)
    mj = ideal_product(maximal_ideal(base), j_t)
    verdicts = []
    for col in cols:
        for comp in range(res.rank(t - 1)):
            entry = col.coordinate(comp)
            if entry.is_zero():
                continue
            verdicts.append(closure_mod.is_integral_over(entry, mj, m_max))
    if not verdicts:
        hypothesis = True
    elif any(v.status == "non_member" for v in verdicts):
        hypothesis = False
    elif all(v.status == "member" for v in verdicts):
        hypothesis = True
    else:
        hypothesis = None

    intersection_zero, witnesses = _socle_intersection(res, i, t)
    return BurchReport(t, j_t, hypothesis, verdicts, intersection_zero, witnesses)


def _socle_intersection(res: GradedFreeResolution, i: IdealHandle, t: int):
    """Degreewise scalar test of image(phi_t mod i) meet socle(F_{t-1}/i F_{t-1}).

    The socle is concentrated in finitely many degrees (twist + socle
    degree of the quotient), so only those graded pieces are examined.
    """
    base = i.ring
    field = base.field
    soc = socle_colon(i)
    soc_gens = [g for g in soc.minimal_generators() if not i.contains(g)]
    if not soc_gens:
        return True, []
    cols = res.matrix_columns(t)
    if not cols or t - 1 >= len(res.twists):
        return True, []
    twists = res.twists[t - 1]
    col_degrees = [c.degree(twists) for c in cols]
    std = i.standard_monomials()
    std_index = {m: k for k, m in enumerate(std)}
    gb = i.gb

    relevant = sorted({tw + g.degree() for tw in twists for g in soc_gens})
    witnesses = []
    for d in relevant:
        soc_vecs = []
        for k, tw in enumerate(twists):
            for g in soc_gens:
                if g.degree() + tw == d:
                    soc_vecs.append(_component_vector(g, k, len(twists), std_index, gb, field))
        soc_vecs = [v for v in soc_vecs if any(not field.is_zero(c) for c in v)]
        if not soc_vecs:
            continue
        img_vecs = []
        for col, cd in zip(cols, col_degrees):
            gap = d - cd
            if gap < 0:
                continue
            for mon in _monomials_of_degree(ambient(base).nvars, gap):
                shifted = col.term_mul(mon, field.one())
                vec = _element_vector(shifted, len(twists), std_index, gb, field)
                if any(not field.is_zero(c) for c in vec):
                    img_vecs.append(vec)
        if not img_vecs:
            continue
        meet = linalg.intersect_row_spaces(img_vecs, soc_vecs, field)
        if meet:
            witnesses.extend(_vector_to_element(v, len(twists), std, base) for v in meet)
    return (not witnesses), witnesses


def _component_vector(p: Polynomial, comp: int, rank: int, std_index, gb, field):
    vec = [field.zero()] * (rank * len(std_index))
    nf = gb.reduce_poly(p)
    block = len(std_index)
    for mon, c in nf.terms:
        vec[comp * block + std_index[mon]] = c
    return vec


def _element_vector(e: ModuleElement, rank: int, std_index, gb, field):
    vec = [field.zero()] * (rank * len(std_index))
    block = len(std_index)
    for comp in range(rank):
        nf = gb.reduce_poly(e.coordinate(comp))
        for mon, c in nf.terms:
            vec[comp * block + std_index[mon]] = c
    return vec


def _vector_to_element(vec, rank: int, std, base):
    block = len(std)
    parts = []
    for comp in range(rank):
        coeffs = {}
        for k, mon in enumerate(std):
            c = vec[comp * block + k]
            if not base.field.is_zero(c):
                coeffs[mon] = c
        parts.append(base.from_dict(coeffs))
    return tuple(parts)


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


def image_contains(res: GradedFreeResolution, t: int, element: ModuleElement,
                   over: AnyRing) -> bool:
    """Whether element of F_t lies in the image of phi_{t+1} (over the ring)."""
    cols = res.matrix_columns(t + 1)
    if not cols:
        return element.is_zero()
    gb = buchberger(list(cols), over=over, rank=res.rank(t))
    return gb.reduce(element).is_zero()
