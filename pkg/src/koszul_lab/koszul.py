"""Koszul complexes, their homology, and homology annihilators.

The complex on a_1..a_n has i-th term free on the strictly increasing
index tuples of length i (lexicographic order) and differential

    d(e_{j_1 < ... < j_i}) = sum_t (-1)^(t+1) a_{j_t} e_{..without j_t..}

All differentials are materialized at construction and the composite of
consecutive ones is verified to vanish, exactly.

Homology is a SubquotientModule: cycles from a module kernel computation,
boundaries the columns of the next differential.  Cohomology annihilators
come from the self-duality of the complex (H^i is H_{n-i}); the explicit
cochain differential (wedging with sum a_j e_j) is also available as a
cross-check.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Optional, Sequence

from koszul_lab import linalg
from koszul_lab.groebner import (
    GroebnerBasis,
    ModuleElement,
    ModuleOrder,
    SyzygyMatrix,
    buchberger,
    kernel_of_map,
    syzygies,
)
from koszul_lab.modops import (
    IdealHandle,
    SubquotientModule,
    annihilator,
    ideal,
    intersect_submodules,
    minimal_module_generators,
)
from koszul_lab.polyring import (
    AnyRing,
    Polynomial,
    QuotientRing,
    ambient,
    quotient_normalize,
)
from koszul_lab.resolutions import ActionModule


class HomologyRecord:
    """Homology at one index: the subquotient, its annihilator, and
    whether it vanishes."""

    __slots__ = ("index", "module", "annihilator", "vanishing")

    def __init__(self, index: int, module: SubquotientModule,
                 ann: IdealHandle, vanishing: bool):
        self.index = index
        self.module = module
        self.annihilator = ann
        self.vanishing = vanishing

    def __repr__(self):
        tag = "0" if self.vanishing else "nonzero"
        return f"HomologyRecord(i={self.index}, {tag})"


class KoszulComplex:
    __slots__ = ("ring", "elements", "n", "_diffs", "_cycles", "_records")

    def __init__(self, ring_: AnyRing, elements: Sequence[Polynomial]):
        if not elements:
            raise ValueError("Koszul complex needs at least one element")
        base = ambient(ring_)
        cleaned = []
        for a in elements:
            if a.ring != base:
                raise ValueError("element outside the ambient ring")
            if isinstance(ring_, QuotientRing):
                a = quotient_normalize(a, ring_)
            cleaned.append(a)
        self.ring = ring_
        self.elements = tuple(cleaned)
        self.n = len(cleaned)
        self._diffs = {i: self._build_differential(i) for i in range(1, self.n + 1)}
        self._cycles = {}
        self._records = {}
        self._check_composites()

    # -- structure

    def basis(self, i: int) -> tuple:
        return tuple(combinations(range(self.n), i))

    def rank(self, i: int) -> int:
        if i < 0 or i > self.n:
            return 0
        return comb(self.n, i)

    def differential(self, i: int) -> list:
        """Matrix of d_i as rank(i-1) rows of rank(i) entries."""
        if i < 1 or i > self.n:
            return [[_z(self)] * self.rank(i) for _ in range(self.rank(i - 1))]
        return self._diffs[i]

    def _build_differential(self, i: int) -> list:
        base = ambient(self.ring)
        rows = self.basis(i - 1)
        cols = self.basis(i)
        row_index = {t: r for r, t in enumerate(rows)}
        zero = base.zero()
        mat = [[zero] * len(cols) for _ in rows]
        for c, tup in enumerate(cols):
            for t, j in enumerate(tup):
                face = tup[:t] + tup[t + 1:]
                a = self.elements[j]
                entry = a if t % 2 == 0 else -a
                r = row_index[face]
                mat[r][c] = mat[r][c] + entry
        return mat

    def _check_composites(self):
        base = ambient(self.ring)
        zero = base.zero()
        for i in range(2, self.n + 1):
            prod = _poly_mat_mul(self._diffs[i - 1], self._diffs[i], zero)
            for row in prod:
                for entry in row:
                    if not entry.is_zero():
                        raise AssertionError("differential composite is nonzero")

    # -- cycles, boundaries, homology

    def cycles(self, i: int) -> GroebnerBasis:
        if i not in self._cycles:
            if i == 0:
                one = ambient(self.ring).one()
                elt = ModuleElement.from_poly(one, 0, 1, ModuleOrder(ambient(self.ring).order))
                self._cycles[i] = buchberger([elt], over=self.ring, rank=1)
            else:
                self._cycles[i] = kernel_of_map(self.differential(i), over=self.ring)
        return self._cycles[i]

    def boundaries(self, i: int) -> tuple:
        if i >= self.n:
            return ()
        mat = self.differential(i + 1)
        rank = self.rank(i)
        order = ModuleOrder(ambient(self.ring).order)
        out = []
        for c in range(self.rank(i + 1)):
            coeffs = {}
            for r in range(rank):
                for mon, cf in mat[r][c].terms:
                    coeffs[(r, mon)] = cf
            elt = ModuleElement.from_dict(ambient(self.ring), rank, order, coeffs)
            if not elt.is_zero():
                out.append(elt)
        return tuple(out)

    def homology(self, i: int) -> HomologyRecord:
        if i < 0 or i > self.n:
            raise ValueError(f"homology index {i} outside 0..{self.n}")
        if i not in self._records:
            z = self.cycles(i).elements
            b = self.boundaries(i)
            module = SubquotientModule(self.ring, max(self.rank(i), 1), z, b, check=False)
            vanishing = module.is_zero_module()
            ann = annihilator(module)
            self._records[i] = HomologyRecord(i, module, ann, vanishing)
        return self._records[i]


def _z(k: KoszulComplex) -> Polynomial:
    return ambient(k.ring).zero()


def _poly_mat_mul(a: list, b: list, zero: Polynomial) -> list:
    out = []
    for row in a:
        new = []
        for c in range(len(b[0]) if b else 0):
            acc = zero
            for k, entry in enumerate(row):
                acc = acc + entry * b[k][c]
            new.append(acc)
        out.append(new)
    return out


def build_koszul(gens: Sequence[Polynomial], over: AnyRing) -> KoszulComplex:
    return KoszulComplex(over, gens)


def homology(k: KoszulComplex, i: int) -> HomologyRecord:
    return k.homology(i)


def _check_minimal(gens: Sequence[Polynomial], over: AnyRing) -> IdealHandle:
    handle = ideal(over, gens)
    mg = handle.minimal_generators()
    if len(mg) != len(handle.gens) or len(handle.gens) != len(tuple(gens)):
        raise ValueError(
            f"generating set is not minimal: {len(tuple(gens))} given, mu = {len(mg)}"
        )
    return handle


def ann_h1(gens: Sequence[Polynomial], over: AnyRing) -> IdealHandle:
    """Annihilator of the first homology of the complex on a minimal
    generating set; rejects non-minimal input since extra generators
    change the first homology."""
    _check_minimal(gens, over)
    return build_koszul(gens, over).homology(1).annihilator


def presentation_and_content(gens: Sequence[Polynomial], over: AnyRing):
    """Minimal presentation matrix of the ideal and the ideal of its
    entries.

    Returns (phi, content) where phi is a SyzygyMatrix whose columns
    minimally generate the syzygies of gens, and content is the ideal
    generated by all entries of phi.
    """
    _check_minimal(gens, over)
    syz = syzygies(list(gens), over=over)
    twists = tuple(g.degree() for g in gens)
    cols = minimal_module_generators(syz.columns, over, twists)
    phi = SyzygyMatrix(ambient(over), len(gens), tuple(cols))
    entries = []
    for col in cols:
        for j in range(len(gens)):
            p = col.coordinate(j)
            if not p.is_zero():
                entries.append(p)
    return phi, ideal(over, entries)


def delta_invariant(gens: Sequence[Polynomial], over: AnyRing):
    """The kernel of first homology mapping to (R/I)^n, as a subquotient:
    (Z_1 meet I*R^n + B_1)/B_1.  Second value: whether it vanishes (the
    ideal is then syzygetic)."""
    handle = _check_minimal(gens, over)
    k = build_koszul(gens, over)
    z1 = k.cycles(1).elements
    n = k.n
    order = ModuleOrder(ambient(over).order)
    bulk = []
    for g in handle.gens:
        for comp in range(n):
            bulk.append(ModuleElement.from_poly(g, comp, n, order))
    met = intersect_submodules(z1, bulk, over, n)
    delta = SubquotientModule(over, n, met, k.boundaries(1))
    return delta, delta.is_zero_module()


def cohomology_annihilators(gens: Sequence[Polynomial], over: AnyRing) -> list:
    """Annihilators J_1..J_n of the Koszul cohomology of the complex on a
    minimal generating set, computed through the duality with homology at
    the complementary index."""
    _check_minimal(gens, over)
    k = build_koszul(gens, over)
    return [k.homology(k.n - i).annihilator for i in range(1, k.n + 1)]


def cochain_differential(k: KoszulComplex, i: int) -> list:
    """Matrix of the cochain map at degree i: wedging with sum a_j e_j.

    Rows indexed by the (i+1)-subsets, columns by the i-subsets.  Kept as
    an independent cross-check of the duality route.
    """
    base = ambient(k.ring)
    rows = k.basis(i + 1)
    cols = k.basis(i)
    row_index = {t: r for r, t in enumerate(rows)}
    zero = base.zero()
    mat = [[zero] * len(cols) for _ in rows]
    for c, tup in enumerate(cols):
        members = set(tup)
        for j in range(k.n):
            if j in members:
                continue
            bigger = tuple(sorted(tup + (j,)))
            sign = sum(1 for t in tup if t < j)
            a = k.elements[j]
            entry = a if sign % 2 == 0 else -a
            r = row_index[bigger]
            mat[r][c] = mat[r][c] + entry
    return mat


def cochain_homology(k: KoszulComplex, i: int) -> SubquotientModule:
    """H^i computed directly from the cochain complex (debug oracle)."""
    if i < 0 or i > k.n:
        raise ValueError(f"cohomology index {i} outside 0..{k.n}")
    rank = k.rank(i)
    if i == k.n:
        one = ambient(k.ring).one()
        z = (ModuleElement.from_poly(one, 0, 1, ModuleOrder(ambient(k.ring).order)),)
        zgb = buchberger(list(z), over=k.ring, rank=1)
    else:
        zgb = kernel_of_map(cochain_differential(k, i), over=k.ring)
    if i == 0:
        b: tuple = ()
    else:
        mat = cochain_differential(k, i - 1)
        order = ModuleOrder(ambient(k.ring).order)
        b = []
        for c in range(k.rank(i - 1)):
            coeffs = {}
            for r in range(rank):
                for mon, cf in mat[r][c].terms:
                    coeffs[(r, mon)] = cf
            elt = ModuleElement.from_dict(ambient(k.ring), rank, order, coeffs)
            if not elt.is_zero():
                b.append(elt)
        b = tuple(b)
    return SubquotientModule(k.ring, max(rank, 1), zgb.elements, b, check=False)


# ---------------------------------------------------------------------------
# homology with coefficients in a finite-length module


class CoefficientHomologyRecord:
    """Homology of the complex tensored with a finite-length module,
    computed by scalar linear algebra.

    kernel_basis spans the cycles inside M^rank(i); boundary_rows is a
    row-reduced basis of the image of the next differential.
    """

    __slots__ = ("index", "dimension", "vanishing", "_field", "_actions",
                 "_kernel", "_boundary_rows", "_rank", "_mdim", "_ring")

    def __init__(self, index, field, actions, kernel, boundary_rows, rank, mdim, ring_):
        self.index = index
        self._field = field
        self._actions = actions
        self._kernel = kernel
        self._boundary_rows = boundary_rows
        self._rank = rank
        self._mdim = mdim
        self._ring = ring_
        self.dimension = len(kernel) - len(boundary_rows)
        self.vanishing = self.dimension == 0

    def kills(self, f: Polynomial) -> bool:
        """True when f maps every homology class to zero."""
        field = self._field
        block = f.evaluate_matrices(self._actions, field, self._mdim)
        for vec in self._kernel:
            out = []
            for comp in range(self._rank):
                seg = vec[comp * self._mdim:(comp + 1) * self._mdim]
                out.extend(linalg.mat_vec(block, seg, field))
            if not self._in_boundaries(out):
                return False
        return True

    def _in_boundaries(self, vec) -> bool:
        if not self._boundary_rows:
            return all(self._field.is_zero(c) for c in vec)
        return linalg.in_row_space(vec, self._boundary_rows, self._field)

    def annihilator_ideal(self) -> IdealHandle:
        """All ring elements killing the homology, solved degree-free over
        the monomial basis of the (necessarily Artinian) coefficient ring."""
        ring_like = self._ring
        if not isinstance(ring_like, QuotientRing):
            raise ValueError("annihilator solve needs an Artinian quotient ring")
        base = ring_like.base
        std = IdealHandle(base, list(ring_like.relation_polys())).standard_monomials()
        field = self._field
        monomial_blocks = []
        for mon in std:
            p = base.monomial(mon, base.field.one())
            monomial_blocks.append(p.evaluate_matrices(self._actions, field, self._mdim))
        # one linear condition per (kernel vector, residual coordinate) pair
        rows = []
        n_unknowns = len(std)
        red_rows = list(self._boundary_rows)
        for vec in self._kernel:
            images = []
            for block in monomial_blocks:
                out = []
                for comp in range(self._rank):
                    seg = vec[comp * self._mdim:(comp + 1) * self._mdim]
                    out.extend(linalg.mat_vec(block, seg, field))
                images.append(_residual(out, red_rows, field))
            length = len(images[0])
            for pos in range(length):
                rows.append([images[j][pos] for j in range(n_unknowns)])
        if not rows:
            sols = linalg.identity_matrix(n_unknowns, field)
        else:
            sols = linalg.nullspace(rows, field)
        gens = []
        for sol in sols:
            coeffs = {std[j]: sol[j] for j in range(n_unknowns) if not field.is_zero(sol[j])}
            if coeffs:
                gens.append(base.from_dict(coeffs))
        return ideal(ring_like, gens)


def _residual(vec, red_rows, field):
    """Reduce vec against a row-reduced basis; zero residual = membership."""
    if not red_rows:
        return list(vec)
    vec = list(vec)
    pivots = []
    for row in red_rows:
        lead = next((j for j, c in enumerate(row) if not field.is_zero(c)), None)
        pivots.append(lead)
    for row, lead in zip(red_rows, pivots):
        if lead is None or field.is_zero(vec[lead]):
            continue
        factor = field.div(vec[lead], row[lead])
        for j in range(len(vec)):
            vec[j] = field.sub(vec[j], field.mul(factor, row[j]))
    return vec


def homology_with_coefficients(gens: Sequence[Polynomial], module: ActionModule,
                               i: int) -> CoefficientHomologyRecord:
    """Homology of the Koszul complex on gens with coefficients in a
    finite-length module given by explicit variable actions."""
    ring_like = module.ring
    base = ambient(ring_like)
    field = module.field
    mdim = module.dimension()
    k = KoszulComplex(ring_like, gens)
    if i < 0 or i > k.n:
        raise ValueError(f"homology index {i} outside 0..{k.n}")

    def big_matrix(level: int):
        mat = k.differential(level)
        rows = k.rank(level - 1)
        cols = k.rank(level)
        if rows == 0 or cols == 0:
            return []
        big = linalg.zero_matrix(rows * mdim, cols * mdim, field)
        for r in range(rows):
            for c in range(cols):
                entry = mat[r][c]
                if entry.is_zero():
                    continue
                block = entry.evaluate_matrices(module.actions, field, mdim)
                for a in range(mdim):
                    for b in range(mdim):
                        big[r * mdim + a][c * mdim + b] = block[a][b]
        return big

    rank = k.rank(i)
    dim_v = rank * mdim
    if i == 0:
        kernel = linalg.identity_matrix(dim_v, field)
    else:
        d_i = big_matrix(i)
        kernel = linalg.nullspace(d_i, field) if d_i else linalg.identity_matrix(dim_v, field)
    if i >= k.n:
        boundary_rows = []
    else:
        d_next = big_matrix(i + 1)
        cols = [[d_next[r][c] for r in range(dim_v)] for c in range(k.rank(i + 1) * mdim)] if d_next else []
        boundary_rows, _ = linalg.rref(cols, field) if cols else ([], [])
    return CoefficientHomologyRecord(i, field, module.actions, kernel,
                                     boundary_rows, rank, mdim, ring_like)
