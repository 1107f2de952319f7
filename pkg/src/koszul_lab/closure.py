"""Integral closure: exact for monomial ideals, semi-decided in general.

Monomial ideals: the closure is the set of lattice points of the Newton
polyhedron conv(exponents) + nonnegative orthant.  Facets are enumerated
combinatorially (subsets of generators and coordinate rays spanning a
hyperplane), exact over the rationals; minimal closure generators live in
the componentwise bounding box of the input exponents.

General ideals: membership of c in the closure of I is certified by an
exponent m with (I + (c))^(m+1) = I*(I + (c))^m, searched up to a caller
bound.  Non-membership is certified only against monomial ideals (a facet
inequality violated by a monomial of the normal form); everything else is
reported inconclusive rather than guessed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from koszul_lab import linalg
from koszul_lab.modops import (
    IdealHandle,
    ideal,
    ideal_power,
    ideal_product,
    ideal_sum,
    ideals_equal,
)
from koszul_lab.polyring import (
    Polynomial,
    QQ,
    QuotientRing,
    ambient,
    mon_degree,
    mon_divides,
    quotient_normalize,
)


class NewtonPolyhedron:
    """conv(exponent vectors) + nonnegative orthant, by facet inequalities.

    Each facet is (normal, rhs) with normal a primitive nonnegative integer
    vector: a point x belongs iff a . x >= rhs for every facet (and x >= 0).
    """

    __slots__ = ("nvars", "exponents", "facets", "box")

    def __init__(self, exponents: Sequence[tuple]):
        if not exponents:
            raise ValueError("Newton polyhedron needs at least one exponent")
        self.nvars = len(exponents[0])
        self.exponents = tuple(sorted(set(exponents)))
        self.facets = self._enumerate_facets()
        self.box = tuple(max(e[k] for e in self.exponents) for k in range(self.nvars))

    def _enumerate_facets(self) -> tuple:
        n = self.nvars
        pts = self.exponents
        rays = [tuple(1 if j == k else 0 for j in range(n)) for k in range(n)]
        found = set()
        if n == 1:
            lo = min(p[0] for p in pts)
            return (((1,), lo),)
        for a_size in range(1, n + 1):
            b_size = n - a_size
            for chosen in combinations(range(len(pts)), a_size):
                base_pt = pts[chosen[0]]
                rows = [
                    [Fraction(pts[c][j] - base_pt[j]) for j in range(n)]
                    for c in chosen[1:]
                ]
                for ray_set in combinations(range(n), b_size):
                    mat = rows + [[Fraction(rays[r][j]) for j in range(n)] for r in ray_set]
                    if not mat:
                        mat = [[Fraction(0)] * n]
                    null = linalg.nullspace(mat, QQ)
                    if len(null) != 1:
                        continue
                    normal = null[0]
                    if all(c == 0 for c in normal):
                        continue
                    if any(c < 0 for c in normal) and any(c > 0 for c in normal):
                        continue
                    if all(c <= 0 for c in normal):
                        normal = [-c for c in normal]
                    scaled = _primitive_int_vector(normal)
                    rhs = min(sum(a * p[j] for j, a in enumerate(scaled)) for p in pts)
                    if sum(a * base_pt[j] for j, a in enumerate(scaled)) != rhs:
                        continue
                    found.add((tuple(scaled), rhs))
        return tuple(sorted(found))

    def contains(self, exponent: tuple) -> bool:
        return self.violated_facet(exponent) is None

    def violated_facet(self, exponent: tuple) -> Optional[tuple]:
        for normal, rhs in self.facets:
            if sum(a * e for a, e in zip(normal, exponent)) < rhs:
                return (normal, rhs)
        return None

    def lattice_generators(self) -> tuple:
        """Minimal (under divisibility) lattice points of the polyhedron."""
        inside = []

        def rec(prefix):
            if len(prefix) == self.nvars:
                m = tuple(prefix)
                if self.contains(m):
                    inside.append(m)
                return
            for e in range(self.box[len(prefix)] + 1):
                rec(prefix + [e])

        rec([])
        inside.sort(key=lambda m: (mon_degree(m), m))
        minimal = []
        for m in inside:
            if not any(mon_divides(g, m) for g in minimal):
                minimal.append(m)
        return tuple(minimal)


def _primitive_int_vector(fracs) -> list:
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return [v // g for v in ints] if g else ints


class ClosureVerdict:
    """Three-valued closure-membership result with a checkable certificate."""

    __slots__ = ("status", "witness", "facet", "violating_exponent", "bound")

    def __init__(self, status: str, witness: Optional[int] = None,
                 facet: Optional[tuple] = None,
                 violating_exponent: Optional[tuple] = None,
                 bound: Optional[int] = None):
        if status not in ("member", "non_member", "inconclusive"):
            raise ValueError(f"bad verdict status {status!r}")
        self.status = status
        self.witness = witness
        self.facet = facet
        self.violating_exponent = violating_exponent
        self.bound = bound

    def __repr__(self):
        if self.status == "member":
            return f"ClosureVerdict(member, m={self.witness})"
        if self.status == "non_member":
            return f"ClosureVerdict(non_member, facet={self.facet})"
        return f"ClosureVerdict(inconclusive, bound={self.bound})"


def is_monomial_ideal(i: IdealHandle) -> bool:
    try:
        gens = i.minimal_generators()
    except ValueError:
        return False
    return all(g.is_monomial() for g in gens)


def newton_polyhedron(i: IdealHandle) -> NewtonPolyhedron:
    if isinstance(i.ring, QuotientRing):
        raise ValueError("Newton polyhedron lives over the polynomial ring")
    gens = i.minimal_generators()
    if not all(g.is_monomial() for g in gens):
        raise ValueError("Newton polyhedron needs a monomial ideal")
    if not gens:
        raise ValueError("Newton polyhedron of the zero ideal is empty")
    return NewtonPolyhedron([g.lm() for g in gens])


def monomial_closure(i: IdealHandle) -> IdealHandle:
    """Integral closure of a monomial ideal: monomials in its polyhedron."""
    base = i.ring
    if isinstance(base, QuotientRing):
        raise ValueError("monomial closure runs over the polynomial ring")
    gens = i.minimal_generators()
    if not gens:
        return ideal(base, ())
    if not all(g.is_monomial() for g in gens):
        raise ValueError("monomial closure needs monomial generators")
    poly = NewtonPolyhedron([g.lm() for g in gens])
    field_one = base.field.one()
    out = [base.monomial(m, field_one) for m in poly.lattice_generators()]
    return ideal(base, out)


def is_integral_over(c: Polynomial, i: IdealHandle, m_max: int = 10) -> ClosureVerdict:
    """Semi-decide c in the integral closure of i.

    Membership: determinant-trick witness m <= m_max with
    (i + (c))^(m+1) = i*(i + (c))^m.  Non-membership: only for monomial i,
    by a facet of the Newton polyhedron violated by a monomial of the
    normal form of c.  Everything else: inconclusive with the bound.
    """
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    ring_like = i.ring
    if isinstance(ring_like, QuotientRing):
        c = quotient_normalize(c, ring_like)
    if c.is_zero() or i.contains(c):
        return ClosureVerdict("member", witness=0)

    monomial_case = (
        not isinstance(ring_like, QuotientRing)
        and bool(i.gens)
        and is_monomial_ideal(i)
    )
    if monomial_case:
        poly = newton_polyhedron(i)
        nf = i.normal_form(c)
        for mon, _ in nf.terms:
            facet = poly.violated_facet(mon)
            if facet is not None:
                return ClosureVerdict("non_member", facet=facet, violating_exponent=mon)

    enlarged = ideal_sum(i, ideal(ring_like, (c,)))
    power = ideal(ring_like, (ambient(ring_like).one(),))  # enlarged^0
    for m in range(m_max + 1):
        lhs = ideal_product(power, enlarged)        # enlarged^(m+1)
        rhs = ideal_product(i, power)               # i * enlarged^m
        if rhs.contains_ideal(lhs):
            return ClosureVerdict("member", witness=m)
        power = lhs
    return ClosureVerdict("inconclusive", bound=m_max)


def verify_member_witness(c: Polynomial, i: IdealHandle, m: int) -> bool:
    """Re-check a member certificate by the defining ideal equality."""
    enlarged = ideal_sum(i, ideal(i.ring, (c,)))
    lhs = ideal_power(enlarged, m + 1)
    rhs = ideal_product(i, ideal_power(enlarged, m))
    return ideals_equal(lhs, rhs)


def verify_facet_refutation(c: Polynomial, i: IdealHandle, facet: tuple,
                            exponent: tuple) -> bool:
    """Re-check a non-member certificate: the facet is a valid inequality
    of the polyhedron and the exponent (a monomial of the normal form of c)
    violates it."""
    if not is_monomial_ideal(i):
        return False
    normal, rhs = facet
    poly = newton_polyhedron(i)
    if (tuple(normal), rhs) not in poly.facets:
        return False
    nf = i.normal_form(c)
    if exponent not in [m for m, _ in nf.terms]:
        return False
    return sum(a * e for a, e in zip(normal, exponent)) < rhs


def fractional_membership(c: Polynomial, i: IdealHandle, a: int, b: int,
                          m_max: int = 10) -> ClosureVerdict:
    """Verdict for c in the closure of the fractional power i^(a/b),
    decided as membership of c^b in the closure of i^a."""
    if a < 1 or b < 1:
        raise ValueError("fractional exponents must be positive")
    return is_integral_over(c ** b, ideal_power(i, a), m_max)


class ContainmentSummary:
    """Generator-by-generator closure containment of one ideal in another."""

    __slots__ = ("status", "verdicts", "squared")

    def __init__(self, status: str, verdicts: Sequence[tuple], squared: bool):
        self.status = status
        self.verdicts = tuple(verdicts)
        self.squared = squared

    def __repr__(self):
        return f"ContainmentSummary({self.status}, {len(self.verdicts)} generators)"


def ideal_integral_containment(a: IdealHandle, i: IdealHandle, m_max: int = 10,
                               square: bool = False) -> ContainmentSummary:
    """Is a (or a^2 with square=True) inside the closure of i?

    Tested per minimal generator; with square=True only generator squares
    are tested, which suffices because the square of an ideal is integral
    over the ideal of generator squares.
    """
    try:
        gens = a.minimal_generators()
    except ValueError:
        gens = a.gens
    verdicts = []
    for g in gens:
        probe = g * g if square else g
        verdicts.append((g, is_integral_over(probe, i, m_max)))
    if all(v.status == "member" for _, v in verdicts):
        status = "member"
    elif any(v.status == "non_member" for _, v in verdicts):
        status = "non_member"
    else:
        status = "inconclusive"
    return ContainmentSummary(status, verdicts, square)
