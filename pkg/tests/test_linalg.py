"""Exact dense linear algebra: certified ranks, kernels, and solutions."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from koszul_lab import linalg
from koszul_lab.polyring import GF, QQ

entries = st.fractions(min_value=-6, max_value=6, max_denominator=4)
shapes = st.tuples(st.integers(1, 4), st.integers(1, 4))


@st.composite
def matrices(draw):
    rows, cols = draw(shapes)
    return [[draw(entries) for _ in range(cols)] for _ in range(rows)]


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_nullspace_vectors_annihilate(m):
    for v in linalg.nullspace(m, QQ):
        assert all(x == 0 for x in linalg.mat_vec(m, v, QQ))


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_plus_nullity(m):
    cols = len(m[0])
    assert linalg.rank(m, QQ) + len(linalg.nullspace(m, QQ)) == cols


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_idempotent(m):
    rows, pivots = linalg.rref(m, QQ)
    again, pivots2 = linalg.rref(rows, QQ)
    assert again == rows and pivots2 == pivots


@given(matrices(), st.lists(entries, min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_solve_solutions_check_out(m, x):
    x = (x + [Fraction(0)] * len(m[0]))[: len(m[0])]
    rhs = linalg.mat_vec(m, x, QQ)
    sol = linalg.solve(m, rhs, QQ)
    assert sol is not None
    assert linalg.mat_vec(m, sol, QQ) == rhs


def test_solve_reports_inconsistency():
    m = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert linalg.solve(m, [Fraction(1), Fraction(2)], QQ) is None


@given(matrices(), matrices())
@settings(max_examples=40, deadline=None)
def test_intersection_inside_both(a, b):
    if len(a[0]) != len(b[0]):
        return
    meet = linalg.intersect_row_spaces(a, b, QQ)
    ra = linalg.row_space_basis(a, QQ)
    rb = linalg.row_space_basis(b, QQ)
    for v in meet:
        assert linalg.in_row_space(v, ra, QQ)
        assert linalg.in_row_space(v, rb, QQ)


def test_intersection_dimension_formula():
    f = QQ
    a = [[Fraction(1), Fraction(0), Fraction(0)],
         [Fraction(0), Fraction(1), Fraction(0)]]
    b = [[Fraction(0), Fraction(1), Fraction(0)],
         [Fraction(0), Fraction(0), Fraction(1)]]
    meet = linalg.intersect_row_spaces(a, b, f)
    assert len(meet) == 1
    assert linalg.in_row_space([Fraction(0), Fraction(1), Fraction(0)], meet, f)


def test_prime_field_round_trip():
    f = GF(101)
    m = [[f.from_int(3), f.from_int(5)], [f.from_int(7), f.from_int(11)]]
    assert linalg.rank(m, f) == 2
    sol = linalg.solve(m, [f.from_int(1), f.from_int(0)], f)
    assert linalg.mat_vec(m, sol, f) == [1, 0]
