"""Worked-example registry and seeded generators of structured ideal classes.

The registry freezes a small collection of hand-checked examples together
with their expected facts; each fact carries a provenance marker:
"stated" (given with the example in the source collection), "derived"
(computed independently by this library and frozen), or "trivial".

The generators produce random ideals of the structured classes the main
theorems quantify over, rejection-sampling until a structural
postcondition certifies.  Same recipe and seed always yield the same
ideal: randomness comes only from `random.Random` seeded with a string
built from (kind, seed, attempt), using only `randrange` draws.
"""

from __future__ import annotations

import random
from typing import Callable, Optional, Sequence

from koszul_lab import closure as closure_mod
from koszul_lab import koszul as koszul_mod
from koszul_lab import linalg
from koszul_lab import resolutions as res_mod
from koszul_lab.groebner import quotient_ring
from koszul_lab.modops import (
    IdealHandle,
    colon,
    ideal,
    ideal_product,
    ideals_equal,
    maximal_ideal,
)
from koszul_lab.polyring import Field, Polynomial, PrimeField, QQ, Ring


class ExpectedFact:
    """A named check on an example with its expected value rendered as text."""

    __slots__ = ("name", "expected", "provenance")

    def __init__(self, name: str, expected: str, provenance: str):
        if provenance not in ("stated", "derived", "trivial"):
            raise ValueError(f"bad provenance {provenance!r}")
        self.name = name
        self.expected = expected
        self.provenance = provenance

    def __repr__(self):
        return f"ExpectedFact({self.name}={self.expected} [{self.provenance}])"


class ExampleRecord:
    """A frozen worked example: a builder plus verifiable expected facts."""

    __slots__ = ("name", "summary", "source", "_build", "facts", "_checks", "_cache")

    def __init__(self, name: str, summary: str, source: str,
                 build: Callable[[], dict], facts: Sequence[ExpectedFact],
                 checks: dict):
        self.name = name
        self.summary = summary
        self.source = source
        self._build = build
        self.facts = tuple(facts)
        self._checks = checks
        self._cache = None
        if set(checks) != {f.name for f in facts}:
            raise ValueError(f"fact/check mismatch in {name}")

    def build(self) -> dict:
        if self._cache is None:
            self._cache = self._build()
        return self._cache

    def verify(self) -> dict:
        """Run every expected-fact check; map fact name to pass/fail."""
        built = self.build()
        return {name: bool(fn(built)) for name, fn in sorted(self._checks.items())}

    def __repr__(self):
        return f"ExampleRecord({self.name}, {len(self.facts)} facts)"


_SOURCE = "bundled worked-example collection"


def _binomial_record() -> ExampleRecord:
    base = Ring(("x", "y", "z", "w"), QQ)
    x, y, z, w = base.variables()
    gens = (x * x - x * y, -(x * y) + y * y, z * z - z * w, -(z * w) + w * w)
    extra = x * z - y * z - x * w + y * w

    def build() -> dict:
        i = ideal(base, gens)
        return {
            "ring": base,
            "ideal": i,
            "extra": extra,
            "komplex": koszul_mod.build_koszul(gens, base),
        }

    def ann_eq(built, index, expected_gens):
        a = built["komplex"].homology(index).annihilator
        return ideals_equal(a, ideal(base, expected_gens))

    checks = {
        "first_homology_annihilator":
            lambda b: ann_eq(b, 1, gens + (extra,)),
        "second_homology_annihilator":
            lambda b: ann_eq(b, 2, (x - y, z - w)),
        "height":
            lambda b: b["ideal"].height() == 2,
        "closure_member_witness":
            lambda b: closure_mod.is_integral_over(extra, b["ideal"]).status == "member",
    }
    facts = [
        ExpectedFact("first_homology_annihilator",
                     "ideal plus x*z - y*z - x*w + y*w", "stated"),
        ExpectedFact("second_homology_annihilator", "(x - y, z - w)", "stated"),
        ExpectedFact("height", "2", "stated"),
        ExpectedFact("closure_member_witness",
                     "x*z - y*z - x*w + y*w integral over the ideal", "stated"),
    ]
    return ExampleRecord(
        "binomial-CHV",
        "four binomial quadrics in four variables; the first homology "
        "annihilator strictly contains the ideal",
        _SOURCE, build, facts, checks)


def _square_remark_record() -> ExampleRecord:
    base = Ring(("x", "y"), QQ)
    x, y = base.variables()
    gens = (x * x, x * y, y * y)

    def build() -> dict:
        i = ideal(base, gens)
        _, content = koszul_mod.presentation_and_content(gens, base)
        return {"ring": base, "ideal": i, "content": content}

    checks = {
        "content_colon":
            lambda b: ideals_equal(colon(b["ideal"], b["content"]),
                                   maximal_ideal(base)),
        "content_colon_square_inside":
            lambda b: b["ideal"].contains_ideal(
                ideal_product(colon(b["ideal"], b["content"]),
                              colon(b["ideal"], b["content"]))),
        "closure_fixed_point":
            lambda b: ideals_equal(closure_mod.monomial_closure(b["ideal"]),
                                   b["ideal"]),
        "first_homology_annihilator":
            lambda b: ideals_equal(koszul_mod.ann_h1(gens, base), b["ideal"]),
    }
    facts = [
        ExpectedFact("content_colon", "(x, y)", "stated"),
        ExpectedFact("content_colon_square_inside", "True", "stated"),
        ExpectedFact("closure_fixed_point", "True", "stated"),
        ExpectedFact("first_homology_annihilator", "the ideal itself", "derived"),
    ]
    return ExampleRecord(
        "square-remark",
        "square of the maximal ideal in two variables; the colon by the "
        "presentation content exceeds the closure yet its square falls in",
        _SOURCE, build, facts, checks)


def _quintic_record() -> ExampleRecord:
    base = Ring(("x", "y"), QQ)
    x, y = base.variables()
    gens = (x ** 5 - y ** 5, x ** 4 * y, x * y ** 4)

    def build() -> dict:
        i = ideal(base, gens)
        _, content = koszul_mod.presentation_and_content(gens, base)
        return {"ring": base, "ideal": i, "content": content}

    def square_colon_value(b):
        i = b["ideal"]
        sq = ideal_product(i, i)
        expect = ideal(base, gens + (x ** 3 * y ** 3,))
        return ideals_equal(colon(sq, i), expect)

    checks = {
        "square_colon":
            square_colon_value,
        "presentation_content":
            lambda b: ideals_equal(
                b["content"],
                ideal(base, (x * x, x * y, y * y))),
        "minimal_generator_count": lambda b: b["ideal"].mu() == 3,
        "content_generator_count": lambda b: b["content"].mu() == 3,
    }
    facts = [
        ExpectedFact("square_colon", "ideal plus x^3*y^3", "stated"),
        ExpectedFact("presentation_content", "(x, y)^2", "stated"),
        ExpectedFact("minimal_generator_count", "3", "stated"),
        ExpectedFact("content_generator_count", "3", "stated"),
    ]
    return ExampleRecord(
        "example-4.3",
        "three quintics in two variables whose conormal module is not "
        "faithful: the square colon picks up x^3*y^3",
        _SOURCE, build, facts, checks)


def _aberbach_record() -> ExampleRecord:
    base = Ring(("x", "y", "z"), QQ)
    x, y, z = base.variables()

    def build() -> dict:
        q = quotient_ring(base, _power_monomials(base, 3))
        dual = res_mod.matlis_dual(q)
        h1 = koszul_mod.homology_with_coefficients((x, y), dual, 1)
        h2 = koszul_mod.homology_with_coefficients((x, y), dual, 2)
        return {"ring": q, "module": dual, "h1": h1, "h2": h2, "z": z}

    checks = {
        "z_kills_first_homology": lambda b: b["h1"].kills(b["z"]),
        "z_square_spares_second_homology":
            lambda b: not b["h2"].kills(b["z"] * b["z"]),
    }
    facts = [
        ExpectedFact("z_kills_first_homology", "True", "stated"),
        ExpectedFact("z_square_spares_second_homology", "True", "stated"),
    ]
    return ExampleRecord(
        "aberbach-n2",
        "coefficient homology of two variables acting on the dual of an "
        "Artinian quotient: annihilation fails to propagate upward",
        _SOURCE, build, facts, checks)


def _power_monomials(base: Ring, d: int) -> list:
    """All monomials of total degree d, as polynomials."""
    out = []

    def rec(prefix, left):
        if len(prefix) == base.nvars - 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e)

    rec([], d)
    return [base.monomial(m) for m in sorted(out, reverse=True)]


_REGISTRY: Optional[dict] = None


def paper_examples() -> list:
    """All frozen example records, in registry order."""
    global _REGISTRY
    if _REGISTRY is None:
        records = [
            _binomial_record(),
            _square_remark_record(),
            _quintic_record(),
            _aberbach_record(),
        ]
        _REGISTRY = {r.name: r for r in records}
    return list(_REGISTRY.values())


def example(name: str) -> ExampleRecord:
    paper_examples()
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise KeyError(f"no example {name!r}; known: {known}") from None


# ---------------------------------------------------------------------------
# seeded generators


_KINDS = (
    "monomial_mprimary",
    "integrally_closed_monomial",
    "hilbert_burch",
    "pfaffian_gorenstein",
    "complete_intersection",
)

_RETRIES = 60


class GeneratorRecipe:
    """Parameters for one structured random ideal; pure given (kind, seed)."""

    __slots__ = ("kind", "seed", "nvars", "field", "max_degree", "count",
                 "size", "entry_degree", "codim")

    def __init__(self, kind: str, seed: int, nvars: int = 2,
                 field: Field = QQ, max_degree: int = 4, count: int = 2,
                 size: int = 3, entry_degree: int = 1, codim: int = 2):
        if kind not in _KINDS:
            raise ValueError(f"unknown recipe kind {kind!r}")
        if kind == "pfaffian_gorenstein":
            if isinstance(field, PrimeField) and field.p == 2:
                raise ValueError("skew Pfaffians need characteristic other than 2")
        if max_degree > 6:
            raise ValueError("degree cap exceeded: max_degree must stay <= 6")
        self.kind = kind
        self.seed = seed
        self.nvars = nvars
        self.field = field
        self.max_degree = max_degree
        self.count = count
        self.size = size
        self.entry_degree = entry_degree
        self.codim = codim

    def __repr__(self):
        return f"GeneratorRecipe({self.kind}, seed={self.seed})"


def _rng(recipe: GeneratorRecipe, attempt: int) -> random.Random:
    return random.Random(f"{recipe.kind}:{recipe.seed}:{attempt}")


def _scalar(rng: random.Random, field: Field, nonzero: bool = False):
    if isinstance(field, PrimeField):
        lo = 1 if nonzero else 0
        return field.coerce(rng.randrange(lo, field.p))
    v = rng.randrange(-50, 51)
    while nonzero and v == 0:
        v = rng.randrange(-50, 51)
    return field.coerce(v)


def _random_form(rng: random.Random, base: Ring, degree: int,
                 nonzero: bool = True) -> Polynomial:
    """Random homogeneous polynomial of the given degree."""
    mons = [t.lm() for t in _power_monomials(base, degree)]
    while True:
        coeffs = {m: _scalar(rng, base.field) for m in mons}
        f = base.from_dict(coeffs)
        if not (nonzero and f.is_zero()):
            return f


def _random_monomial(rng: random.Random, base: Ring, max_degree: int) -> Polynomial:
    d = rng.randrange(1, max_degree + 1)
    cuts = sorted(rng.randrange(0, d + 1) for _ in range(base.nvars - 1))
    parts = []
    prev = 0
    for c in cuts + [d]:
        parts.append(c - prev)
        prev = c
    return base.monomial(tuple(parts))


def generate(recipe: GeneratorRecipe) -> IdealHandle:
    """Sample the recipe's class until the structural postcondition holds."""
    build = {
        "monomial_mprimary": _gen_monomial_mprimary,
        "integrally_closed_monomial": _gen_integrally_closed,
        "hilbert_burch": _gen_hilbert_burch,
        "pfaffian_gorenstein": _gen_pfaffian,
        "complete_intersection": _gen_complete_intersection,
    }[recipe.kind]
    for attempt in range(_RETRIES):
        candidate = build(recipe, _rng(recipe, attempt))
        if candidate is not None:
            return candidate
    raise RuntimeError(
        f"recipe {recipe.kind} seed {recipe.seed}: postcondition "
        f"unreached in {_RETRIES} attempts")


def _gen_monomial_mprimary(recipe: GeneratorRecipe,
                           rng: random.Random) -> Optional[IdealHandle]:
    base = Ring(tuple("xyzw"[: recipe.nvars]), recipe.field)
    gens = []
    for k in range(base.nvars):
        e = [0] * base.nvars
        e[k] = rng.randrange(2, recipe.max_degree + 1)
        gens.append(base.monomial(tuple(e)))
    for _ in range(recipe.count):
        gens.append(_random_monomial(rng, base, recipe.max_degree))
    i = ideal(base, gens)
    if i.dimension() != 0:
        return None
    return i


def _gen_integrally_closed(recipe: GeneratorRecipe,
                           rng: random.Random) -> Optional[IdealHandle]:
    seed_ideal = _gen_monomial_mprimary(recipe, rng)
    if seed_ideal is None:
        return None
    closed = closure_mod.monomial_closure(seed_ideal)
    if not ideals_equal(closure_mod.monomial_closure(closed), closed):
        raise AssertionError("monomial closure failed to be idempotent")
    # complete intersections (mu = nvars) degenerate downstream: resample
    if closed.mu() <= closed.ring.nvars:
        return None
    if closed.dimension() != 0:
        return None
    return closed


def _delete_row(mat: list, i: int) -> list:
    return [row for k, row in enumerate(mat) if k != i]


def determinant(mat: list, base: Ring) -> Polynomial:
    """Exact determinant of a square polynomial matrix, cofactor expansion."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return base.one()
    if n == 1:
        return mat[0][0]
    total = base.zero()
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        term = mat[0][j] * determinant(minor, base)
        total = total + term if j % 2 == 0 else total - term
    return total


def _gen_hilbert_burch(recipe: GeneratorRecipe,
                       rng: random.Random) -> Optional[IdealHandle]:
    base = Ring(tuple("xyzw"[: max(2, recipe.nvars)]), recipe.field)
    n = recipe.size
    mat = [[_random_form(rng, base, recipe.entry_degree) for _ in range(n - 1)]
           for _ in range(n)]
    gens = []
    for i in range(n):
        minor = determinant(_delete_row(mat, i), base)
        gens.append(minor if i % 2 == 0 else -minor)
    if any(g.is_zero() for g in gens):
        return None
    i = ideal(base, gens)
    if i.mu() != n or i.height() != 2:
        return None
    res = res_mod.minimal_resolution(i, base, max_length=4)
    if res.truncated or res.length != 2 or res.rank(2) != n - 1:
        return None
    return i


def pfaffian(mat: list, base: Ring) -> Polynomial:
    """Pfaffian of a skew-symmetric even-size matrix, first-row expansion."""
    n = len(mat)
    for i in range(n):
        if len(mat[i]) != n or not mat[i][i].is_zero():
            raise ValueError("Pfaffian needs a skew-symmetric matrix")
        for j in range(i):
            if not (mat[i][j] + mat[j][i]).is_zero():
                raise ValueError("Pfaffian needs a skew-symmetric matrix")
    if n % 2 != 0:
        raise ValueError("Pfaffian needs an even-size matrix")
    return _pfaffian_rec(mat, base)


def _pfaffian_rec(mat: list, base: Ring) -> Polynomial:
    n = len(mat)
    if n == 0:
        return base.one()
    if n == 2:
        return mat[0][1]
    total = base.zero()
    for j in range(1, n):
        keep = [k for k in range(1, n) if k != j]
        sub = [[mat[a][b] for b in keep] for a in keep]
        term = mat[0][j] * _pfaffian_rec(sub, base)
        total = total + term if j % 2 == 1 else total - term
    return total


def _gen_pfaffian(recipe: GeneratorRecipe,
                  rng: random.Random) -> Optional[IdealHandle]:
    base = Ring(("x", "y", "z"), recipe.field)
    n = 2 * recipe.size + 1
    mat = [[base.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            f = _random_form(rng, base, recipe.entry_degree)
            mat[i][j] = f
            mat[j][i] = -f
    gens = []
    for i in range(n):
        sub = [[row[k] for k in range(n) if k != i] for row in _delete_row(mat, i)]
        p = pfaffian(sub, base)
        gens.append(p if i % 2 == 0 else -p)
    if any(g.is_zero() for g in gens):
        return None
    i = ideal(base, gens)
    if i.mu() != n or i.height() != 3:
        return None
    shape = res_mod.classify(i)
    if not shape["gorenstein_quotient"] or not shape["perfect"]:
        return None
    return i


def _gen_complete_intersection(recipe: GeneratorRecipe,
                               rng: random.Random) -> Optional[IdealHandle]:
    base = Ring(tuple("xyzw"[: recipe.nvars]), recipe.field)
    if recipe.codim > base.nvars:
        raise ValueError("codimension cannot exceed the variable count")
    gens = [_random_form(rng, base, rng.randrange(1, recipe.max_degree + 1))
            for _ in range(recipe.codim)]
    i = ideal(base, gens)
    if i.is_unit() or i.height() != recipe.codim:
        return None
    return i


def general_elements(i: IdealHandle, j: int, seed: int,
                     require_height: Optional[int] = None) -> IdealHandle:
    """Ideal of j random invertible scalar recombinations of minimal
    generators; resamples until the height matches (the expected height,
    or `require_height` when given)."""
    gens = i.minimal_generators()
    mu = len(gens)
    if j > mu:
        raise ValueError(f"asked for {j} combinations of {mu} generators")
    field = i.ring.field
    target = require_height if require_height is not None else min(j, i.height())
    for attempt in range(_RETRIES):
        rng = random.Random(f"general:{seed}:{attempt}")
        rows = [[_scalar(rng, field) for _ in range(mu)] for _ in range(j)]
        if linalg.rank([list(r) for r in rows], field) != j:
            continue
        combos = []
        for row in rows:
            acc = i.ring.zero()
            for c, g in zip(row, gens):
                if not field.is_zero(c):
                    acc = acc + g.scale(c)
            combos.append(acc)
        out = ideal(i.ring, combos)
        if out.height() == target:
            return out
    raise RuntimeError(f"could not reach height {target} with {j} combinations")
