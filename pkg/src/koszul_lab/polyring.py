"""Coefficient fields, monomial orders, sparse polynomials, ring descriptors.

Coefficients are exact: arbitrary-precision rationals (`fractions.Fraction`)
or a prime field GF(p) with p < 2**31, whose elements are plain ints in
[0, p).  Monomials are exponent tuples.  Every value here is immutable, so
instances can be shared freely between concurrent workers.

Elements of a quotient ring S/J are represented by their normal forms
modulo a fixed reduced Groebner basis of J; see `quotient_normalize`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

# Exponents are checked against this bound so exponent arithmetic can never
# silently wrap in some downstream fixed-width consumer.
MAX_EXPONENT = 2**32 - 1

# Largest Mersenne prime below 2**31.  Big enough (> 2**30) that random
# scalar combinations behave generically.
DEFAULT_PRIME = 2**31 - 1

Monomial = tuple


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; bases 2, 3, 5, 7 decide n < 3_215_031_751.
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The rationals.  Elements are `Fraction`s (kept normalized by Fraction)."""

    __slots__ = ()

    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def spec_string(self) -> str:
        return "q"


class PrimeField:
    """GF(p) for prime p < 2**31.  Elements are ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not (2 <= p < 2**31):
            raise ValueError(f"prime field modulus must satisfy 2 <= p < 2**31, got {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a * pow(b, self.p - 2, self.p) % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        raise TypeError(f"cannot coerce {value!r} into GF({self.p})")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def spec_string(self) -> str:
        return f"fp:{self.p}"


QQ = RationalField()

Field = Union[RationalField, PrimeField]


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse a field spec: ``q`` for the rationals, ``fp:<p>`` for GF(p)."""
    text = text.strip().lower()
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ValueError(f"bad prime in field spec {text!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field spec {text!r} (expected 'q' or 'fp:<p>')")


# ---------------------------------------------------------------------------
# monomials


def mon_one(n: int) -> Monomial:
    return (0,) * n


def mon_degree(m: Monomial) -> int:
    return sum(m)


def mon_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    for e in out:
        if e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
    return out


def mon_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b, i.e. every exponent of a is at most b's."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mon_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; caller must ensure b | a."""
    out = tuple(x - y for x, y in zip(a, b))
    for e in out:
        if e < 0:
            raise ValueError(f"monomial {b} does not divide {a}")
    return out


def mon_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mon_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class MonomialOrder:
    """A multiplicative well-order on monomials, fixed per ring.

    `key(m)` maps a monomial to a tuple; monomial comparison is tuple
    comparison of keys.  grevlex: higher total degree wins, ties broken by
    the last nonzero entry of the exponent difference being negative.
    """

    __slots__ = ("kind",)

    KINDS = ("lex", "glex", "grevlex")

    def __init__(self, kind: str):
        if kind not in self.KINDS:
            raise ValueError(f"unknown order {kind!r}; expected one of {self.KINDS}")
        self.kind = kind

    def key(self, m: Monomial):
        if self.kind == "grevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        if self.kind == "glex":
            return (sum(m), m)
        return m  # lex

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("order", self.kind))

    def __repr__(self):
        return self.kind


class EliminationOrder(MonomialOrder):
    """Block order: the first `block` variables dominate, base order breaks ties.

    Used for intersection-by-tag-variable; any monomial containing a block
    variable is larger than every block-free monomial, so a Groebner basis
    element with block-free lead is entirely block-free.
    """

    __slots__ = ("block", "base")

    def __init__(self, base: MonomialOrder, block: int = 1):
        self.kind = f"elim{block}:{base.kind}"
        self.block = block
        self.base = base

    def key(self, m: Monomial):
        head = m[: self.block]
        return (sum(head), head, self.base.key(m[self.block :]))

    def __eq__(self, other):
        return isinstance(other, EliminationOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("order", self.kind))


GREVLEX = MonomialOrder("grevlex")
GLEX = MonomialOrder("glex")
LEX = MonomialOrder("lex")


def make_order(kind: str) -> MonomialOrder:
    return MonomialOrder(kind)


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """-1, 0, or 1 as a is less than, equal to, or greater than b."""
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return -1
    return 1 if ka > kb else 0


# ---------------------------------------------------------------------------
# rings


class Ring:
    """A polynomial ring: named variables, coefficient field, monomial order."""

    __slots__ = ("vars", "field", "order", "_index")

    def __init__(self, variables: Sequence[str], field: Field = QQ, order: MonomialOrder = GREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not v.isidentifier():
                raise ValueError(f"bad variable name {v!r}")
        self.vars = variables
        self.field = field
        self.order = order
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in ring {self}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return Polynomial(self, ((mon_one(self.nvars), self.field.one()),))

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((mon_one(self.nvars), c),))

    def variable(self, i: Union[int, str]) -> "Polynomial":
        if isinstance(i, str):
            i = self.var_index(i)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, ((tuple(exps), self.field.one()),))

    def variables(self) -> tuple:
        return tuple(self.variable(i) for i in range(self.nvars))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        if any(e < 0 or e > MAX_EXPONENT for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        c = self.field.coerce(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((exps, c),))

    def from_dict(self, coeffs: dict) -> "Polynomial":
        field = self.field
        items = []
        for mon, c in coeffs.items():
            c = field.coerce(c)
            if not field.is_zero(c):
                items.append((tuple(mon), c))
        items.sort(key=lambda t: self.order.key(t[0]), reverse=True)
        return Polynomial(self, tuple(items))

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and other.vars == self.vars
            and other.field == self.field
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.vars, self.field, self.order))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.vars)}]/{self.order}"


class QuotientRing:
    """S/J for a polynomial ring S; J is held as a reduced Groebner basis.

    The defining basis is produced by `groebner.quotient_ring`; elements are
    base-ring polynomials kept in normal form modulo J.
    """

    __slots__ = ("base", "relations")

    def __init__(self, base: Ring, relations):
        self.base = base
        self.relations = relations  # GroebnerBasis over base, rank 1

    @property
    def vars(self):
        return self.base.vars

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def order(self) -> MonomialOrder:
        return self.base.order

    def relation_polys(self) -> tuple:
        return tuple(e.to_poly() for e in self.relations.elements)

    def zero(self) -> "Polynomial":
        return self.base.zero()

    def one(self) -> "Polynomial":
        return self.base.one()

    def variable(self, i) -> "Polynomial":
        return quotient_normalize(self.base.variable(i), self)

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and other.base == self.base
            and other.relations.elements == self.relations.elements
        )

    def __hash__(self):
        return hash((self.base, self.relations.elements))

    def __repr__(self):
        rels = ", ".join(str(p) for p in self.relation_polys())
        return f"{self.base!r} mod ({rels})"


AnyRing = Union[Ring, QuotientRing]


def ambient(ring_like: AnyRing) -> Ring:
    return ring_like.base if isinstance(ring_like, QuotientRing) else ring_like


def ring(variables, field: Field = QQ, order="grevlex") -> Ring:
    """Convenience constructor: `ring("x, y")` or `ring(["x", "y"])`."""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.replace(",", " ").split()]
    if isinstance(order, str):
        order = make_order(order)
    return Ring(variables, field, order)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse polynomial: term list strictly descending in the ring order.

    Construction keeps the canonical form (sorted, duplicate-free, no zero
    coefficients), so equality is term-tuple equality.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring_: Ring, terms: tuple):
        self.ring = ring_
        self.terms = terms

    # -- inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lt(self) -> tuple:
        """Leading (monomial, coefficient)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def lm(self) -> Monomial:
        return self.lt()[0]

    def lc(self):
        return self.lt()[1]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mon_degree(m) for m, _ in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(mon_degree(m) for m, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {mon_degree(m) for m, _ in self.terms}
        return len(degs) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and mon_degree(self.terms[0][0]) == 0)

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero()
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[0][1]

    def monomials(self) -> tuple:
        return tuple(m for m, _ in self.terms)

    def coefficient(self, mon: Monomial):
        for m, c in self.terms:
            if m == mon:
                return c
        return self.ring.field.zero()

    # -- arithmetic

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        return Polynomial(self.ring, _merge(self.ring, self.terms, other.terms, sub=False))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        return Polynomial(self.ring, _merge(self.ring, self.terms, other.terms, sub=True))

    def __neg__(self) -> "Polynomial":
        neg = self.ring.field.neg
        return Polynomial(self.ring, tuple((m, neg(c)) for m, c in self.terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) > len(b):
            a, b = b, a
        field = self.ring.field
        acc: dict = {}
        for ma, ca in a:
            for mb, cb in b:
                m = mon_mul(ma, mb)
                c = field.mul(ca, cb)
                prev = acc.get(m)
                if prev is None:
                    acc[m] = c
                else:
                    s = field.add(prev, c)
                    if field.is_zero(s):
                        del acc[m]
                    else:
                        acc[m] = s
        key = self.ring.order.key
        items = sorted(acc.items(), key=lambda t: key(t[0]), reverse=True)
        return Polynomial(self.ring, tuple(items))

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field.coerce(c)
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, tuple((m, field.mul(coef, c)) for m, coef in self.terms))

    def term_mul(self, mon: Monomial, coeff) -> "Polynomial":
        """Multiply by a single term coeff * x^mon."""
        field = self.ring.field
        if field.is_zero(coeff):
            return self.ring.zero()
        return Polynomial(
            self.ring, tuple((mon_mul(m, mon), field.mul(c, coeff)) for m, c in self.terms)
        )

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        field = self.ring.field
        lc = self.lc()
        if field.is_one(lc):
            return self
        inv = field.inv(lc)
        return Polynomial(self.ring, tuple((m, field.mul(c, inv)) for m, c in self.terms))

    # -- substitution and evaluation

    def apply_linear_change(self, matrix) -> "Polynomial":
        """Substitute x_i -> sum_j matrix[i][j] * x_j (matrix over the field).

        The matrix must be square of size nvars and invertible.
        """
        from koszul_lab import linalg

        ring_ = self.ring
        n = ring_.nvars
        field = ring_.field
        rows = [[field.coerce(matrix[i][j]) for j in range(n)] for i in range(n)]
        if len(matrix) != n:
            raise ValueError("linear change matrix has wrong shape")
        if linalg.rank([row[:] for row in rows], field) != n:
            raise ValueError("linear change of variables must be invertible")
        images = [
            ring_.from_dict({tuple(1 if k == j else 0 for k in range(n)): rows[i][j] for j in range(n)})
            for i in range(n)
        ]
        result = ring_.zero()
        for mon, coeff in self.terms:
            term = ring_.constant(coeff)
            for i, e in enumerate(mon):
                if e:
                    term = term * images[i] ** e
            result = result + term
        return result

    def evaluate_matrices(self, mats, field, dim: int):
        """Evaluate at square matrices (one per variable) over `field`.

        Returns a dim x dim matrix; used to turn ring elements into linear
        actions on a finite-dimensional module.
        """
        from koszul_lab import linalg

        result = linalg.zero_matrix(dim, dim, field)
        for mon, coeff in self.terms:
            acc = linalg.scalar_matrix(dim, field.coerce(coeff), field)
            for i, e in enumerate(mon):
                for _ in range(e):
                    acc = linalg.mat_mul(acc, mats[i], field)
            result = linalg.mat_add(result, acc, field)
        return result

    # -- dunder plumbing

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.terms:
            factors = []
            for name, e in zip(self.ring.vars, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            coeff_str = str(c)
            if factors and c == 1:
                bits.append("*".join(factors))
            elif factors and c == -1:
                bits.append("-" + "*".join(factors))
            elif factors:
                bits.append(coeff_str + "*" + "*".join(factors))
            else:
                bits.append(coeff_str)
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out


def _merge(ring_: Ring, a: tuple, b: tuple, sub: bool) -> tuple:
    """Merge two canonical term tuples (both descending) into one."""
    field = ring_.field
    key = ring_.order.key
    out = []
    i, j, na, nb = 0, 0, len(a), len(b)
    while i < na and j < nb:
        ma, ca = a[i]
        mb, cb = b[j]
        if ma == mb:
            c = field.sub(ca, cb) if sub else field.add(ca, cb)
            if not field.is_zero(c):
                out.append((ma, c))
            i += 1
            j += 1
        elif key(ma) > key(mb):
            out.append(a[i])
            i += 1
        else:
            out.append((mb, field.neg(cb) if sub else cb))
            j += 1
    out.extend(a[i:])
    if sub:
        out.extend((m, field.neg(c)) for m, c in b[j:])
    else:
        out.extend(b[j:])
    return tuple(out)


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Dispatch on op in {"add", "sub", "mul"}; rings must match."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return f / g, raising ValueError when g does not divide f exactly."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring_ = f.ring
    field = ring_.field
    quotient = ring_.zero()
    rem = f
    gm, gc = g.lt()
    while not rem.is_zero():
        rm, rc = rem.lt()
        if not mon_divides(gm, rm):
            raise ValueError("division is not exact")
        qt = ring_.monomial(mon_div(rm, gm), field.div(rc, gc))
        quotient = quotient + qt
        rem = rem - qt * g
    return quotient


def quotient_normalize(f: Polynomial, q: QuotientRing) -> Polynomial:
    """Canonical representative of f in S/J: the normal form modulo J."""
    if f.ring != q.base:
        raise ValueError("polynomial does not live in the base ring of the quotient")
    return q.relations.reduce_poly(f)


def graded_components(f: Polynomial) -> dict:
    """Split into homogeneous components, degree -> Polynomial."""
    buckets: dict = {}
    for m, c in f.terms:
        buckets.setdefault(mon_degree(m), []).append((m, c))
    return {d: Polynomial(f.ring, tuple(ts)) for d, ts in buckets.items()}
