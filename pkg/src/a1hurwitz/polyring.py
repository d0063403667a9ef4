"""Dense univariate polynomials and rational functions over any base field.

The squarefree splitting is characteristic-p aware and stays correct over
the imperfect fields F_p(t), where an irreducible polynomial can have zero
derivative.  Full factorization is provided over finite fields only; over Q
and F_p(t) the squarefree-coprime clusters are the final decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field_tower import (
    A1HurwitzError,
    DivisionByZero,
    Field,
    FieldElement,
    FieldMismatch,
    PrimeField,
    QuotientField,
    UnsupportedField,
    poly_string,
)

__all__ = [
    "NEG_INF",
    "DEFAULT_SEED",
    "Poly",
    "RationalFunc",
    "FactorPart",
    "CoprimeFactorization",
    "ZeroPolynomial",
    "ConstantPolynomial",
    "VariableMismatch",
    "poly",
    "divrem",
    "gcd",
    "gcd_extended",
    "derivative",
    "valuation",
    "invert_mod",
    "pow_mod",
    "squarefree_split",
    "factor_finite",
    "is_irreducible",
]

# Degree of the zero polynomial.  A distinguished marker rather than -1 so
# that degree arithmetic cannot silently go wrong.
NEG_INF = float("-inf")

DEFAULT_SEED = 1729


class ZeroPolynomial(A1HurwitzError):
    pass


class ConstantPolynomial(A1HurwitzError):
    pass


class VariableMismatch(A1HurwitzError):
    pass


class Poly:
    """A dense univariate polynomial; coefficients ascending by degree."""

    __slots__ = ("field", "coeffs", "variable")

    def __init__(self, field: Field, coeffs: tuple[FieldElement, ...], variable: str):
        self.field = field
        self.coeffs = coeffs
        self.variable = variable

    @classmethod
    def from_coeffs(cls, field: Field, coeffs, variable: str = "y") -> Poly:
        out = [field(c) for c in coeffs]
        while out and out[-1].is_zero():
            out.pop()
        return cls(field, tuple(out), variable)

    @classmethod
    def zero(cls, field: Field, variable: str = "y") -> Poly:
        return cls(field, (), variable)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, i: int) -> FieldElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def _check(self, other: Poly):
        if self.field != other.field:
            raise FieldMismatch("polynomials over different fields")
        if self.variable != other.variable:
            raise VariableMismatch(
                f"cannot mix variables {self.variable!r} and {other.variable!r}"
            )

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        while out and out[-1].is_zero():
            out.pop()
        return Poly(self.field, tuple(out), self.variable)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly(self.field, tuple(-c for c in self.coeffs), self.variable)

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            if not self.coeffs or not other.coeffs:
                return Poly(self.field, (), self.variable)
            zero = self.field.zero
            out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a.is_zero():
                    for j, b in enumerate(other.coeffs):
                        out[i + j] = out[i + j] + a * b
            while out and out[-1].is_zero():
                out.pop()
            return Poly(self.field, tuple(out), self.variable)
        c = self.field(other)
        if c.is_zero():
            return Poly(self.field, (), self.variable)
        return Poly(self.field, tuple(a * c for a in self.coeffs), self.variable)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.from_coeffs(self.field, [self.field.one], self.variable)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __floordiv__(self, other: Poly) -> Poly:
        return divrem(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divrem(self, other)[1]

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> tuple[FieldElement, Poly]:
        """Split off the leading coefficient: self = unit * monic."""
        u = self.lc
        if u == self.field.one:
            return u, self
        inv = u.inverse()
        return u, Poly(
            self.field, tuple(c * inv for c in self.coeffs), self.variable
        )

    def derivative(self) -> Poly:
        out = [
            self.field.from_int(i) * c for i, c in enumerate(self.coeffs) if i >= 1
        ]
        while out and out[-1].is_zero():
            out.pop()
        return Poly(self.field, tuple(out), self.variable)

    def with_variable(self, variable: str) -> Poly:
        return Poly(self.field, self.coeffs, variable)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.field == other.field
            and self.variable == other.variable
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.variable, self.coeffs))

    def sort_key(self):
        return (len(self.coeffs), tuple(c.sort_key() for c in self.coeffs))

    def __str__(self):
        return poly_string(
            [(i, str(c)) for i, c in enumerate(self.coeffs) if not c.is_zero()],
            self.variable,
        )

    def __repr__(self):
        return f"Poly({self} over {self.field})"


def poly(field: Field, coeffs, variable: str = "y") -> Poly:
    """Convenience constructor; coefficients lowest degree first."""
    return Poly.from_coeffs(field, coeffs, variable)


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Exact division with remainder: a = q*b + r, deg r < deg b."""
    a._check(b)
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if a.degree < b.degree:
        return Poly(a.field, (), a.variable), a
    field = a.field
    rem = list(a.coeffs)
    inv_lead = b.lc.inverse()
    dq = len(a.coeffs) - len(b.coeffs)
    q = [field.zero] * (dq + 1)
    for i in range(dq, -1, -1):
        c = rem[i + len(b.coeffs) - 1] * inv_lead
        if not c.is_zero():
            q[i] = c
            for j, cb in enumerate(b.coeffs):
                rem[i + j] = rem[i + j] - c * cb
    while rem and rem[-1].is_zero():
        rem.pop()
    while q and q[-1].is_zero():
        q.pop()
    return Poly(field, tuple(q), a.variable), Poly(field, tuple(rem), a.variable)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    while not b.is_zero():
        a, b = b, divrem(a, b)[1]
    if a.is_zero():
        return a
    return a.monic()[1]


def gcd_extended(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Monic g with s*a + u*b = g; the identity is re-verified before return."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomial("gcd of two zero polynomials")
    field, var = a.field, a.variable
    one = poly(field, [1], var)
    zero = Poly(field, (), var)
    r0, r1 = a, b
    s0, s1 = one, zero
    u0, u1 = zero, one
    while not r1.is_zero():
        q, r = divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    lead = r0.lc.inverse()
    g, s, u = r0 * lead, s0 * lead, u0 * lead
    assert s * a + u * b == g, "extended gcd identity failed"
    return g, s, u


def derivative(a: Poly) -> Poly:
    """Formal derivative; in characteristic p the factor i is taken mod p."""
    return a.derivative()


def valuation(a: Poly, pi: Poly) -> int:
    """Exact order of pi in a (a nonzero, pi nonconstant)."""
    if a.is_zero():
        raise ZeroPolynomial("valuation of the zero polynomial")
    if pi.degree < 1:
        raise ConstantPolynomial("valuation at a constant")
    v = 0
    while True:
        q, r = divrem(a, pi)
        if not r.is_zero():
            return v
        a = q
        v += 1


def invert_mod(a: Poly, m: Poly) -> Poly:
    """Inverse of a modulo m; requires gcd(a, m) = 1."""
    g, s, _ = gcd_extended(a, m)
    if g.degree != 0:
        raise DivisionByZero(f"{a} is not invertible modulo {m}")
    return divrem(s * g.coeff(0).inverse(), m)[1]


def pow_mod(base: Poly, e: int, m: Poly) -> Poly:
    out = poly(base.field, [1], base.variable)
    base = divrem(base, m)[1]
    while e:
        if e & 1:
            out = divrem(out * base, m)[1]
        base = divrem(base * base, m)[1]
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# rational functions


class RationalFunc:
    """A reduced fraction of polynomials: gcd(num, den) = 1, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        num._check(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            den = poly(num.field, [1], num.variable)
        else:
            g = gcd(num, den)
            if g.degree >= 1:
                num = divrem(num, g)[0]
                den = divrem(den, g)[0]
            lead = den.lc
            if lead != num.field.one:
                inv = lead.inverse()
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, num: Poly) -> RationalFunc:
        return cls(num, poly(num.field, [1], num.variable))

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def variable(self) -> str:
        return self.num.variable

    @property
    def degree(self):
        """Degree as a map: max(deg num, deg den)."""
        return max(self.num.degree, self.den.degree)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __add__(self, other: RationalFunc) -> RationalFunc:
        return RationalFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: RationalFunc) -> RationalFunc:
        return RationalFunc(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> RationalFunc:
        return RationalFunc(-self.num, self.den)

    def __mul__(self, other: RationalFunc) -> RationalFunc:
        return RationalFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalFunc) -> RationalFunc:
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> RationalFunc:
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("negative power of zero")
            return RationalFunc(self.den**-n, self.num**-n)
        return RationalFunc(self.num**n, self.den**n)

    def scale(self, c: FieldElement) -> RationalFunc:
        return RationalFunc(self.num * c, self.den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.degree == 0 and self.den.coeff(0) == self.field.one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunc({self} over {self.field})"


# ---------------------------------------------------------------------------
# squarefree splitting (characteristic aware)


@dataclass(frozen=True)
class FactorPart:
    """One coprime factor.  ``irreducible`` means certified by construction."""

    poly: Poly
    multiplicity: int
    irreducible: bool = False


@dataclass(frozen=True)
class CoprimeFactorization:
    unit: FieldElement
    parts: tuple[FactorPart, ...]

    def expand(self) -> Poly:
        out = poly(self.unit.field, [self.unit], self.parts[0].poly.variable
                   if self.parts else "y")
        for part in self.parts:
            out = out * part.poly**part.multiplicity
        return out

    def __iter__(self):
        return iter(self.parts)


def _sorted_parts(parts) -> tuple[FactorPart, ...]:
    return tuple(sorted(parts, key=lambda f: f.poly.sort_key()))


def _compress_p(a: Poly, p: int) -> Poly:
    """s with s(x^p) = a; assumes every nonzero coefficient sits at p*i."""
    assert all(c.is_zero() or i % p == 0 for i, c in enumerate(a.coeffs))
    return Poly(a.field, tuple(a.coeffs[::p]), a.variable)


def _stretch_p(a: Poly, p: int) -> Poly:
    """a(x^p)."""
    zero = a.field.zero
    out = []
    for c in a.coeffs:
        out.append(c)
        out.extend([zero] * (p - 1))
    while out and out[-1].is_zero():
        out.pop()
    return Poly(a.field, tuple(out), a.variable)


def _coeff_pth_root(a: Poly) -> Poly | None:
    roots = []
    for c in a.coeffs:
        r = c.pth_root()
        if r is None:
            return None
        roots.append(r)
    return Poly(a.field, tuple(roots), a.variable)


def _sqf_monic(a: Poly) -> list[tuple[Poly, int]]:
    """Coprime splitting of a monic nonconstant polynomial.

    The Yun-style loop peels off the factors whose multiplicity is prime to
    the characteristic; the leftover lies in k[x^p] and is handled by
    recursing on the compressed polynomial.  A compressed factor whose
    coefficients are all p-th powers is replaced by its p-th root (which is
    then genuinely squarefree) with the multiplicity scaled by p; otherwise
    the stretched factor is emitted as a coprime cluster of its own.
    """
    field = a.field
    d = a.derivative()
    out: list[tuple[Poly, int]] = []
    if not d.is_zero():
        g = gcd(a, d)
        w = divrem(a, g)[0]
        i = 1
        while w.degree >= 1:
            y = gcd(w, g)
            z = divrem(w, y)[0]
            if z.degree >= 1:
                out.append((z, i))
            w = y
            g = divrem(g, y)[0]
            i += 1
        rest = g
    else:
        rest = a
    if rest.degree >= 1:
        p = field.char
        assert p > 0, "nonconstant residual with zero derivative in characteristic 0"
        s = _compress_p(rest, p)
        for f, m in _sqf_monic(s):
            r = _coeff_pth_root(f)
            if r is not None:
                out.append((r, m * p))
            else:
                out.append((_stretch_p(f, p), m))
    return out


def squarefree_split(a: Poly) -> CoprimeFactorization:
    """Pairwise-coprime factors with multiplicities, exact in characteristic p.

    Over perfect fields every factor is squarefree.  Over F_p(t) an
    inseparable irreducible like y^p - t is returned whole with multiplicity
    one rather than being split or mis-multiplied.
    """
    if a.is_zero():
        raise ZeroPolynomial("cannot split the zero polynomial")
    unit, m = a.monic()
    if m.degree == 0:
        return CoprimeFactorization(unit, ())
    parts = [FactorPart(f, mult) for f, mult in _sqf_monic(m)]
    return CoprimeFactorization(unit, _sorted_parts(parts))


# ---------------------------------------------------------------------------
# factorization over finite fields


def _finite_order(field: Field) -> int:
    q = field.order
    if q is None:
        raise UnsupportedField(f"{field} is not a finite field")
    return q


def _rand_poly(field: Field, max_deg: int, rng: random.Random, variable: str) -> Poly:
    q = _finite_order(field)
    if isinstance(field, PrimeField):
        pick = lambda: field.from_int(rng.randrange(q))
    else:
        payloads = None

        def pick():
            nonlocal payloads
            if payloads is None:
                payloads = [e for e in field.elements()]
            return payloads[rng.randrange(q)]

    coeffs = [pick() for _ in range(max_deg + 1)]
    return Poly.from_coeffs(field, coeffs, variable)


def _distinct_degree(f: Poly, q: int) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of same-degree irreducibles."""
    out = []
    x = poly(f.field, [0, 1], f.variable)
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if f.degree < 2 * d:
            out.append((f, f.degree))
            break
        h = pow_mod(h, q, f)
        g = gcd(h - x, f)
        if g.degree >= 1:
            out.append((g, d))
            f = divrem(f, g)[0]
            h = divrem(h, f)[1]
    return out


def _equal_degree(f: Poly, d: int, q: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    e = (q**d - 1) // 2
    one = poly(f.field, [1], f.variable)
    while True:
        r = _rand_poly(f.field, f.degree - 1, rng, f.variable)
        if r.degree < 1:
            continue
        g = gcd(r, f)
        if 1 <= g.degree < f.degree:
            pass  # lucky split
        else:
            s = pow_mod(r, e, f)
            g = gcd(s - one, f)
            if not (1 <= g.degree < f.degree):
                continue
        rest = divrem(f, g)[0]
        return _equal_degree(g, d, q, rng) + _equal_degree(rest, d, q, rng)


def factor_finite(a: Poly, seed: int | None = None) -> CoprimeFactorization:
    """Complete irreducible factorization over a finite field.

    Randomized (equal-degree splitting) but deterministic output: the factor
    list is unique and canonically sorted, and the RNG is seeded.
    """
    q = _finite_order(a.field)
    if a.degree < 1:
        raise ConstantPolynomial("cannot factor a constant")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    unit, m = a.monic()
    parts = []
    for sq in squarefree_split(m).parts:
        for block, d in _distinct_degree(sq.poly, q):
            for irr in _equal_degree(block, d, q, rng):
                parts.append(FactorPart(irr, sq.multiplicity, True))
    return CoprimeFactorization(unit, _sorted_parts(parts))


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over a finite field."""
    q = _finite_order(f.field)
    n = f.degree
    if n is NEG_INF or n == 0:
        return False
    if n == 1:
        return True
    x = poly(f.field, [0, 1], f.variable)
    primes = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    for r in primes:
        h = pow_mod(x, q ** (n // r), f)
        if gcd(h - x, f).degree != 0:
            return False
    return pow_mod(x, q**n, f) == divrem(x, f)[1]
