"""Exact arithmetic for the supported base fields.

Four kinds of field are available: the rationals Q, prime fields F_p for odd
primes p, rational function fields F_p(t), and quotient extensions k[x]/(m).
Every element is immutable and kept in a unique canonical form, so structural
equality coincides with equality in the field.  Characteristic 2 is rejected
at construction time throughout (quadratic-form diagonalization needs 2 to
be invertible).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "A1HurwitzError",
    "NotPrime",
    "EvenCharacteristic",
    "ReducibleModulus",
    "DivisionByZero",
    "FieldMismatch",
    "ZeroElement",
    "SquareClassOverflow",
    "UnsupportedField",
    "InvalidFieldSpec",
    "Field",
    "FieldElement",
    "RationalField",
    "PrimeField",
    "RationalFunctionField",
    "QuotientField",
    "SquareClass",
    "make_field",
    "quotient_field",
    "arith",
    "square_class_rep",
    "square_class_best_effort",
    "square_class_mul",
    "square_class_neg",
    "factor_int",
    "is_square",
    "poly_string",
]


class A1HurwitzError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(A1HurwitzError):
    pass


class EvenCharacteristic(A1HurwitzError):
    pass


class ReducibleModulus(A1HurwitzError):
    pass


class DivisionByZero(A1HurwitzError, ZeroDivisionError):
    pass


class FieldMismatch(A1HurwitzError):
    pass


class ZeroElement(A1HurwitzError):
    pass


class SquareClassOverflow(A1HurwitzError):
    pass


class UnsupportedField(A1HurwitzError):
    pass


class InvalidFieldSpec(A1HurwitzError):
    pass


# ---------------------------------------------------------------------------
# primality


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond desk scale."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
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


def _check_odd_prime(p: int) -> int:
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


# ---------------------------------------------------------------------------
# dense F_p[t] kernel on int tuples (ascending coefficients, no trailing zeros)


def _zx_trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _zx_add(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, cb in enumerate(b):
        out[i] = (out[i] + cb) % p
    return _zx_trim(out)


def _zx_neg(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple((-c) % p for c in a)


def _zx_scale(a: tuple[int, ...], s: int, p: int) -> tuple[int, ...]:
    s %= p
    if s == 0:
        return ()
    return tuple(c * s % p for c in a)


def _zx_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _zx_trim(out)


def _zx_divmod(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] * inv_lead % p
        if c:
            q[i] = c
            for j, cb in enumerate(b):
                rem[i + j] = (rem[i + j] - c * cb) % p
    return _zx_trim(q), _zx_trim(rem)


def _zx_gcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    while b:
        a, b = b, _zx_divmod(a, b, p)[1]
    if a and a[-1] != 1:
        a = _zx_scale(a, pow(a[-1], -1, p), p)
    return a


def _zx_eval(a: tuple[int, ...], x0: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x0 + c) % p
    return acc


# ---------------------------------------------------------------------------
# shared polynomial rendering


_ATOM_BREAKERS = ("+", "-", " ", "/")


def poly_string(terms: list[tuple[int, str]], var: str) -> str:
    """Render (degree, coefficient-string) terms as a canonical expression.

    Terms are emitted in descending degree.  Coefficient strings containing
    additive structure are parenthesized so the output re-parses with the
    usual precedence rules.  A leading "-" on a coefficient is folded into
    the joining operator.
    """
    terms = sorted((d for d in terms if d[1] != "0"), key=lambda t: -t[0])
    if not terms:
        return "0"
    rendered: list[str] = []
    for deg, cs in terms:
        neg = cs.startswith("-") and not any(ch in cs[1:] for ch in ("+", "-"))
        body = cs[1:] if neg else cs
        wrap = any(ch in body for ch in _ATOM_BREAKERS)
        if deg == 0:
            piece = f"({body})" if wrap else body
        else:
            power = var if deg == 1 else f"{var}^{deg}"
            if body == "1":
                piece = power
            else:
                piece = (f"({body})" if wrap else body) + "*" + power
        rendered.append(("-" if neg else "+", piece))
    first_sign, first = rendered[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, piece in rendered[1:]:
        out += (" - " if sign == "-" else " + ") + piece
    return out


def _zx_render(a: tuple[int, ...], var: str = "t") -> str:
    return poly_string([(i, str(c)) for i, c in enumerate(a) if c], var)


# ---------------------------------------------------------------------------
# field descriptors and elements


class FieldElement:
    """An element of one of the supported fields, in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _other(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(
                    f"elements of {self.field} and {other.field} cannot be combined"
                )
            return other
        return self.field(other)

    def __add__(self, other):
        other = self._other(other)
        return FieldElement(self.field, self.field._add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return FieldElement(
            self.field, self.field._add(self.value, self.field._neg(other.value))
        )

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        return FieldElement(self.field, self.field._mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        return FieldElement(
            self.field, self.field._mul(self.value, self.field._inv(other.value))
        )

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pow__(self, n: int):
        if n < 0:
            return (self.field.one / self) ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field._inv(self.value))

    def pth_root(self) -> FieldElement | None:
        """The p-th root in characteristic p, or None if there is none."""
        root = self.field._pth_root(self.value)
        return None if root is None else FieldElement(self.field, root)

    def sort_key(self):
        return self.field._key(self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field._render(self.value)

    def __repr__(self):
        return f"<{self} in {self.field}>"


class Field:
    """Base descriptor.  Subclasses supply payload-level arithmetic."""

    char: int = 0

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not belong to {self}")
            return value
        return FieldElement(self, self._coerce(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, self._from_int(0))

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, self._from_int(1))

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, self._from_int(n))

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def order(self) -> int | None:
        return None

    # payload protocol -----------------------------------------------------

    def _coerce(self, value):
        raise NotImplementedError

    def _from_int(self, n: int):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        raise NotImplementedError

    def _pth_root(self, a):
        raise UnsupportedField(f"p-th roots are not defined over {self}")

    def _render(self, a) -> str:
        raise NotImplementedError

    def _key(self, a):
        raise NotImplementedError


class RationalField(Field):
    """The field Q; payloads are Fraction values."""

    char = 0

    def _coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, tuple) and len(value) == 2:
            return Fraction(value[0], value[1])
        raise TypeError(f"cannot coerce {value!r} into Q")

    def _from_int(self, n):
        return Fraction(n)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _render(self, a):
        return str(a)

    def _key(self, a):
        return (a.numerator, a.denominator)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    """The field F_p for an odd prime p; payloads are ints in [0, p)."""

    def __init__(self, p: int):
        self.p = _check_odd_prime(p)
        self.char = p
        self._nonresidue: int | None = None

    @property
    def is_finite(self):
        return True

    @property
    def order(self):
        return self.p

    def smallest_nonresidue(self) -> int:
        if self._nonresidue is None:
            e = (self.p - 1) // 2
            n = 2
            while pow(n, e, self.p) == 1:
                n += 1
            self._nonresidue = n
        return self._nonresidue

    def _coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def _from_int(self, n):
        return n % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero(f"division by zero in {self}")
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _pth_root(self, a):
        # Frobenius is the identity on F_p.
        return a

    def _render(self, a):
        return str(a)

    def _key(self, a):
        return (a,)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class RationalFunctionField(Field):
    """The field F_p(t); payloads are reduced (num, den) coefficient tuples.

    Canonical form: gcd(num, den) = 1, den monic and nonzero, zero = ((), (1,)).
    """

    variable = "t"

    def __init__(self, p: int):
        self.p = _check_odd_prime(p)
        self.char = p

    def _make(self, num: tuple[int, ...], den: tuple[int, ...]):
        p = self.p
        if not den:
            raise DivisionByZero(f"zero denominator in {self}")
        if not num:
            return ((), (1,))
        g = _zx_gcd(num, den, p)
        if len(g) > 1:
            num = _zx_divmod(num, g, p)[0]
            den = _zx_divmod(den, g, p)[0]
        if den[-1] != 1:
            inv = pow(den[-1], -1, p)
            num = _zx_scale(num, inv, p)
            den = _zx_scale(den, inv, p)
        return (num, den)

    @property
    def gen(self) -> FieldElement:
        """The transcendental generator t."""
        return FieldElement(self, ((0, 1), (1,)))

    def from_coeffs(self, num, den=(1,)) -> FieldElement:
        p = self.p
        return FieldElement(
            self,
            self._make(_zx_trim([c % p for c in num]), _zx_trim([c % p for c in den])),
        )

    def _coerce(self, value):
        if isinstance(value, int):
            v = value % self.p
            return ((v,) if v else (), (1,))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def _from_int(self, n):
        v = n % self.p
        return ((v,) if v else (), (1,))

    def _add(self, a, b):
        p = self.p
        (n1, d1), (n2, d2) = a, b
        return self._make(
            _zx_add(_zx_mul(n1, d2, p), _zx_mul(n2, d1, p), p), _zx_mul(d1, d2, p)
        )

    def _neg(self, a):
        return (_zx_neg(a[0], self.p), a[1])

    def _mul(self, a, b):
        p = self.p
        return self._make(_zx_mul(a[0], b[0], p), _zx_mul(a[1], b[1], p))

    def _inv(self, a):
        if not a[0]:
            raise DivisionByZero(f"division by zero in {self}")
        return self._make(a[1], a[0])

    def _is_zero(self, a):
        return not a[0]

    def _pth_root(self, a):
        # F_p(t)^p = F_p(t^p): every exponent carrying a nonzero coefficient
        # must be divisible by p; coefficients are fixed by Frobenius.
        p = self.p
        parts = []
        for c in a:
            if any(v and i % p for i, v in enumerate(c)):
                return None
            parts.append(tuple(c[i] for i in range(0, len(c), p)))
        return (parts[0], parts[1])

    def _render(self, a):
        num, den = a
        ns = _zx_render(num, self.variable)
        if den == (1,):
            return ns
        return f"({ns})/({_zx_render(den, self.variable)})"

    def _key(self, a):
        return (len(a[0]), a[0], len(a[1]), a[1])

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.p == self.p

    def __hash__(self):
        return hash(("Fpt", self.p))

    def __repr__(self):
        return f"F_{self.p}(t)"


class QuotientField(Field):
    """A quotient extension base[x]/(m); payloads are coefficient tuples.

    The modulus is monic and nonconstant.  Irreducibility is verified at
    construction over finite base fields; over Q and F_p(t) it is trusted
    and ``irreducibility_verified`` is left False.
    """

    def __init__(self, base: Field, modulus: tuple, variable: str = "x",
                 irreducibility_verified: bool = False):
        self.base = base
        self.modulus = modulus
        self.variable = variable
        self.char = base.char
        self.irreducibility_verified = irreducibility_verified
        self._nonresidue = None

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def is_finite(self):
        return self.base.is_finite

    @property
    def order(self):
        q = self.base.order
        return None if q is None else q**self.degree

    # generic payload-polynomial kernel over the base field ----------------

    def _ptrim(self, c: list) -> tuple:
        n = len(c)
        while n and self.base._is_zero(c[n - 1]):
            n -= 1
        return tuple(c[:n])

    def _padd(self, a: tuple, b: tuple) -> tuple:
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, cb in enumerate(b):
            out[i] = self.base._add(out[i], cb)
        return self._ptrim(out)

    def _pmul(self, a: tuple, b: tuple) -> tuple:
        if not a or not b:
            return ()
        k = self.base
        zero = k._from_int(0)
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not k._is_zero(ca):
                for j, cb in enumerate(b):
                    out[i + j] = k._add(out[i + j], k._mul(ca, cb))
        return self._ptrim(out)

    def _prem(self, a: tuple, m: tuple) -> tuple:
        k = self.base
        rem = list(a)
        dm = len(m) - 1
        for i in range(len(rem) - 1, dm - 1, -1):
            c = rem[i]
            if k._is_zero(c):
                continue
            # m is monic, so the leading quotient coefficient is c itself
            for j in range(dm + 1):
                rem[i - dm + j] = k._add(rem[i - dm + j], k._neg(k._mul(c, m[j])))
        return self._ptrim(rem)

    def _pinv(self, a: tuple) -> tuple:
        # extended Euclid against the (irreducible) modulus
        k = self.base
        if not a:
            raise DivisionByZero(f"division by zero in {self}")
        r0, r1 = self.modulus, a
        s0: tuple = ()
        s1: tuple = (k._from_int(1),)
        while r1:
            # divide r0 by r1
            q: list = []
            rem = list(r0)
            lead_inv = k._inv(r1[-1])
            dq = len(rem) - len(r1)
            q = [k._from_int(0)] * (dq + 1) if dq >= 0 else []
            for i in range(dq, -1, -1):
                c = k._mul(rem[i + len(r1) - 1], lead_inv)
                if not k._is_zero(c):
                    q[i] = c
                    for j, cb in enumerate(r1):
                        rem[i + j] = k._add(rem[i + j], k._neg(k._mul(c, cb)))
            r0, r1 = r1, self._ptrim(rem)
            qs = self._pmul(self._ptrim(q), s1)
            s0, s1 = s1, self._padd(s0, tuple(k._neg(c) for c in qs))
        if len(r0) != 1:
            raise DivisionByZero(
                f"{self._render(a)} is not invertible; modulus of {self} is reducible"
            )
        c = k._inv(r0[0])
        return self._prem(tuple(k._mul(c, s) for s in s0), self.modulus)

    # element protocol ------------------------------------------------------

    @property
    def gen(self) -> FieldElement:
        """The residue class of the adjoined variable."""
        k = self.base
        return FieldElement(
            self, self._prem((k._from_int(0), k._from_int(1)), self.modulus)
        )

    def embed(self, a: FieldElement) -> FieldElement:
        if a.field != self.base:
            raise FieldMismatch(f"{a!r} is not an element of {self.base}")
        return FieldElement(self, self._ptrim([a.value]))

    def lift_coeffs(self, a: FieldElement) -> list[FieldElement]:
        """Coefficients of a over the base field, lowest degree first."""
        if a.field != self:
            raise FieldMismatch(f"{a!r} is not an element of {self}")
        return [FieldElement(self.base, c) for c in a.value]

    def _coerce(self, value):
        if isinstance(value, int):
            return self._from_int(value)
        if isinstance(value, (list, tuple)):
            coeffs = [self.base(c).value for c in value]
            return self._prem(self._ptrim(coeffs), self.modulus)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def _from_int(self, n):
        c = self.base._from_int(n)
        return () if self.base._is_zero(c) else (c,)

    def _add(self, a, b):
        return self._padd(a, b)

    def _neg(self, a):
        return tuple(self.base._neg(c) for c in a)

    def _mul(self, a, b):
        return self._prem(self._pmul(a, b), self.modulus)

    def _inv(self, a):
        return self._pinv(a)

    def _is_zero(self, a):
        return not a

    def _pow_int(self, a, n: int):
        out = self._from_int(1)
        while n:
            if n & 1:
                out = self._mul(out, a)
            a = self._mul(a, a)
            n >>= 1
        return out

    def _pth_root(self, a):
        if not self.is_finite:
            raise UnsupportedField(f"p-th roots are not implemented over {self}")
        # x -> x^p permutes a finite field; invert by raising to q/p.
        return self._pow_int(a, self.order // self.char)

    def elements(self):
        """Iterate over all elements (finite base only), in a fixed order."""
        if not self.is_finite:
            raise UnsupportedField(f"{self} is not finite")
        base_payloads = list(self._base_payloads())
        d = self.degree
        idx = [0] * d
        while True:
            yield FieldElement(self, self._ptrim([base_payloads[i] for i in idx]))
            j = 0
            while j < d:
                idx[j] += 1
                if idx[j] < len(base_payloads):
                    break
                idx[j] = 0
                j += 1
            if j == d:
                return

    def _base_payloads(self):
        if isinstance(self.base, PrimeField):
            return [self.base._from_int(i) for i in range(self.base.p)]
        if isinstance(self.base, QuotientField):
            return [e.value for e in self.base.elements()]
        raise UnsupportedField(f"cannot enumerate {self.base}")

    def fixed_nonresidue(self) -> FieldElement:
        """The first nonsquare in enumeration order (finite base only)."""
        if self._nonresidue is None:
            e = (self.order - 1) // 2
            one = self._from_int(1)
            for elt in self.elements():
                if elt.is_zero():
                    continue
                if self._pow_int(elt.value, e) != one:
                    self._nonresidue = elt
                    break
        return self._nonresidue

    def _render(self, a):
        terms = [(i, self.base._render(c)) for i, c in enumerate(a)
                 if not self.base._is_zero(c)]
        return poly_string(terms, self.variable)

    def _key(self, a):
        return (len(a),) + tuple(self.base._key(c) for c in a)

    def __eq__(self, other):
        return (
            isinstance(other, QuotientField)
            and other.base == self.base
            and other.modulus == self.modulus
            and other.variable == self.variable
        )

    def __hash__(self):
        return hash(("quot", self.base, self.modulus, self.variable))

    def __repr__(self):
        m = poly_string(
            [(i, self.base._render(c)) for i, c in enumerate(self.modulus)
             if not self.base._is_zero(c)],
            self.variable,
        )
        return f"{self.base}[{self.variable}]/({m})"


# ---------------------------------------------------------------------------
# construction helpers


def make_field(spec: str) -> Field:
    """Build a field from a spec string: "Q", "Fp:<p>" or "Fpt:<p>"."""
    spec = spec.strip()
    if spec == "Q":
        return RationalField()
    for prefix, cls in (("Fpt:", RationalFunctionField), ("Fp:", PrimeField)):
        if spec.startswith(prefix):
            body = spec[len(prefix):]
            if not body.isdigit():
                raise InvalidFieldSpec(f"bad field spec {spec!r}")
            return cls(int(body))
    raise InvalidFieldSpec(f"bad field spec {spec!r}")


def quotient_field(base: Field, modulus, variable: str | None = None) -> QuotientField:
    """Quotient extension base[x]/(modulus) for a monic nonconstant modulus.

    ``modulus`` is a polynomial over ``base`` (a polyring.Poly or a sequence
    of coefficients, lowest degree first).  Over a finite base the modulus is
    verified irreducible; over Q and F_p(t) it is trusted and the descriptor
    records that no check ran.
    """
    if hasattr(modulus, "coeffs") and hasattr(modulus, "field"):
        if modulus.field != base:
            raise FieldMismatch("modulus is not a polynomial over the base field")
        payload = tuple(c.value for c in modulus.coeffs)
        if variable is None:
            variable = modulus.variable
    else:
        payload = tuple(base(c).value for c in modulus)
        while payload and base._is_zero(payload[-1]):
            payload = payload[:-1]
    if variable is None:
        variable = "x"
    if len(payload) < 2:
        raise ReducibleModulus("modulus must be nonconstant")
    if payload[-1] != base._from_int(1):
        raise ReducibleModulus("modulus must be monic")
    verified = False
    if base.is_finite:
        from . import polyring

        m = polyring.Poly.from_coeffs(
            base, [FieldElement(base, c) for c in payload], variable
        )
        if not polyring.is_irreducible(m):
            raise ReducibleModulus(f"{m} is reducible over {base}")
        verified = True
    return QuotientField(base, payload, variable, irreducibility_verified=verified)


_ARITH_OPS = {"add", "sub", "mul", "div", "neg", "inv", "eq"}


def arith(k: Field, a: FieldElement, b: FieldElement | None, op: str):
    """Field arithmetic dispatch; unary ops ignore ``b``."""
    if op not in _ARITH_OPS:
        raise ValueError(f"unknown operation {op!r}")
    if a.field != k:
        raise FieldMismatch(f"{a!r} does not belong to {k}")
    if op == "neg":
        return -a
    if op == "inv":
        if a.is_zero():
            raise DivisionByZero(f"inverse of zero in {k}")
        return a.inverse()
    if b is None or b.field != k:
        raise FieldMismatch(f"{b!r} does not belong to {k}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    if b.is_zero():
        raise DivisionByZero(f"division by zero in {k}")
    return a / b


# ---------------------------------------------------------------------------
# square classes


@dataclass(frozen=True)
class SquareClass:
    """A square class, held by a representative.

    ``canonical`` is True when the representative is the canonical one for
    its field.  Over Q a representative whose factorization exceeds the
    budget is kept exact but flagged non-canonical; such classes still
    compare correctly through the square-test based machinery.
    """

    rep: FieldElement
    canonical: bool = True

    def __str__(self):
        return str(self.rep)

    def sort_key(self):
        return self.rep.sort_key()


DEFAULT_SQUAREFREE_LIMIT = 10**80


def _rho_factor(n: int, budget: int = 1 << 23) -> int | None:
    """One nontrivial factor of an odd composite n (Brent's rho, batched gcd).

    Returns None once the iteration budget is exhausted, so callers can fail
    loudly instead of spinning on a hard semiprime.
    """
    import math

    for c in range(1, 20):
        y, r, q = 2, 1, 1
        g, ys, x = 1, y, y
        spent = 0
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            spent += r
            r <<= 1
        if g == n:
            g = 1
            for _ in range(1 << 20):
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                if g != 1:
                    break
        if 1 < g < n:
            return g
        budget -= spent
        if budget <= 0:
            return None
    return None


def factor_int(n: int, limit: int = DEFAULT_SQUAREFREE_LIMIT) -> dict[int, int]:
    """Exact prime factorization of |n| > 0; refuses inputs above the bound."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    if n > limit:
        raise SquareClassOverflow(
            f"{n} exceeds the integer factorization bound {limit}"
        )
    out: dict[int, int] = {}
    for d in range(2, 10_000):
        if d * d > n:
            break
        while n % d == 0:
            n //= d
            out[d] = out.get(d, 0) + 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = _isqrt_if_square(m)
        if r is not None:
            stack.append(r)
            stack.append(r)
            continue
        d = _rho_factor(m)
        if d is None:
            raise SquareClassOverflow(
                f"failed to factor {m} within the iteration budget"
            )
        stack.append(d)
        stack.append(m // d)
    return out


def _isqrt_if_square(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def _squarefree_int(n: int, limit: int) -> int:
    """Signed squarefree part of n."""
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factor_int(n, limit).items():
        if e % 2:
            out *= p
    return out


def square_class_rep(a: FieldElement, *, limit: int | None = None) -> SquareClass:
    """Canonical representative of the square class of a nonzero element.

    Q: the signed squarefree part of numerator*denominator.
    F_p: 1 or the smallest positive nonresidue.
    F_p(t): (canonical unit class) * (product of the irreducible factors of
    odd exponent), computed from a characteristic-aware squarefree splitting.
    Finite quotient extensions: 1 or a fixed nonresidue.
    """
    if a.is_zero():
        raise ZeroElement("the zero element has no square class")
    k = a.field
    if isinstance(k, RationalField):
        frac = a.value
        bound = DEFAULT_SQUAREFREE_LIMIT if limit is None else limit
        rep = _squarefree_int(frac.numerator * frac.denominator, bound)
        return SquareClass(k(rep))
    if isinstance(k, PrimeField):
        if pow(a.value, (k.p - 1) // 2, k.p) == 1:
            return SquareClass(k.one)
        return SquareClass(k(k.smallest_nonresidue()))
    if isinstance(k, RationalFunctionField):
        return SquareClass(_fpt_square_class(k, a))
    if isinstance(k, QuotientField) and k.is_finite:
        e = (k.order - 1) // 2
        if k._pow_int(a.value, e) == k._from_int(1):
            return SquareClass(k.one)
        return SquareClass(k.fixed_nonresidue())
    raise UnsupportedField(f"square classes are not implemented over {k}")


def _fpt_square_class(k: RationalFunctionField, a: FieldElement) -> FieldElement:
    from . import polyring

    p = k.p
    num, den = a.value
    g = _zx_mul(num, den, p)  # same class as num/den
    base = PrimeField(p)
    unit = g[-1]
    gmonic = _zx_scale(g, pow(unit, -1, p), p)
    u0 = 1 if pow(unit, (p - 1) // 2, p) == 1 else base.smallest_nonresidue()
    poly = polyring.Poly.from_coeffs(
        base, [FieldElement(base, c) for c in gmonic], k.variable
    )
    odd = (1,)
    for part in polyring.squarefree_split(poly).parts:
        if part.multiplicity % 2:
            odd = _zx_mul(odd, tuple(c.value for c in part.poly.coeffs), p)
    return FieldElement(k, k._make(_zx_scale(odd, u0, p), (1,)))


def square_class_best_effort(a: FieldElement, *, limit: int | None = None) -> SquareClass:
    """Canonical representative when factoring succeeds, else a reduced one.

    The fallback strips small primes and the perfect-square part, keeps the
    result exact, and marks the class non-canonical.
    """
    try:
        return square_class_rep(a, limit=limit)
    except SquareClassOverflow:
        pass
    import math

    frac = a.value
    n = frac.numerator * frac.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for d in range(2, 100_000):
        if d * d > n:
            break
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
    r = math.isqrt(n)
    if r * r == n:
        n = 1
    return SquareClass(a.field(sign * out * n), canonical=False)


def square_class_mul(a: SquareClass, b: SquareClass) -> SquareClass:
    """Product of square classes, computed without refactoring.

    Canonical representatives are squarefree up to a unit, so the class of
    the product is obtained by cancelling the gcd twice; over Q and F_p(t)
    this avoids factoring the (possibly huge) plain product.
    """
    import math

    k = a.rep.field
    if b.rep.field != k:
        raise FieldMismatch("square classes over different fields")
    if isinstance(k, RationalField):
        ai, bi = int(a.rep.value), int(b.rep.value)
        g = math.gcd(abs(ai), abs(bi))
        return SquareClass(k((ai // g) * (bi // g)),
                           canonical=a.canonical and b.canonical)
    if isinstance(k, RationalFunctionField):
        p = k.p
        na, nb = a.rep.value[0], b.rep.value[0]
        g = _zx_gcd(na, nb, p)
        qa = _zx_divmod(na, g, p)[0]
        qb = _zx_divmod(nb, g, p)[0]
        prod = _zx_mul(qa, qb, p)
        u0 = 1 if pow(prod[-1], (p - 1) // 2, p) == 1 else PrimeField(p).smallest_nonresidue()
        monic = _zx_scale(prod, pow(prod[-1], -1, p), p)
        return SquareClass(FieldElement(k, k._make(_zx_scale(monic, u0, p), (1,))))
    return square_class_rep(a.rep * b.rep)


def square_class_neg(a: SquareClass) -> SquareClass:
    """Class of the negation of a representative."""
    k = a.rep.field
    if isinstance(k, RationalField):
        return SquareClass(-a.rep, canonical=a.canonical)
    return square_class_rep(-a.rep)


def is_square(a: FieldElement) -> bool:
    """Whether a nonzero element is a square, via its canonical class."""
    return square_class_rep(a).rep == a.field.one
