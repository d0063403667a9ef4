"""Global and local quadratic degrees of univariate rational germs.

Two independent constructions are implemented.  The Bezoutian of a pair
(f1, f2) represents the global degree of the map f1/f2; the duality form on
the local algebra k[x]/(pi^m) represents the local degree of a germ at the
cluster cut out by pi.  The two are tied together by the invariant that the
global class equals the sum of the local classes over all zero clusters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bilinear import GramMatrix, GWClass, gw_class_of, gw_equal
from .field_tower import A1HurwitzError, FieldElement
from .polyring import Poly, RationalFunc, divrem, gcd, valuation

__all__ = [
    "BothZero",
    "DegreeZero",
    "ConstantMap",
    "DegenerateBezoutian",
    "SingularTheta",
    "DenominatorVanishes",
    "NotAZero",
    "MultiplicityMismatch",
    "SSContext",
    "bezoutian",
    "global_degree",
    "scheja_storch_form",
    "local_degree",
]


class BothZero(A1HurwitzError):
    pass


class DegreeZero(A1HurwitzError):
    pass


class ConstantMap(A1HurwitzError):
    pass


class DegenerateBezoutian(A1HurwitzError):
    pass


class SingularTheta(A1HurwitzError):
    pass


class DenominatorVanishes(A1HurwitzError):
    pass


class NotAZero(A1HurwitzError):
    pass


class MultiplicityMismatch(A1HurwitzError):
    pass


def bezoutian(f1: Poly, f2: Poly) -> GramMatrix:
    """Symmetric matrix of the divided difference of the pair (f1, f2).

    With n = max(deg f1, deg f2), expands
    (f1(x)f2(y) - f1(y)f2(x)) / (x - y) = sum c_ij x^(i-1) y^(j-1)
    and returns the n x n matrix [c_ij].  Nondegenerate iff gcd(f1, f2) = 1.
    """
    f1._check(f2)
    if f1.is_zero() and f2.is_zero():
        raise BothZero("Bezoutian of the zero pair")
    field = f1.field
    n = int(max(f1.degree, f2.degree))
    if n < 1:
        raise DegreeZero("Bezoutian needs a nonconstant entry")
    a = [f1.coeff(i) for i in range(n + 1)]
    b = [f2.coeff(i) for i in range(n + 1)]
    zero = field.zero
    C = [[zero] * n for _ in range(n)]
    # (x^l y^m - x^m y^l)/(x - y) = x^m y^m * sum_{i+j=l-m-1} x^i y^j  (l > m)
    for l in range(n + 1):
        for m in range(l):
            c = a[l] * b[m] - a[m] * b[l]
            if c.is_zero():
                continue
            for i in range(l - m):
                j = l - m - 1 - i
                C[m + i][m + j] = C[m + i][m + j] + c
    return GramMatrix(field, tuple(tuple(row) for row in C))


def global_degree(f: RationalFunc) -> GWClass:
    """Class of the Bezoutian of (num, den); rank = max(deg num, deg den)."""
    if f.is_constant():
        raise ConstantMap("the degree of a constant map is not defined")
    diag, _ = _nondegenerate_diag(bezoutian(f.num, f.den))
    from .bilinear import gw_normalize

    return gw_normalize(f.field, diag)


def _nondegenerate_diag(G: GramMatrix):
    from .bilinear import diagonalize

    diag, P = diagonalize(G)
    if any(d.is_zero() for d in diag):
        raise DegenerateBezoutian(
            "degenerate form: the pair has a common factor upstream"
        )
    return diag, P


@dataclass(frozen=True)
class SSContext:
    """A polynomial germ model together with the modulus cutting the cluster.

    The quotient k[x]/(modulus) carries the duality form of the germ; the
    monomials 1, x, ..., x^(d-1) are the working basis.
    """

    germ: Poly
    modulus: Poly

    def __post_init__(self):
        self.germ._check(self.modulus)
        if self.modulus.degree < 1:
            raise DegreeZero("modulus must be nonconstant")
        if not self.modulus.is_monic():
            raise ValueError("modulus must be monic")


def _power_table(modulus: Poly, max_exp: int) -> list[list[FieldElement]]:
    """x^e mod modulus as dense length-d coefficient rows, e = 0..max_exp."""
    field = modulus.field
    d = int(modulus.degree)
    zero = field.zero
    cur = [zero] * d
    cur[0] = field.one
    table = [cur[:]]
    mod = [modulus.coeff(i) for i in range(d)]
    for _ in range(max_exp):
        lead = cur[d - 1]
        nxt = [zero] + cur[: d - 1]
        if not lead.is_zero():
            for j in range(d):
                nxt[j] = nxt[j] - lead * mod[j]
        cur = nxt
        table.append(cur[:])
    return table


def _solve(matrix: list[list[FieldElement]], rhs: list[FieldElement]):
    """Exact Gaussian elimination; raises SingularTheta when singular."""
    n = len(matrix)
    M = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if not M[r][col].is_zero()), None
        )
        if pivot is None:
            raise SingularTheta("duality pairing is singular")
        M[col], M[pivot] = M[pivot], M[col]
        inv = M[col][col].inverse()
        M[col] = [c * inv for c in M[col]]
        for r in range(n):
            if r != col and not M[r][col].is_zero():
                c = M[r][col]
                M[r] = [a - c * b for a, b in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def scheja_storch_form(ctx: SSContext) -> GramMatrix:
    """Duality form of a germ on the algebra k[x]/(modulus).

    Steps: take the divided difference a(x,y) = (F(x) - F(y))/(x - y), reduce
    it modulo (modulus(x), modulus(y)) to a d x d coefficient tensor, solve
    for the functional eta dual to 1 under that tensor, and return the Gram
    matrix eta(x^i * x^j) on the monomial basis.
    """
    F, modulus = ctx.germ, ctx.modulus
    field = F.field
    d = int(modulus.degree)
    degF = int(F.degree) if not F.is_zero() else 0
    table = _power_table(modulus, max(degF, 2 * d - 2))
    zero = field.zero
    # divided difference of x^l is sum_{i+j=l-1} x^i y^j, so the raw tensor
    # is the Hankel matrix C[i][j] = F_(i+j+1)
    m = max(degF, 1)
    # reduce rows:   R[a][j] = sum_i table[i][a] * C[i][j]
    R = [[zero] * m for _ in range(d)]
    for i in range(m):
        row_i = table[i]
        for j in range(m):
            c = F.coeff(i + j + 1)
            if c.is_zero():
                continue
            for a_idx in range(d):
                t = row_i[a_idx]
                if not t.is_zero():
                    R[a_idx][j] = R[a_idx][j] + t * c
    # reduce columns: delta[a][b] = sum_j R[a][j] * table[j][b]
    delta = [[zero] * d for _ in range(d)]
    for j in range(m):
        col = table[j]
        for a_idx in range(d):
            c = R[a_idx][j]
            if c.is_zero():
                continue
            for b_idx in range(d):
                t = col[b_idx]
                if not t.is_zero():
                    delta[a_idx][b_idx] = delta[a_idx][b_idx] + c * t
    # eta is the functional with Theta(eta) = 1, Theta(mu)_b = sum_a delta[a][b] mu_a
    rhs = [zero] * d
    rhs[0] = field.one
    eta = _solve([[delta[a][b] for a in range(d)] for b in range(d)], rhs)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = zero
            for l, t in enumerate(table[i + j]):
                if not t.is_zero():
                    acc = acc + t * eta[l]
            row.append(acc)
        rows.append(tuple(row))
    return GramMatrix(field, tuple(rows))


def local_degree(f: RationalFunc, pi: Poly, m: int) -> GWClass:
    """Local degree of the germ of f at the cluster cut out by pi^m.

    Requires pi monic, pi^m the exact pi-power in num(f), and den(f) a unit
    at the cluster.  The germ is modelled by num * den (the actual germ
    num/den times the square unit den^2, which does not move the class but
    avoids polynomial inversion) truncated modulo pi^(2m+1); the class is
    recomputed at truncation 2m+2 and the two must agree (a per-call guard
    on the truncation order).
    """
    if m == 0:
        raise NotAZero("multiplicity zero: not a zero of the section")
    if m < 0:
        raise NotAZero("multiplicity must be positive")
    pi._check(f.num)
    if pi.degree < 1:
        raise DegreeZero("pi must be nonconstant")
    if not pi.is_monic():
        raise ValueError("pi must be monic")
    if f.is_zero():
        raise NotAZero("the zero germ has no local degree")
    if gcd(f.den, pi).degree != 0:
        raise DenominatorVanishes(f"denominator vanishes along {pi}")
    v = valuation(f.num, pi)
    if v == 0:
        raise NotAZero(f"{pi} does not divide the numerator")
    if v != m:
        raise MultiplicityMismatch(
            f"stated multiplicity {m} but exact order is {v}"
        )
    modulus = pi**m

    def truncated_form(exponent: int) -> GramMatrix:
        big = pi**exponent
        germ = divrem(f.num * f.den, big)[1]
        return scheja_storch_form(SSContext(germ, modulus))

    form = truncated_form(2 * m + 1)
    recheck = truncated_form(2 * m + 2)
    if form != recheck and not gw_equal(gw_class_of(form), gw_class_of(recheck)):
        raise A1HurwitzError(
            "truncation instability: classes at exponents 2m+1 and 2m+2 differ"
        )
    return gw_class_of(form)
