"""Critical loci of rational self-maps of the projective line and the
quadratic-form-valued ramification verifier.

Atlas conventions.  Both the source and the target line carry the two-chart
atlas glued by the minus-reciprocal: the source coordinates are y and
v = -1/y, the target coordinates are x and z = -1/x.  Both transitions have
square derivative (dy = dv/v^2), so the scalar expressions of the
differential section read off in any pair of charts differ by square units
on overlaps and all local classes are well defined.  In chart pairs the
section of the differential is a single rational function:

    (y,x): W/D^2    (y,z): W/N^2      with W = N'D - ND', f = N/D,

and the same formulas in v after substituting y = -1/v.  The point at
infinity is always handled in the v chart; the target chart is chosen per
cluster so that the denominator of the expression is a unit there.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .bilinear import GWClass, gw_equal, gw_normalize, hyperbolic, signature, zero_class
from .degrees import ConstantMap, local_degree
from .field_tower import A1HurwitzError, Field, FieldElement, RationalField
from .polyring import (
    Poly,
    RationalFunc,
    divrem,
    gcd,
    poly,
    squarefree_split,
    valuation,
)

__all__ = [
    "NonSeparable",
    "NonMonic",
    "DegreeTooSmall",
    "ZeroUnit",
    "Chart",
    "Y_TO_X",
    "Y_TO_Z",
    "V_TO_X",
    "V_TO_Z",
    "ZeroCluster",
    "RHReport",
    "RealCriticalReport",
    "VirtualHyperbolic",
    "euler_char_A1",
    "wronskian",
    "flip_chart",
    "df_expression",
    "critical_locus",
    "cluster_indices",
    "rh_verify",
    "tame_branch_index",
    "real_critical_report",
]


class NonSeparable(A1HurwitzError):
    pass


class NonMonic(A1HurwitzError):
    pass


class DegreeTooSmall(A1HurwitzError):
    pass


class ZeroUnit(A1HurwitzError):
    pass


@dataclass(frozen=True)
class Chart:
    """A source/target chart pair for reading df as a scalar function."""

    source: str  # "y" (the input coordinate) or "v" (its minus-reciprocal)
    target: str  # "x" (the image coordinate) or "z"

    def __str__(self):
        return f"({self.source},{self.target})"


Y_TO_X = Chart("y", "x")
Y_TO_Z = Chart("y", "z")
V_TO_X = Chart("v", "x")
V_TO_Z = Chart("v", "z")


@dataclass(frozen=True)
class ZeroCluster:
    """One coprime cluster of the critical locus."""

    chart: Chart
    pi: Poly
    multiplicity: int
    at_infinity: bool
    residue_degree: int
    local_index: GWClass | None = None


@dataclass(frozen=True)
class RHReport:
    """Full verification record for one map."""

    map: RationalFunc
    field: Field
    degree: int
    separable: bool
    clusters: tuple[ZeroCluster, ...]
    total: GWClass
    expected: GWClass
    verdict: bool
    rank_check: tuple[int, int, bool]
    signature_check: tuple[int, int, bool] | None


@dataclass(frozen=True)
class VirtualHyperbolic:
    """A negative multiple of h; report-only, no form realizes it."""

    field: Field
    count: int

    def __str__(self):
        return f"{self.count}h"


def euler_char_A1(field: Field, genus: int) -> GWClass | VirtualHyperbolic:
    """(1 - genus) copies of h; virtual (report-only) for genus > 1."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    n = 1 - genus
    if n >= 0:
        return hyperbolic(field, n)
    return VirtualHyperbolic(field, n)


def wronskian(f: RationalFunc) -> Poly:
    """W = N'D - ND'; one numerator governing the critical locus of a chart."""
    return f.num.derivative() * f.den - f.num * f.den.derivative()


def flip_chart(f: RationalFunc) -> RationalFunc:
    """The map read in the coordinate v = -1/y, i.e. f(-1/v), reduced."""
    field = f.field
    d = int(f.degree)

    def rev(p: Poly) -> Poly:
        coeffs = [field.zero] * (d + 1)
        for i, c in enumerate(p.coeffs):
            coeffs[d - i] = c if i % 2 == 0 else -c
        return Poly.from_coeffs(field, coeffs, "v")

    return RationalFunc(rev(f.num), rev(f.den))


def df_expression(f: RationalFunc, chart: Chart) -> RationalFunc:
    """The differential section of f read as a scalar in the given charts.

    On overlaps the four expressions differ by nonzero square units, so each
    cluster may be fed to the local degree through any chart pair whose
    denominator is a unit there.
    """
    if f.is_constant():
        raise ConstantMap("the differential of a constant map vanishes")
    g = f if chart.source == "y" else flip_chart(f)
    W = wronskian(g)
    den = g.den if chart.target == "x" else g.num
    return RationalFunc(W, den * den)


def _split_support(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Factor a = u*v with every factor of u dividing b and gcd(v, b) = 1."""
    one = poly(a.field, [1], a.variable)
    u, v = one, a
    g = gcd(v, b)
    while g.degree >= 1:
        u = u * g
        v = divrem(v, g)[0]
        g = gcd(v, b)
    return u, v


def critical_locus(f: RationalFunc) -> list[ZeroCluster]:
    """Coprime clusters of the zero locus of df, including infinity.

    Affine clusters come from the Wronskian on the input chart.  A cluster
    is split into the part supported on the denominator (read in the (y,z)
    charts, where N^2 is a unit) and the complementary part (read in (y,x),
    where D^2 is a unit).  The point at infinity is inspected on the v chart
    and contributes a cluster exactly when v divides the flipped Wronskian.
    """
    if f.is_constant():
        raise ConstantMap("constant maps have no critical locus")
    W = wronskian(f)
    if W.is_zero():
        raise NonSeparable("df vanishes identically: the map is not separable")
    clusters = []
    for part in squarefree_split(W).parts:
        at_poles, elsewhere = _split_support(part.poly, f.den)
        for pi, target in ((at_poles, "z"), (elsewhere, "x")):
            if pi.degree >= 1:
                clusters.append(
                    ZeroCluster(Chart("y", target), pi, part.multiplicity,
                                False, int(pi.degree))
                )
    g = flip_chart(f)
    Wg = wronskian(g)
    assert not Wg.is_zero(), "separability is chart independent"
    v = poly(f.field, [0, 1], "v")
    k = valuation(Wg, v)
    if k >= 1:
        target = "z" if divrem(g.den, v)[1].is_zero() else "x"
        clusters.append(ZeroCluster(Chart("v", target), v, k, True, 1))
    return clusters


def cluster_indices(
    f: RationalFunc, *, unit: FieldElement | None = None
) -> list[ZeroCluster]:
    """Critical clusters with their local indices computed.

    ``unit`` rescales every chart expression by a fixed nonzero constant;
    individual indices may move but their sum must not (trivialization
    independence of the total).
    """
    locus = critical_locus(f)
    sources = {"y": f}
    exprs: dict[Chart, RationalFunc] = {}
    out = []
    for cl in locus:
        if cl.chart not in exprs:
            if cl.chart.source not in sources:
                sources[cl.chart.source] = flip_chart(f)
            g = sources[cl.chart.source]
            W = wronskian(g)
            den = g.den if cl.chart.target == "x" else g.num
            expr = RationalFunc(W, den * den)
            if unit is not None:
                expr = expr.scale(unit)
            exprs[cl.chart] = expr
        idx = local_degree(exprs[cl.chart], cl.pi, cl.multiplicity)
        out.append(dataclasses.replace(cl, local_index=idx))
    return out


def rh_verify(f: RationalFunc) -> RHReport:
    """Verify that the local indices of df sum to (deg f - 1) copies of h."""
    clusters = cluster_indices(f)
    field = f.field
    d = int(f.degree)
    total = zero_class(field)
    for cl in clusters:
        total = total + cl.local_index
    expected = hyperbolic(field, d - 1)
    verdict = gw_equal(total, expected)
    rank_check = (total.rank, 2 * d - 2, total.rank == 2 * d - 2)
    sig_check = None
    if isinstance(field, RationalField):
        s = signature(total)
        sig_check = (s, 0, s == 0)
    return RHReport(
        map=f,
        field=field,
        degree=d,
        separable=True,
        clusters=tuple(clusters),
        total=total,
        expected=expected,
        verdict=verdict,
        rank_check=rank_check,
        signature_check=sig_check,
    )


def tame_branch_index(a: FieldElement, e: int) -> GWClass:
    """<a*e> * (sum of <(-1)^i> for i = 0..e-2); the tame local index.

    Valid when e is prime to the characteristic; e = 1 gives the zero class.
    """
    if a.is_zero():
        raise ZeroUnit("the leading unit must be nonzero")
    if e < 1:
        raise ValueError("ramification index must be positive")
    if e == 1:
        return zero_class(a.field)
    ae = a * a.field.from_int(e)
    if ae.is_zero():
        raise ZeroUnit("ramification index divisible by the characteristic")
    field = a.field
    diag = [ae if i % 2 == 0 else -ae for i in range(e - 1)]
    return gw_normalize(field, diag)


@dataclass(frozen=True)
class RealCriticalReport:
    """Signature count of the affine critical locus against the parity rule."""

    signature_finite: int
    parity_expected: int
    passed: bool
    total_affine: GWClass


def real_critical_report(f: Poly) -> RealCriticalReport:
    """Check the real count for a monic rational polynomial.

    The signature of the summed affine local indices counts nondegenerate
    minima with +1 and maxima with -1; it must equal 0 for odd degree and
    +1 for even degree.
    """
    if not isinstance(f.field, RationalField):
        from .bilinear import WrongField

        raise WrongField("the real critical count is defined over Q")
    if f.is_zero() or f.degree < 2:
        raise DegreeTooSmall("need a polynomial of degree at least 2")
    if not f.is_monic():
        raise NonMonic("the polynomial must be monic")
    fmap = RationalFunc.from_poly(f)
    total = zero_class(f.field)
    for cl in cluster_indices(fmap):
        if not cl.at_infinity:
            total = total + cl.local_index
    sig = signature(total)
    expected = 0 if int(f.degree) % 2 else 1
    return RealCriticalReport(sig, expected, sig == expected, total)
