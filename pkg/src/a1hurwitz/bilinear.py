"""Symmetric bilinear forms and their Grothendieck-Witt classes.

A class is stored in the effective normal form  n*h + <a_1> + ... + <a_r>
with each a_i a canonical square-class representative and no pair {a, -a}
left in the residual part.  Equality of classes is decided per field:

* F_p and finite extensions: rank and determinant class.
* Q: rank, signature, determinant class and Hasse invariants at the finite
  places (complete by the Hasse-Minkowski theorem).
* F_p(t): rank, the second residues at all finite places in the support,
  and both residues at the infinite place with uniformizer 1/t.  This rests
  on the split residue exact sequence for F_p(t); the splitting convention
  (fixed monic uniformizers, 1/t at infinity) is pinned here and stress
  tested rather than proven.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import polyring
from .field_tower import (
    A1HurwitzError,
    Field,
    FieldElement,
    FieldMismatch,
    PrimeField,
    QuotientField,
    RationalField,
    RationalFunctionField,
    SquareClass,
    square_class_best_effort,
    square_class_mul,
    square_class_neg,
    square_class_rep,
)
from .field_tower import _zx_divmod, _zx_scale  # dense F_p[t] kernel
from .polyring import Poly

__all__ = [
    "CharacteristicTwo",
    "ZeroDiagonalEntry",
    "WrongField",
    "NotIrreducible",
    "InseparableModulus",
    "GramMatrix",
    "GWClass",
    "WittFingerprint",
    "INFINITY",
    "gram",
    "diagonalize",
    "gw_normalize",
    "gw_class_of",
    "gw_ring_op",
    "zero_class",
    "hyperbolic",
    "rank_one",
    "signature",
    "second_residue",
    "gw_equal",
    "fingerprint",
    "hilbert_symbol",
    "trace_transfer",
]


class CharacteristicTwo(A1HurwitzError):
    pass


class ZeroDiagonalEntry(A1HurwitzError):
    pass


class WrongField(A1HurwitzError):
    pass


class NotIrreducible(A1HurwitzError):
    pass


class InseparableModulus(A1HurwitzError):
    pass


class _Infinity:
    def __repr__(self):
        return "infinity"


INFINITY = _Infinity()


# ---------------------------------------------------------------------------
# Gram matrices and congruence diagonalization


class GramMatrix:
    """A symmetric matrix of field elements."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries: tuple[tuple[FieldElement, ...], ...]):
        n = len(entries)
        for row in entries:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if entries[i][j] != entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.field = field
        self.entries = entries

    @classmethod
    def from_rows(cls, field: Field, rows) -> GramMatrix:
        return cls(field, tuple(tuple(field(c) for c in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, GramMatrix):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash((self.field, self.entries))

    def render_rows(self) -> list[list[str]]:
        return [[str(c) for c in row] for row in self.entries]

    def __repr__(self):
        rows = "; ".join(", ".join(str(c) for c in row) for row in self.entries)
        return f"GramMatrix[{rows}]"


def gram(field: Field, rows) -> GramMatrix:
    return GramMatrix.from_rows(field, rows)


def diagonalize(
    G: GramMatrix,
) -> tuple[list[FieldElement], tuple[tuple[FieldElement, ...], ...]]:
    """Congruence diagonalization: returns (diag, P) with P^T G P = diag(diag).

    Zero pivots with a nonzero off-diagonal partner are repaired by adding
    the partner row and column (diagonal entry becomes 2*G[i][j], nonzero in
    odd characteristic).  Zero rows are left in place, so zeros in the output
    signal rank deficiency.
    """
    if G.field.char == 2:
        raise CharacteristicTwo("diagonalization needs 2 invertible")
    field = G.field
    n = G.n
    M = [list(row) for row in G.entries]
    P = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]

    def add_col(dst, src, c):
        # congruence G <- E^T G E and P <- P E for E = I + c*e_{src,dst}
        for r in range(n):
            M[r][dst] = M[r][dst] + c * M[r][src]
        for r in range(n):
            M[dst][r] = M[dst][r] + c * M[src][r]
        for r in range(n):
            P[r][dst] = P[r][dst] + c * P[r][src]

    def swap(i, j):
        for r in range(n):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        M[i], M[j] = M[j], M[i]
        for r in range(n):
            P[r][i], P[r][j] = P[r][j], P[r][i]

    for i in range(n):
        if M[i][i].is_zero():
            j = next(
                (j for j in range(i + 1, n) if not M[j][j].is_zero()), None
            )
            if j is not None:
                swap(i, j)
            else:
                j = next(
                    (j for j in range(i + 1, n) if not M[i][j].is_zero()), None
                )
                if j is None:
                    continue  # zero row: contributes a zero diagonal entry
                add_col(i, j, field.one)
        pivot = M[i][i]
        for j in range(i + 1, n):
            if not M[j][i].is_zero():
                add_col(j, i, -(M[j][i] / pivot))
    diag = [M[i][i] for i in range(n)]
    return diag, tuple(tuple(row) for row in P)


# ---------------------------------------------------------------------------
# Grothendieck-Witt classes


@dataclass(frozen=True)
class GWClass:
    """n*h + sum of rank-one classes, in normal form."""

    field: Field
    hyperbolic: int
    residual: tuple[SquareClass, ...]

    @property
    def rank(self) -> int:
        return 2 * self.hyperbolic + len(self.residual)

    def is_zero(self) -> bool:
        return self.hyperbolic == 0 and not self.residual

    def __add__(self, other: GWClass) -> GWClass:
        return gw_ring_op(self, other, "add")

    def tensor(self, other: GWClass) -> GWClass:
        return gw_ring_op(self, other, "tensor")

    def __str__(self):
        pieces = []
        if self.hyperbolic:
            pieces.append("h" if self.hyperbolic == 1 else f"{self.hyperbolic}h")
        pieces.extend(f"<{c}>" for c in self.residual)
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self):
        return f"GWClass({self} over {self.field})"


def zero_class(field: Field) -> GWClass:
    return GWClass(field, 0, ())


def hyperbolic(field: Field, n: int = 1) -> GWClass:
    if n < 0:
        raise ValueError("effective classes only")
    return GWClass(field, n, ())


def rank_one(a: FieldElement) -> GWClass:
    return GWClass(a.field, 0, (square_class_rep(a),))


def _renormalize(field: Field, hyp: int, reps: list[SquareClass]) -> GWClass:
    # greedy removal of {<a>, <-a>} pairs (which may be equal classes when
    # -1 is a square)
    if isinstance(field, RationalField):
        h2, residual = _normalize_q(field, [r.rep.value for r in reps])
        return GWClass(field, hyp + h2, residual)
    buckets: dict = {}
    for r in reps:
        buckets.setdefault(r.sort_key(), [r, 0])[1] += 1
    for key in sorted(buckets):
        rep, cnt = buckets[key]
        if cnt == 0:
            continue
        negkey = square_class_neg(rep).sort_key()
        if negkey == key:
            hyp += cnt // 2
            buckets[key][1] = cnt % 2
        elif negkey in buckets and buckets[negkey][1] > 0:
            take = min(cnt, buckets[negkey][1])
            hyp += take
            buckets[key][1] -= take
            buckets[negkey][1] -= take
    residual = []
    for key in sorted(buckets):
        rep, cnt = buckets[key]
        residual.extend([rep] * cnt)
    return GWClass(field, hyp, tuple(residual))


def _is_square_int(n: int) -> bool:
    import math

    if n <= 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _pair_cancel_ints(ints: list[int]) -> tuple[int, list[int]]:
    """Extract {a, -a}-pairs by exact square tests, pairing big entries first."""
    ints = sorted(ints, key=lambda v: (abs(v).bit_length(), abs(v), v < 0),
                  reverse=True)
    hyp = 0
    out: list[int] = []
    while ints:
        v = ints.pop(0)
        mate = next((i for i, w in enumerate(ints) if _is_square_int(-v * w)),
                    None)
        if mate is not None:
            ints.pop(mate)
            hyp += 1
        else:
            out.append(v)
    return hyp, out


def _normalize_q(field: Field, values) -> tuple[int, tuple[SquareClass, ...]]:
    """Hyperbolic count and surviving classes of a diagonal form over Q.

    Representative sizes are first shrunk by exact pair reduction, then
    {a, -a}-pairs are cancelled by square tests (no factoring), and only the
    survivors are canonicalized, best effort.
    """
    ints = _shrink_rational_diag(list(values))
    hyp, left = _pair_cancel_ints(ints)
    survivors = [square_class_best_effort(field(v)) for v in left]
    survivors.sort(key=lambda s: s.sort_key())
    return hyp, tuple(survivors)


def _reduce_pair(a: int, b: int) -> tuple[int, int]:
    """Replace <a> + <b> by an equal pair with smaller entries.

    Gauss-style descent on the binary form diag(a, b): repeatedly move the
    larger basis vector toward an integer point near a root (indefinite) or
    the vertex (definite) of the value quadratic.  Every move is an exact
    integer congruence, so the summed class is preserved; an isotropic
    vector collapses the pair to the hyperbolic plane.
    """
    import math

    m00, m01, m11 = a, 0, b
    best = (abs(a).bit_length() + abs(b).bit_length(), a, b)
    for _ in range(96):
        if m00 == 0 or m11 == 0:
            return (1, -1) if m01 or (m00 or m11) else (0, 0)
        if abs(m00) < abs(m11):
            m00, m11 = m11, m00
        # g(t) = q(b0 + t*b1) = m00 + 2*t*m01 + t^2*m11
        disc = m01 * m01 - m00 * m11
        cands = set()
        if disc >= 0:
            r = math.isqrt(disc)
            for s in (r, -r):
                t0 = (s - m01) // m11
                cands.update((t0, t0 + 1))
        t0 = (-m01) // m11
        cands.update((t0, t0 + 1))
        cands.discard(0)
        t_best, val_best = None, abs(m00)
        for t in cands:
            v = abs(m00 + 2 * t * m01 + t * t * m11)
            if v < val_best:
                t_best, val_best = t, v
        if t_best is None:
            break
        m00 = m00 + 2 * t_best * m01 + t_best * t_best * m11
        m01 = m01 + t_best * m11
        if m00 == 0:
            return (1, -1)
        cand0, cand1 = _complete_square(m00, m01, m11)
        if cand0 == 0 or cand1 == 0:
            return (1, -1)
        sz = abs(cand0).bit_length() + abs(cand1).bit_length()
        if sz < best[0]:
            best = (sz, cand0, cand1)
    return best[1], best[2]


def _complete_square(m00: int, m01: int, m11: int) -> tuple[int, int]:
    """Diagonal classes of the binary integer form [[m00, m01], [m01, m11]]."""
    if m01 == 0:
        return m00, m11
    p = m00 if (m00 != 0 and (m11 == 0 or abs(m00) <= abs(m11))) else m11
    if p == 0:
        return (1, -1)
    det = m00 * m11 - m01 * m01
    if det == 0:
        raise ZeroDiagonalEntry("degenerate binary block")
    return p, p * det  # <det/p> = <p*det> up to squares


def _strip_square_part(n: int) -> int:
    """Remove squares of small primes and the perfect-square part (cheap)."""
    import math

    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for d in range(2, 10_000):
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
    return sign * out * n


def _shrink_rational_diag(values: list, threshold_bits: int = 64) -> list:
    """Rewrite a diagonal form over Q with smaller entries, class preserved.

    Entries are cleared to integers (num*den) and repeatedly replaced two at
    a time via exact binary-form reduction.  The multiset of square classes
    summed is invariant at every step; only representative sizes change.
    """
    import math

    ints = [_strip_square_part(v.numerator * v.denominator) for v in values]
    for _ in range(40):
        if not ints:
            break
        order = sorted(range(len(ints)), key=lambda i: abs(ints[i]).bit_length(),
                       reverse=True)
        if abs(ints[order[0]]).bit_length() <= threshold_bits:
            break
        changed = False
        for ii in range(len(order)):
            i = order[ii]
            for jj in range(len(order)):
                if ii == jj:
                    continue
                j = order[jj]
                bi = abs(ints[i]).bit_length()
                bj = abs(ints[j]).bit_length()
                if bi <= threshold_bits and bj <= threshold_bits:
                    continue
                r, s = _reduce_pair(ints[i], ints[j])
                r, s = _strip_square_part(r), _strip_square_part(s)
                if max(abs(r).bit_length(), abs(s).bit_length()) < max(bi, bj) or (
                    max(abs(r).bit_length(), abs(s).bit_length()) == max(bi, bj)
                    and abs(r).bit_length() + abs(s).bit_length() < bi + bj
                ):
                    ints[i], ints[j] = r, s
                    changed = True
        if not changed:
            break
    return ints


def gw_normalize(field: Field, diag) -> GWClass:
    """Normal form of the diagonal form given by the (nonzero) entries."""
    entries = []
    for e in diag:
        e = field(e)
        if e.is_zero():
            raise ZeroDiagonalEntry("degenerate form: zero diagonal entry")
        entries.append(e)
    if isinstance(field, RationalField):
        hyp, residual = _normalize_q(field, [e.value for e in entries])
        return GWClass(field, hyp, residual)
    reps = [square_class_rep(e) for e in entries]
    return _renormalize(field, 0, reps)


def gw_class_of(G: GramMatrix) -> GWClass:
    """Diagonalize and normalize in one step (nondegenerate G)."""
    diag, _ = diagonalize(G)
    return gw_normalize(G.field, diag)


def gw_ring_op(A: GWClass, B: GWClass, op: str) -> GWClass:
    if A.field != B.field:
        raise FieldMismatch("classes over different fields")
    if op == "add":
        return _renormalize(
            A.field, A.hyperbolic + B.hyperbolic, list(A.residual + B.residual)
        )
    if op == "tensor":
        # h absorbs rank-one classes and h (x) h = 2h
        hyp = (
            2 * A.hyperbolic * B.hyperbolic
            + A.hyperbolic * len(B.residual)
            + B.hyperbolic * len(A.residual)
        )
        cross = [
            square_class_mul(a, b) for a in A.residual for b in B.residual
        ]
        return _renormalize(A.field, hyp, cross)
    raise ValueError(f"unknown ring operation {op!r}")


def _diag_entries(A: GWClass) -> list[FieldElement]:
    k = A.field
    out = []
    for _ in range(A.hyperbolic):
        out.extend([k.one, -k.one])
    out.extend(r.rep for r in A.residual)
    return out


def signature(A: GWClass) -> int:
    """Signature over Q: hyperbolic summands contribute zero."""
    if not isinstance(A.field, RationalField):
        raise WrongField("signature is defined over Q only")
    return sum(1 if r.rep.value > 0 else -1 for r in A.residual)


def _det_class(A: GWClass) -> SquareClass:
    k = A.field
    det = square_class_rep((-k.one) ** A.hyperbolic if A.hyperbolic else k.one)
    for r in A.residual:
        det = square_class_mul(det, r)
    return det


# ---------------------------------------------------------------------------
# Hilbert symbols over Q


def _split_val(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(u: int, p: int) -> int:
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a: int, b: int, p) -> int:
    """(a, b)_p for nonzero integers; p an odd prime, 2, or "real"."""
    if a == 0 or b == 0:
        raise ZeroDiagonalEntry("Hilbert symbol of zero")
    if p == "real":
        return -1 if (a < 0 and b < 0) else 1
    if p == 2:
        alpha, u = _split_val(a, 2)
        beta, w = _split_val(b, 2)
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        s = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if s % 2 else 1
    alpha, u = _split_val(a, p)
    beta, w = _split_val(b, p)
    sign = 1
    if (alpha * beta) % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2 and _legendre(u, p) == -1:
        sign = -sign
    if alpha % 2 and _legendre(w, p) == -1:
        sign = -sign
    return sign


def _int_primes(n: int) -> set[int]:
    from .field_tower import factor_int

    return set(factor_int(n))


def _hasse_minus(entries: list[int]) -> tuple[int, ...]:
    places = {2}
    for a in entries:
        places |= _int_primes(a)
    bad = []
    for p in sorted(places):
        s = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                s *= hilbert_symbol(entries[i], entries[j], p)
        if s == -1:
            bad.append(p)
    return tuple(bad)


# ---------------------------------------------------------------------------
# residues over F_p(t)


def _fpt_entry_residue(k: RationalFunctionField, entry: FieldElement, pi, kind: int):
    """Image of the uniformizer-free part of one entry, or None.

    kind 2 keeps odd valuations, kind 1 keeps even ones.  ``pi`` is a tuple
    of F_p coefficients for a finite place or INFINITY.
    """
    p = k.p
    num, den = entry.value
    if pi is INFINITY:
        v = (len(den) - 1) - (len(num) - 1)
        if (v % 2 == 0) != (kind == 1):
            return None
        return (num[-1] * pow(den[-1], -1, p)) % p  # ratio of leading coeffs
    vn = 0
    while True:
        q, r = _zx_divmod(num, pi, p)
        if r:
            break
        num = q
        vn += 1
    vd = 0
    while True:
        q, r = _zx_divmod(den, pi, p)
        if r:
            break
        den = q
        vd += 1
    v = vn - vd
    if (v % 2 == 0) != (kind == 1):
        return None
    return (num, den)  # unit part, to be reduced mod pi by the caller


def _residue_field(k: RationalFunctionField, pi) -> Field:
    if pi is INFINITY or len(pi) == 2:
        return PrimeField(k.p)
    return QuotientField(PrimeField(k.p), tuple(PrimeField(k.p)(c).value for c in pi),
                         k.variable, irreducibility_verified=True)


def _residue_image(k: RationalFunctionField, res: Field, pi, raw) -> FieldElement:
    p = k.p
    if pi is INFINITY:
        return res(raw)
    if isinstance(res, PrimeField):
        root = (-pi[0]) % p  # pi = t + c monic of degree one
        num, den = raw
        from .field_tower import _zx_eval

        return res(_zx_eval(num, root, p) * pow(_zx_eval(den, root, p), -1, p))
    num, den = raw
    num_im = res._prem(tuple(res.base._from_int(c) for c in num), res.modulus)
    den_im = res._prem(tuple(res.base._from_int(c) for c in den), res.modulus)
    return FieldElement(res, res._mul(num_im, res._pinv(den_im)))


def _residue_elements(A: GWClass, pi, kind: int) -> tuple[Field, list[FieldElement]]:
    k = A.field
    res = _residue_field(k, pi)
    out = []
    for entry in _diag_entries(A):
        raw = _fpt_entry_residue(k, entry, pi, kind)
        if raw is not None:
            out.append(_residue_image(k, res, pi, raw))
    return res, out


def second_residue(A: GWClass, place, *, kind: int = 2) -> GWClass:
    """Second residue at a finite place (monic irreducible in t) or INFINITY.

    <u*pi^e> maps to <u mod pi> for odd e and to zero for even e, extended
    additively; at INFINITY the uniformizer is 1/t.  The result lives over
    the residue field (F_p itself for places of degree one).
    """
    if not isinstance(A.field, RationalFunctionField):
        raise WrongField("residues are defined over F_p(t) only")
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    if place is INFINITY:
        pi = INFINITY
    else:
        if not isinstance(place, Poly) or place.field != PrimeField(A.field.p):
            raise WrongField("place must be a polynomial over the coefficient field")
        if not place.is_monic() or not polyring.is_irreducible(place):
            raise NotIrreducible(f"{place} is not a monic irreducible place")
        pi = tuple(c.value for c in place.coeffs)
    res, elems = _residue_elements(A, pi, kind)
    return gw_normalize(res, elems)


def _witt_pair(res: Field, elems: list[FieldElement]):
    """(rank mod 2, discriminant key): classifies Witt classes over finite fields."""
    n = len(elems)
    disc = res.one
    for e in elems:
        disc = disc * e
    if (n * (n - 1) // 2) % 2:
        disc = -disc
    return (n % 2, square_class_rep(disc).sort_key())


def _trivial_pair(res: Field):
    return (0, square_class_rep(res.one).sort_key())


# ---------------------------------------------------------------------------
# fingerprints and the equality decision


@dataclass(frozen=True)
class WittFingerprint:
    """Congruence-invariant decision data, canonical and comparable."""

    field: Field
    rank: int
    det_key: tuple
    signature: int | None
    hasse_minus: tuple[int, ...]
    residues: tuple
    infinity: tuple | None


def fingerprint(A: GWClass, *, seed: int | None = None) -> WittFingerprint:
    k = A.field
    if any(not r.canonical for r in A.residual):
        # canonical data is required here; retry the factorization and let
        # the explicit overflow error surface if it is genuinely infeasible
        A = GWClass(
            k,
            A.hyperbolic,
            tuple(square_class_rep(r.rep) for r in A.residual),
        )
    det_key = _det_class(A).sort_key()
    sig = None
    hasse: tuple[int, ...] = ()
    residues: tuple = ()
    inf = None
    if isinstance(k, RationalField):
        sig = signature(A)
        ints = [int(e.value) for e in _diag_entries(A)]
        hasse = _hasse_minus(ints)
    elif isinstance(k, RationalFunctionField):
        p = k.p
        base = PrimeField(p)
        places = set()
        for r in A.residual:
            num = r.rep.value[0]
            if len(num) > 1:
                monic = _zx_scale(num, pow(num[-1], -1, p), p)
                fpoly = Poly.from_coeffs(
                    base, [base(c) for c in monic], k.variable
                )
                for part in polyring.factor_finite(fpoly, seed=seed).parts:
                    places.add(tuple(c.value for c in part.poly.coeffs))
        data = []
        for pi in sorted(places):
            res, elems = _residue_elements(A, pi, 2)
            pair = _witt_pair(res, elems)
            if pair != _trivial_pair(res):
                data.append((pi, pair))
        residues = tuple(sorted(data))
        res_inf, e1 = _residue_elements(A, INFINITY, 1)
        _, e2 = _residue_elements(A, INFINITY, 2)
        inf = (_witt_pair(res_inf, e1), _witt_pair(res_inf, e2))
    elif not k.is_finite:
        raise WrongField(f"no equality decision implemented over {k}")
    return WittFingerprint(k, A.rank, det_key, sig, hasse, residues, inf)


def gw_equal(A: GWClass, B: GWClass, *, seed: int | None = None) -> bool:
    """Decide equality in GW(k); complete for F_p and Q, stress-tested for F_p(t)."""
    if A.field != B.field:
        raise FieldMismatch("classes over different fields")
    if A.hyperbolic == B.hyperbolic and A.residual == B.residual:
        return True
    if A.rank != B.rank:
        return False
    if isinstance(A.field, RationalField):
        return _gw_equal_q(A, B)
    return fingerprint(A, seed=seed) == fingerprint(B, seed=seed)


def _gw_equal_q(A: GWClass, B: GWClass) -> bool:
    """Witt-cancellation test over Q: A = B iff A + (-B) is hyperbolic."""
    vals = [r.rep.value for r in A.residual]
    vals += [-r.rep.value for r in B.residual]
    hyp, residual = _normalize_q(A.field, vals)
    n = len(A.residual) + len(B.residual)
    if not residual:
        return 2 * hyp == n
    if n % 2:
        return False
    # leftover did not cancel pairwise; decide with full invariants
    C = GWClass(A.field, hyp, residual)
    return fingerprint(C) == fingerprint(hyperbolic(A.field, n // 2))


# ---------------------------------------------------------------------------
# trace transfer


def trace_transfer(G: GramMatrix) -> GramMatrix:
    """Transfer a form over L = k[x]/(m) down to k along the field trace.

    The output Gram matrix is taken on the basis {x^a e_i} and has entries
    Tr(beta(e_i, e_j) * x^(a+b)).  The modulus must be separable; otherwise
    the trace form is degenerate and the transfer is refused.
    """
    L = G.field
    if not isinstance(L, QuotientField):
        return G
    k = L.base
    var = L.variable
    m = Poly.from_coeffs(k, [FieldElement(k, c) for c in L.modulus], var)
    if polyring.gcd(m, m.derivative()).degree != 0:
        raise InseparableModulus(f"{m} is inseparable; trace form degenerate")
    d = L.degree
    n = G.n
    x = L.gen
    powers = [L.one]
    for _ in range(2 * d - 2):
        powers.append(powers[-1] * x)

    def trace(elt: FieldElement) -> FieldElement:
        tr = k.zero
        for c in range(d):
            prod = elt * powers[c] if c else elt
            payload = prod.value
            if len(payload) > c:
                tr = tr + FieldElement(k, payload[c])
        return tr

    size = n * d
    rows = [[k.zero] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            beta = G[i, j]
            for a in range(d):
                for b in range(d):
                    rows[i * d + a][j * d + b] = trace(beta * powers[a + b])
    return GramMatrix(k, tuple(tuple(r) for r in rows))
