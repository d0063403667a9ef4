"""Exact Grothendieck-Witt local indices of df for rational self-maps of the
projective line over Q, F_p and F_p(t), with a verifier for the identity
"sum of local indices = (deg f - 1) * h"."""

from .field_tower import (
    A1HurwitzError,
    Field,
    FieldElement,
    PrimeField,
    QuotientField,
    RationalField,
    RationalFunctionField,
    SquareClass,
    arith,
    is_square,
    make_field,
    quotient_field,
    square_class_rep,
)
from .polyring import (
    NEG_INF,
    CoprimeFactorization,
    FactorPart,
    Poly,
    RationalFunc,
    derivative,
    divrem,
    factor_finite,
    gcd,
    gcd_extended,
    is_irreducible,
    poly,
    squarefree_split,
)
from .bilinear import (
    INFINITY,
    GramMatrix,
    GWClass,
    WittFingerprint,
    diagonalize,
    fingerprint,
    gram,
    gw_class_of,
    gw_equal,
    gw_normalize,
    gw_ring_op,
    hyperbolic,
    rank_one,
    second_residue,
    signature,
    trace_transfer,
    zero_class,
)
from .degrees import SSContext, bezoutian, global_degree, local_degree, scheja_storch_form
from .hurwitz import (
    Chart,
    RHReport,
    ZeroCluster,
    cluster_indices,
    critical_locus,
    df_expression,
    euler_char_A1,
    real_critical_report,
    rh_verify,
    tame_branch_index,
)
from .cli import parse_expression

__version__ = "0.1.0"
