"""Exact computations with bidiagonal pairs over Q and Q(q)."""

from .core import (
    AffineWitness,
    BidiagonalPair,
    EigenData,
    Finding,
    ParameterArray,
    VerificationReport,
    affine,
    dual,
    parameter_array,
    verify,
)
from .field import Q, FieldContext, Qq, RationalFunction, field_arithmetic, q_integer
from .linalg import (
    Matrix,
    Subspace,
    char_min_poly,
    eigendecompose,
    lagrange_projector,
    linear_roots,
    rref_rank_kernel,
    solve,
    subspace_ops,
    vandermonde_interpolate,
)
from .modules import (
    ModuleMatrices,
    ModuleSpec,
    Summand,
    direct_sum,
    module_from_reduced_pair,
    module_from_shape,
    pair_from_parameter_array,
    sl2_irreducible,
    solve_cycling_operator,
    uq_irreducible,
)
from .polynomial import Poly
from .relations import (
    EigenvalueForm,
    FundamentalRelation,
    base,
    classify_check,
    eigenvalue_form,
    fundamental_relation,
    is_reduced,
    reduce,
    reduced_variant,
    relation_polynomials,
)
from .lemmas import lemma_report
from .structure import (
    SubspaceChain,
    highest_spaces,
    isomorphism,
    split_subspaces,
    third_operator,
    third_operator_solution_dimension,
)

__all__ = [
    "AffineWitness",
    "BidiagonalPair",
    "EigenData",
    "EigenvalueForm",
    "FieldContext",
    "Finding",
    "FundamentalRelation",
    "Matrix",
    "ModuleMatrices",
    "ModuleSpec",
    "ParameterArray",
    "Poly",
    "Q",
    "Qq",
    "RationalFunction",
    "Subspace",
    "SubspaceChain",
    "Summand",
    "VerificationReport",
    "affine",
    "base",
    "char_min_poly",
    "classify_check",
    "direct_sum",
    "dual",
    "eigendecompose",
    "eigenvalue_form",
    "field_arithmetic",
    "fundamental_relation",
    "highest_spaces",
    "is_reduced",
    "isomorphism",
    "lagrange_projector",
    "lemma_report",
    "linear_roots",
    "module_from_reduced_pair",
    "module_from_shape",
    "pair_from_parameter_array",
    "parameter_array",
    "q_integer",
    "reduce",
    "reduced_variant",
    "relation_polynomials",
    "rref_rank_kernel",
    "sl2_irreducible",
    "solve",
    "solve_cycling_operator",
    "split_subspaces",
    "subspace_ops",
    "third_operator",
    "third_operator_solution_dimension",
    "uq_irreducible",
    "vandermonde_interpolate",
    "verify",
]

__version__ = "0.1.0"
