"""Majorization orders on nonnegative vectors with constructive witnesses.

The package decides three orders (majorization, weak majorization and
submajorization, the last defined through increasable doubly substochastic
witnesses), produces the witnessing matrices and their doubly stochastic
completions, and builds/classifies the structured operators that preserve
the submajorization order.
"""
from .config import Config, DEFAULT_CLASS_TOL, DEFAULT_EXACT_TOL
from .vectors import (
    LevelBlock,
    LevelSetDecomposition,
    NonNegVector,
    Rearrangement,
    common_dim,
    decreasing_rearrangement,
    level_sets,
    p_norm,
    partial_sums,
    scatter_level_sets,
    vector,
)
from .matrices import (
    AugmentationStep,
    Decomposition,
    IncreasabilityCertificate,
    MatrixClass,
    StochMatrix,
    apply,
    classify_matrix,
    compose,
    compose_certificates,
    convex_combine,
    convex_combine_certificates,
    decompose_increasable,
    identity_matrix,
    shift_matrix,
    vonneumann_complete,
    zero_matrix,
)
from .relations import (
    RelationVerdict,
    TTransformChain,
    TTransformStep,
    check_majorize,
    check_submajorize,
    check_weak_majorize,
    hlp_witness,
    intermediate_h,
    oracle_majorize_bruteforce,
    partial_permutation,
    permutation_between,
    strict_permutation,
    weak_witness,
)
from .preservers import (
    FamilyVerdict,
    Injection,
    InjectionFamily,
    PreservationReport,
    PreserverSpec,
    PreserverVerdict,
    TruncatedOperator,
    apply_Th,
    apply_injection_operator,
    build_preserver,
    classify_preserver_l1,
    classify_preserver_lp,
    construct_S,
    empirical_preservation_check,
    injection_matrix,
    validate_family,
)
from .demos import (
    ForcingResult,
    ReciprocalSquareReport,
    constant_row_support_index,
    quadratic_family,
    reciprocal_square_example,
    shift_forcing,
    theta_quadratic,
    theta_triangular,
    triangular_constant_row,
    triangular_family,
)
from .acceptance import CriterionResult, run_acceptance

__version__ = "0.1.0"
