"""sumsetlab: exact-arithmetic sumsets, compressions, and certificates.

The package computes k-fold and weighted Minkowski sumsets of finite rational
point sets, applies hyperplane compressions (including the reduction to the
extremal long simplex), and certifies the classical growth inequalities
(Freiman-type lower bounds, Plünnecke–Ruzsa upper bounds, discrete
Brunn–Minkowski) with exact rational or interval-certified arithmetic.
"""

from .bounds import (
    GrowthFitReport,
    check_discrete_bm,
    check_elementary,
    check_fiber_bound,
    check_freiman_kfold,
    check_freiman_lemma,
    check_gs_kfold,
    check_iterated_pr,
    check_linear_pr,
    check_plunnecke_ruzsa,
    check_ruzsa_triangle,
    check_simplex_formula,
    det_main_term_probe,
    fit_deficit_exponent,
    khovanskii_probe,
    main_term_probe,
    simplex_cardinality,
)
from .certificates import (
    HOLDS,
    INDETERMINATE,
    VIOLATED,
    Certificate,
    Interval,
    int_nth_root_interval,
)
from .compression import (
    CompressionSpec,
    CompressionTrace,
    ReductionError,
    check_projection_monotone,
    check_sum_monotone,
    compress,
    is_down_set,
    normalize_down,
    reduce_to_simplex,
)
from .core import (
    Basis,
    DimensionMismatchError,
    EmptySetError,
    LinearSystem,
    PointSet,
    RationalMatrix,
    SingularMatrixError,
    Subspace,
    affine_dimension,
    covering_number,
    iterated_sumset,
    linear_image,
    max_fiber,
    minkowski_sum,
    project,
    weighted_sumset,
)
from .generators import (
    cube,
    grid,
    interval_set,
    long_simplex,
    long_simplex_summands,
    long_simplex_sumset_form,
    random_full_dim_set,
    random_set,
    random_system,
    rotation_system,
    shear_counterexample,
    shear_system,
    splitmix64_stream,
)
from .structure import (
    GAP,
    BudgetExceededError,
    IrreducibilityVerdict,
    coprime_sufficient,
    decide_irreducible,
    gap_contains,
    gap_is_proper,
    is_reducible_witness,
)
from .suites import CriterionReport, SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BudgetExceededError",
    "Certificate",
    "CompressionSpec",
    "CompressionTrace",
    "CriterionReport",
    "DimensionMismatchError",
    "EmptySetError",
    "GAP",
    "GrowthFitReport",
    "HOLDS",
    "INDETERMINATE",
    "Interval",
    "IrreducibilityVerdict",
    "LinearSystem",
    "PointSet",
    "RationalMatrix",
    "ReductionError",
    "SingularMatrixError",
    "Subspace",
    "SuiteReport",
    "VIOLATED",
    "affine_dimension",
    "check_discrete_bm",
    "check_elementary",
    "check_fiber_bound",
    "check_freiman_kfold",
    "check_freiman_lemma",
    "check_gs_kfold",
    "check_iterated_pr",
    "check_linear_pr",
    "check_plunnecke_ruzsa",
    "check_projection_monotone",
    "check_ruzsa_triangle",
    "check_simplex_formula",
    "check_sum_monotone",
    "compress",
    "coprime_sufficient",
    "covering_number",
    "cube",
    "decide_irreducible",
    "det_main_term_probe",
    "fit_deficit_exponent",
    "gap_contains",
    "gap_is_proper",
    "grid",
    "int_nth_root_interval",
    "interval_set",
    "is_down_set",
    "is_reducible_witness",
    "iterated_sumset",
    "khovanskii_probe",
    "linear_image",
    "long_simplex",
    "long_simplex_summands",
    "long_simplex_sumset_form",
    "main_term_probe",
    "max_fiber",
    "minkowski_sum",
    "normalize_down",
    "project",
    "random_full_dim_set",
    "random_set",
    "random_system",
    "reduce_to_simplex",
    "rotation_system",
    "run_suite",
    "shear_counterexample",
    "shear_system",
    "simplex_cardinality",
    "splitmix64_stream",
    "weighted_sumset",
]
