"""Defining ideals of Rees algebras over hypersurface rings.

The algorithm runs gcd iterations on a modified Jacobian dual of an
alternating presentation matrix; an independent Groebner oracle
certifies the result as a saturation and as an iterated colon ideal.
"""

from .ring import (
    BiDegree,
    DEFAULT_PRIME,
    MonomialOrder,
    ParseError,
    Polynomial,
    PolyRing,
    partial_column,
)
from .groebner import (
    BudgetExceeded,
    groebner_basis,
    is_groebner,
    normal_form,
    reduce_basis,
    spolynomial,
)
from .matrices import (
    PolyMatrix,
    delete_column,
    delete_row,
    det,
    det_cofactor,
    is_alternating,
    iteration_matrix,
    jacobian_dual,
    minors,
    modified_jacobian_dual,
    pfaffian,
    submaximal_pfaffians,
)
from .ideals import (
    Ideal,
    colon,
    colon_ideal,
    colon_power,
    colon_power_chain,
    dimension,
    height,
    height_in_hypersurface,
    intersect,
    intersect_all,
    saturate,
    saturate_poly,
)
from .pipeline import (
    CheckResult,
    GOLDEN_EQUATION,
    GOLDEN_MATRIX,
    InstanceRejected,
    InstanceSpec,
    IterationError,
    IterationStep,
    IterationTrace,
    VerificationReport,
    builtin_example,
    check_hypotheses,
    gcd_iterations,
    minimality_and_invariants,
    optional_structural_checks,
    random_instance,
    redundant_generators,
    sample_random_instances,
    verify_main_theorem,
    verify_well_definedness,
)

__version__ = "0.1.0"

__all__ = [
    "BiDegree",
    "BudgetExceeded",
    "CheckResult",
    "DEFAULT_PRIME",
    "GOLDEN_EQUATION",
    "GOLDEN_MATRIX",
    "Ideal",
    "InstanceRejected",
    "InstanceSpec",
    "IterationError",
    "IterationStep",
    "IterationTrace",
    "ParseError",
    "PolyMatrix",
    "PolyRing",
    "Polynomial",
    "MonomialOrder",
    "partial_column",
    "VerificationReport",
    "builtin_example",
    "check_hypotheses",
    "colon",
    "colon_ideal",
    "colon_power",
    "colon_power_chain",
    "delete_column",
    "delete_row",
    "det",
    "det_cofactor",
    "dimension",
    "gcd_iterations",
    "groebner_basis",
    "height",
    "height_in_hypersurface",
    "intersect",
    "intersect_all",
    "is_alternating",
    "is_groebner",
    "iteration_matrix",
    "jacobian_dual",
    "minimality_and_invariants",
    "minors",
    "modified_jacobian_dual",
    "normal_form",
    "optional_structural_checks",
    "pfaffian",
    "random_instance",
    "reduce_basis",
    "redundant_generators",
    "sample_random_instances",
    "saturate",
    "saturate_poly",
    "spolynomial",
    "submaximal_pfaffians",
    "verify_main_theorem",
    "verify_well_definedness",
]
