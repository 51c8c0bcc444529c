"""Exact finite-state ergodic component analysis for upper probabilities."""

from .birkhoff import (
    asymptotic_independence_choquet,
    asymptotic_independence_core,
    birkhoff_limit,
    cesaro_hit_limit,
    comonotone_step_choquet,
    finite_average,
    verify_multivalue_lln,
)
from .capacity import (
    FunctionOnSpace,
    UpperProb,
    choquet_integral,
    core_contains,
    core_vertices,
    envelope,
    indicator,
    invariant_core_vertices,
    is_invariant_capacity,
    null_support,
)
from .errors import InternalVerificationError
from .fec import (
    DecompositionResult,
    EmptyRestrictedCore,
    FECResult,
    NotFEC,
    component_capacity,
    decompose_invariant,
    ergodic_core_measures,
    extreme_points_check,
    fec_decompose,
    full_decomposition,
    invariant_vertices_decompose,
    is_fz_ergodic,
    restricted_envelope,
    zero_one_condition,
    zero_one_witness,
)
from .koopman import (
    KoopmanMatrix,
    eigenvalue_one_multiplicity,
    invariant_function_basis,
    koopman_matrix,
)
from .measure import (
    Prob,
    cesaro_limit,
    conditional,
    ergodic_probabilities,
    expectation,
    invariant_skeleton,
    is_ergodic,
    is_invariant,
    lebesgue_decomposition_invariant,
    pushforward,
)
from .noninvariant import (
    IrreduciblePartition,
    NoninvariantSystem,
    combined_capacity,
    invariant_value_set,
    irreducible_partition,
    noninvariant_independence,
    noninvariant_lln,
    q_limit,
    v_component,
    verify_construction,
)
from .space import (
    FiniteSpace,
    Partition,
    Transformation,
    components,
    cycles,
    invariant_sets,
    is_invertible,
    preimage,
)

__version__ = "0.1.0"

__all__ = [
    "DecompositionResult",
    "EmptyRestrictedCore",
    "FECResult",
    "FiniteSpace",
    "FunctionOnSpace",
    "InternalVerificationError",
    "IrreduciblePartition",
    "KoopmanMatrix",
    "NoninvariantSystem",
    "NotFEC",
    "Partition",
    "Prob",
    "Transformation",
    "UpperProb",
    "asymptotic_independence_choquet",
    "asymptotic_independence_core",
    "birkhoff_limit",
    "cesaro_hit_limit",
    "cesaro_limit",
    "choquet_integral",
    "combined_capacity",
    "comonotone_step_choquet",
    "component_capacity",
    "components",
    "conditional",
    "core_contains",
    "core_vertices",
    "cycles",
    "decompose_invariant",
    "eigenvalue_one_multiplicity",
    "envelope",
    "ergodic_core_measures",
    "ergodic_probabilities",
    "expectation",
    "extreme_points_check",
    "fec_decompose",
    "finite_average",
    "full_decomposition",
    "indicator",
    "invariant_core_vertices",
    "invariant_function_basis",
    "invariant_sets",
    "invariant_skeleton",
    "invariant_value_set",
    "invariant_vertices_decompose",
    "irreducible_partition",
    "is_ergodic",
    "is_fz_ergodic",
    "is_invariant",
    "is_invariant_capacity",
    "is_invertible",
    "koopman_matrix",
    "lebesgue_decomposition_invariant",
    "noninvariant_independence",
    "noninvariant_lln",
    "null_support",
    "preimage",
    "pushforward",
    "q_limit",
    "restricted_envelope",
    "v_component",
    "verify_construction",
    "verify_multivalue_lln",
    "zero_one_condition",
    "zero_one_witness",
]
