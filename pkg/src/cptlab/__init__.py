"""Choquet, Šipoš and piecewise-linear CPT evaluation on finite state spaces."""

from .acts import (
    Act,
    SpaceMismatch,
    StateSpace,
    have_disjoint_supports,
    is_comonotonic,
    is_cosigned,
    negative_part,
    positive_part,
    support,
)
from .capacity import (
    EPS,
    Capacity,
    CapacityError,
    MissingSubset,
    NotMonotone,
    NotNormalized,
    conjugate,
    is_concave,
    is_convex,
    random_capacity,
    validate,
)
from .elicitation import (
    ElicitationTriple,
    LossAversionResult,
    elicit_lambda,
    prefers,
    simulate_a4_triple,
)
from .integration import CptParams, certainty_equivalent, choquet, cpt, hedging_gap, sipos
from .representation import (
    FunctionalOracle,
    check_monotonicity,
    check_restricted_comonotonic_additivity,
    check_symmetry,
    check_uncertainty_attitudes,
    extract_cpt,
    layer_decomposition,
)

__version__ = "0.1.0"
