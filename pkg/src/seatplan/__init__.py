"""Capacity-constrained seating assignment by signed spectral clustering."""

from .affinity import (
    BETTER_APART,
    BETTER_TOGETHER,
    CATEGORIES,
    CATEGORY_WEIGHTS,
    DEFAULT_NEUTRAL_WEIGHT,
    KEEP_APART,
    KEEP_TOGETHER,
    ContradictionWarning,
    Relationship,
    RelationshipSpec,
    detect_contradictions,
    encode_relationships,
)
from .discretize import (
    DiscretizationState,
    ProbabilisticSolution,
    alternate_minimize,
    default_epsilon,
    init_rotation,
    probabilistic_solution,
    update_indicator,
    update_rotation,
    update_scaling,
)
from .errors import (
    InfeasibleError,
    InternalInvariantError,
    InvalidInputError,
    SeatingError,
)
from .graph import (
    SignedGraph,
    build_graph,
    normalized_signed_laplacian,
    positive_components,
    signed_degrees,
    signed_laplacian,
    split_isolated,
)
from .matching import (
    EvictionStack,
    ScoreMatrix,
    Table,
    TableSpec,
    affinity_scores,
    deferred_acceptance,
    evict_overflow,
    place_isolated,
)
from .pipeline import (
    SeatingPlan,
    SolveConfig,
    TableReport,
    brute_force_oracle,
    signed_ncut_objective,
    solve_constrained,
    table_metrics,
)
from .spectral import RelaxedSolution, relaxed_solution, smallest_eigenpairs

__version__ = "0.1.0"
