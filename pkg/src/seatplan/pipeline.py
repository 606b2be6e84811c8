"""End-to-end solver: encode, relax, discretize, enforce capacities, report.

Also provides the signed normalized cut objective, per-table metrics
matching the report layout (seats, volume, components), and an exhaustive
brute-force oracle for validating small instances.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .affinity import RelationshipSpec, detect_contradictions, encode_relationships
from .discretize import (
    alternate_minimize,
    default_epsilon,
    probabilistic_solution,
)
from .errors import InfeasibleError, InvalidInputError
from .graph import (
    SignedGraph,
    positive_components,
    signed_degrees,
    signed_laplacian,
    split_isolated,
)
from .matching import (
    TableSpec,
    affinity_scores,
    deferred_acceptance,
    evict_overflow,
    place_isolated,
)
from .spectral import relaxed_solution

ORACLE_GUARD = 10_000_000


@dataclass(frozen=True)
class SolveConfig:
    """Solver knobs; epsilon of None scales with the clusterable core size."""

    epsilon: float | None = None
    max_iter: int = 100
    neutral_weight: float = 0.1
    seed: int = 0
    component_threshold: float = 1.0

    def __post_init__(self) -> None:
        if self.epsilon is not None and self.epsilon <= 0:
            raise InvalidInputError("epsilon must be positive")
        if self.max_iter < 1:
            raise InvalidInputError("max_iter must be >= 1")
        if self.neutral_weight < 0:
            raise InvalidInputError("neutral weight must be >= 0")


@dataclass(frozen=True)
class TableReport:
    """Per-table summary: occupancy, internal volume, component count."""

    table_id: str
    seated: int
    volume: float
    components: int


@dataclass(frozen=True)
class SeatingPlan:
    """Final person -> table assignment plus metrics and diagnostics."""

    assignments: dict[str, str]
    per_table: tuple[TableReport, ...]
    objective: float | None
    warnings: tuple[str, ...]
    seed: int
    residual_history: tuple[float, ...]
    config: SolveConfig


def _quotient_terms(
    laplacian: np.ndarray, degrees: np.ndarray, labels: np.ndarray, k: int
) -> tuple[list[float], list[int], list[int]]:
    """Rayleigh-quotient term per cluster via explicit matrix products.

    Returns (terms, empty cluster indices, zero-volume cluster indices);
    clusters in the latter two lists contribute no term.
    """
    terms: list[float] = []
    empty: list[int] = []
    zero_volume: list[int] = []
    for cluster in range(k):
        x = (labels == cluster).astype(float)
        if not x.any():
            empty.append(cluster)
            continue
        volume = float(x @ (degrees * x))
        if volume == 0.0:
            zero_volume.append(cluster)
            continue
        terms.append(float(x @ laplacian @ x) / volume)
    return terms, empty, zero_volume


def _cluster_terms(
    graph: SignedGraph, labels: np.ndarray, k: int
) -> tuple[list[float], list[int], list[int]]:
    return _quotient_terms(signed_laplacian(graph), signed_degrees(graph), labels, k)


def signed_ncut_objective(graph: SignedGraph, assignment: Mapping[str, str]) -> float:
    """Signed normalized cut value of a total assignment.

    Sums x'Lx / x'Dx over nonempty clusters; clusters of only zero-degree
    people are skipped (they have no signed volume).
    """
    if set(assignment) != set(graph.vertices):
        raise InvalidInputError("assignment must cover exactly the graph vertices")
    table_ids = sorted(set(assignment.values()))
    index = {t: i for i, t in enumerate(table_ids)}
    labels = np.array([index[assignment[v]] for v in graph.vertices], dtype=int)
    terms, _, _ = _cluster_terms(graph, labels, len(table_ids))
    return float(sum(terms))


def table_metrics(
    graph: SignedGraph, members: Sequence[str], threshold: float = 1.0
) -> tuple[int, float, int]:
    """(seated, volume, components) for one table.

    Volume sums the pairwise weights among members; pass a graph without
    neutral fill so only specified relationships count. An empty table
    reports zeros.
    """
    members = list(members)
    if not members:
        return 0, 0.0, 0
    indices = [graph.index(p) for p in members]
    sub = graph.weights[np.ix_(indices, indices)]
    volume = float(sub.sum() / 2.0)
    components, _ = positive_components(graph, members, threshold)
    return len(members), volume, components


def _pad_columns(matrix: np.ndarray, k: int) -> np.ndarray:
    if matrix.shape[1] == k:
        return matrix
    padded = np.zeros((matrix.shape[0], k))
    padded[:, : matrix.shape[1]] = matrix
    return padded


def solve_constrained(
    people: Sequence[str],
    spec: RelationshipSpec,
    tables: TableSpec,
    config: SolveConfig | None = None,
) -> SeatingPlan:
    """Run the full constrained solve for a guest list.

    Stages: encode weights, set aside isolated guests, relax, discretize,
    evict over-capacity members, rematch them by deferred acceptance,
    place isolated guests at random, then compute metrics. Deterministic
    for a fixed (input, seed) pair.
    """
    config = config or SolveConfig()
    people = list(people)
    if not people:
        raise InvalidInputError("empty guest list")
    if len(set(people)) != len(people):
        raise InvalidInputError("duplicate person ids")
    n = len(people)
    k = tables.k
    if tables.total_capacity < n:
        raise InfeasibleError(
            f"capacities sum to {tables.total_capacity} but {n} guests need seats"
        )
    if k > n:
        raise InvalidInputError(f"more tables ({k}) than guests ({n})")

    graph = encode_relationships(people, spec, config.neutral_weight)
    metric_graph = encode_relationships(people, spec, 0.0)
    warnings: list[str] = [w.description for w in detect_contradictions(spec)]

    degrees = signed_degrees(graph)
    core_mask = degrees > 0.0
    assignment = np.full(n, -1, dtype=int)
    residual_history: tuple[float, ...] = ()
    epsilon_used: float | None = None

    if core_mask.any():
        core_graph, _ = split_isolated(graph)
        core_indices = np.flatnonzero(core_mask)
        n_core = core_graph.n
        k_core = min(k, n_core)
        if k_core < k:
            warnings.append(
                f"only {n_core} guests have relationships; clustering used {k_core} of {k} tables"
            )
        relaxed = relaxed_solution(core_graph, k_core)
        epsilon_used = config.epsilon if config.epsilon is not None else default_epsilon(n_core)
        state = alternate_minimize(relaxed.Z, epsilon_used, config.max_iter)
        warnings.extend(state.warnings)
        residual_history = state.residual_history

        aligned = (relaxed.Z @ state.R) * state.Lambda[None, :]
        prob = probabilistic_solution(aligned)
        for row in prob.degenerate_rows:
            warnings.append(
                f"no positive membership signal for {core_graph.vertices[row]}; treated as uniform"
            )
        x_star = _pad_columns(state.X, k)
        memberships = _pad_columns(prob.P, k)

        trimmed, stack = evict_overflow(x_star, memberships, tables)
        core_assignment = np.where(trimmed.any(axis=1), trimmed.argmax(axis=1), -1)
        scores = affinity_scores(core_graph, core_assignment, stack, tables)
        occupancy = np.bincount(core_assignment[core_assignment >= 0], minlength=k)
        matches = deferred_acceptance(stack, scores, tables.capacities() - occupancy)
        for person, table in matches:
            core_assignment[person] = table
        assignment[core_indices] = core_assignment
    else:
        warnings.append("no guest has any specified relationship; all seats assigned at random")

    isolated_indices = [int(i) for i in np.flatnonzero(assignment < 0)]
    if isolated_indices:
        assignment = place_isolated(assignment, isolated_indices, tables, config.seed)

    table_ids = tables.ids()
    reports: list[TableReport] = []
    for t, table_id in enumerate(table_ids):
        members = [people[i] for i in range(n) if assignment[i] == t]
        seated, volume, components = table_metrics(
            metric_graph, members, config.component_threshold
        )
        reports.append(TableReport(table_id, seated, volume, components))

    terms, empty, zero_volume = _cluster_terms(graph, assignment, k)
    for cluster in empty:
        warnings.append(f"table {table_ids[cluster]} is empty; skipped in the objective")
    for cluster in zero_volume:
        warnings.append(
            f"table {table_ids[cluster]} has zero signed volume; skipped in the objective"
        )
    objective = float(sum(terms)) if terms else None

    return SeatingPlan(
        assignments={people[i]: table_ids[assignment[i]] for i in range(n)},
        per_table=tuple(reports),
        objective=objective,
        warnings=tuple(warnings),
        seed=config.seed,
        residual_history=residual_history,
        config=replace(config, epsilon=epsilon_used),
    )


def brute_force_oracle(
    graph: SignedGraph, tables: TableSpec
) -> tuple[dict[str, str], float]:
    """Exhaustive minimum of the signed normalized cut under capacities.

    Enumerates every capacity-respecting assignment in lexicographic
    order and keeps the first minimum, so ties resolve to the
    lexicographically smallest labeling. Guarded to K^N <= 1e7.
    """
    n = graph.n
    k = tables.k
    capacities = tables.capacities()
    if tables.total_capacity < n:
        raise InfeasibleError(
            f"capacities sum to {tables.total_capacity} but {n} people need seats"
        )
    if k**n > ORACLE_GUARD:
        raise InvalidInputError(
            f"instance too large for the exhaustive oracle (K^N = {k}**{n} > {ORACLE_GUARD})"
        )

    laplacian = signed_laplacian(graph)
    degrees = signed_degrees(graph)
    labels = np.zeros(n, dtype=int)
    occupancy = np.zeros(k, dtype=int)
    best_labels: np.ndarray | None = None
    best_value = np.inf

    def recurse(person: int) -> None:
        nonlocal best_labels, best_value
        if person == n:
            terms, _, _ = _quotient_terms(laplacian, degrees, labels, k)
            value = float(sum(terms))
            if value < best_value:
                best_value = value
                best_labels = labels.copy()
            return
        for table in range(k):
            if occupancy[table] < capacities[table]:
                labels[person] = table
                occupancy[table] += 1
                recurse(person + 1)
                occupancy[table] -= 1

    recurse(0)
    assert best_labels is not None
    table_ids = tables.ids()
    assignment = {v: table_ids[best_labels[i]] for i, v in enumerate(graph.vertices)}
    return assignment, best_value
