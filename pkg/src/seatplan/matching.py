"""Capacity enforcement: eviction, scoring, and deferred acceptance.

Clusters straight out of discretization ignore table sizes. Over-full
tables evict their weakest members (lowest soft membership), evictees are
scored against every under-full table by summed affinity to its current
members, and an applicant-proposing deferred-acceptance round reassigns
them. People with no relationships at all are placed last, uniformly at
random among tables with free seats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .discretize import ProbabilisticSolution
from .errors import InfeasibleError, InternalInvariantError, InvalidInputError
from .graph import SignedGraph


@dataclass(frozen=True)
class Table:
    """One table with its identifier and seat count."""

    table_id: str
    capacity: int


@dataclass(frozen=True)
class TableSpec:
    """Ordered list of tables; the column order of every indicator matrix."""

    tables: tuple[Table, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tables", tuple(self.tables))
        if not self.tables:
            raise InvalidInputError("at least one table is required")
        ids = [t.table_id for t in self.tables]
        if len(set(ids)) != len(ids):
            raise InvalidInputError("duplicate table ids")
        for t in self.tables:
            if int(t.capacity) != t.capacity or t.capacity < 1:
                raise InvalidInputError(f"table {t.table_id!r} capacity must be a positive integer")

    @property
    def k(self) -> int:
        return len(self.tables)

    @property
    def total_capacity(self) -> int:
        return int(sum(t.capacity for t in self.tables))

    def ids(self) -> tuple[str, ...]:
        return tuple(t.table_id for t in self.tables)

    def capacities(self) -> np.ndarray:
        return np.array([t.capacity for t in self.tables], dtype=int)


@dataclass
class EvictionStack:
    """People removed from over-full tables, with their membership rows."""

    entries: list[tuple[int, np.ndarray]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def people(self) -> list[int]:
        return [person for person, _ in self.entries]


@dataclass(frozen=True)
class ScoreMatrix:
    """scores[i][l]: summed affinity of stack person l to table i's members.

    ``eligible`` marks tables still under capacity; full tables keep a
    zero row but never take part in the matching.
    """

    scores: np.ndarray
    eligible: np.ndarray


def _memberships(prob: ProbabilisticSolution | np.ndarray) -> np.ndarray:
    if isinstance(prob, ProbabilisticSolution):
        return prob.P
    return np.asarray(prob, dtype=float)


def evict_overflow(
    x_star: np.ndarray,
    prob: ProbabilisticSolution | np.ndarray,
    spec: TableSpec,
) -> tuple[np.ndarray, EvictionStack]:
    """Trim every over-full table down to capacity.

    Members leave in ascending order of their soft membership for that
    table (ties toward the lowest person index); each evictee enters the
    stack with their full membership row and their indicator row zeroed.
    """
    x = np.array(x_star, dtype=float)
    memberships = _memberships(prob)
    capacities = spec.capacities()
    if x.shape[1] != spec.k or memberships.shape != x.shape:
        raise InvalidInputError("indicator, memberships, and table spec shapes disagree")
    if spec.total_capacity < x.shape[0]:
        raise InfeasibleError(
            f"capacities sum to {spec.total_capacity} but {x.shape[0]} people need seats"
        )
    stack = EvictionStack()
    for table in range(spec.k):
        members = np.flatnonzero(x[:, table] == 1.0)
        overflow = len(members) - int(capacities[table])
        if overflow <= 0:
            continue
        by_membership = sorted(members, key=lambda m: (memberships[m, table], m))
        for person in by_membership[:overflow]:
            x[person, :] = 0.0
            stack.entries.append((int(person), memberships[person].copy()))
    return x, stack


def affinity_scores(
    graph: SignedGraph,
    assignment: np.ndarray,
    stack: EvictionStack,
    spec: TableSpec,
) -> ScoreMatrix:
    """Score every stacked person against every under-full table.

    The score is the sum of the person's edge weights to the table's
    current members; empty tables score zero. Tables already at capacity
    are marked ineligible.
    """
    assignment = np.asarray(assignment, dtype=int)
    capacities = spec.capacities()
    occupancy = np.bincount(assignment[assignment >= 0], minlength=spec.k)
    eligible = occupancy < capacities
    people = stack.people()
    scores = np.zeros((spec.k, len(people)))
    w = graph.weights
    for table in range(spec.k):
        if not eligible[table]:
            continue
        members = np.flatnonzero(assignment == table)
        if members.size == 0:
            continue
        scores[table, :] = w[np.ix_(people, members)].sum(axis=1)
    return ScoreMatrix(scores=scores, eligible=eligible)


def deferred_acceptance(
    stack: EvictionStack,
    scores: ScoreMatrix,
    residual_capacities: np.ndarray,
) -> list[tuple[int, int]]:
    """Applicant-proposing stable matching of evictees to open seats.

    People rank eligible tables by descending membership (ties by table
    order); tables rank people by descending score (ties by person
    index). A table holds at most its residual capacity and bumps its
    weakest held applicant when a better one proposes. The result is the
    unique applicant-optimal stable matching for these preferences.
    """
    residual = np.asarray(residual_capacities, dtype=int)
    if not stack.entries:
        return []
    open_tables = [
        t for t in range(len(residual)) if scores.eligible[t] and residual[t] > 0
    ]
    if int(residual[open_tables].sum()) < len(stack):
        raise InternalInvariantError("not enough open seats for the eviction stack")

    preferences: list[list[int]] = []
    for _, membership in stack.entries:
        ranked = sorted(open_tables, key=lambda t: (-membership[t], t))
        preferences.append(ranked)
    # rank_at_table[t][l] = position of stack person l in table t's order
    rank_at_table: dict[int, dict[int, int]] = {}
    for t in open_tables:
        order = sorted(range(len(stack)), key=lambda l: (-scores.scores[t, l], stack.entries[l][0]))
        rank_at_table[t] = {l: pos for pos, l in enumerate(order)}

    next_choice = [0] * len(stack)
    held: dict[int, list[int]] = {t: [] for t in open_tables}
    free = list(range(len(stack)))
    while free:
        applicant = free.pop(0)
        if next_choice[applicant] >= len(preferences[applicant]):
            raise InternalInvariantError("applicant exhausted every open table")
        table = preferences[applicant][next_choice[applicant]]
        next_choice[applicant] += 1
        held[table].append(applicant)
        if len(held[table]) > residual[table]:
            weakest = max(held[table], key=lambda l: rank_at_table[table][l])
            held[table].remove(weakest)
            free.append(weakest)

    matches = []
    for table, applicants in held.items():
        for applicant in applicants:
            matches.append((stack.entries[applicant][0], table))
    matches.sort()
    return matches


def place_isolated(
    assignment: np.ndarray,
    isolated: list[int],
    spec: TableSpec,
    seed: int,
) -> np.ndarray:
    """Seat relationship-free people uniformly at random, capacity permitting.

    Placement is sequential with a seeded generator, so a fixed (input,
    seed) pair always yields the same seating.
    """
    out = np.array(assignment, dtype=int)
    capacities = spec.capacities()
    occupancy = np.bincount(out[out >= 0], minlength=spec.k)
    rng = random.Random(seed)
    for person in isolated:
        open_tables = [t for t in range(spec.k) if occupancy[t] < capacities[t]]
        if not open_tables:
            raise InfeasibleError("no free seats left for unassigned guests")
        table = open_tables[rng.randrange(len(open_tables))]
        out[person] = table
        occupancy[table] += 1
    return out
