"""Translate relationship categories into edge weights.

Four categories are supported. The two "keep" categories are hard
preferences (weight +-10), the two "better" categories soft ones
(weight +-1). Pairs with no specified relationship get a slight positive
neutral fill (0.1 by default) so that everyone is weakly connected;
setting the fill to 0 disables it and leaves such people isolated.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .graph import SignedGraph

KEEP_TOGETHER = "keep_together"
BETTER_TOGETHER = "better_together"
BETTER_APART = "better_apart"
KEEP_APART = "keep_apart"

CATEGORY_WEIGHTS: dict[str, float] = {
    KEEP_TOGETHER: 10.0,
    BETTER_TOGETHER: 1.0,
    BETTER_APART: -1.0,
    KEEP_APART: -10.0,
}

CATEGORIES = tuple(CATEGORY_WEIGHTS)

NEGATIVE_CATEGORIES = (BETTER_APART, KEEP_APART)

DEFAULT_NEUTRAL_WEIGHT = 0.1


@dataclass(frozen=True)
class Relationship:
    """One symmetric pairwise constraint between two distinct people."""

    person_a: str
    person_b: str
    category: str

    def __post_init__(self) -> None:
        if self.person_a == self.person_b:
            raise InvalidInputError(f"relationship of {self.person_a!r} with itself")
        if self.category not in CATEGORY_WEIGHTS:
            raise InvalidInputError(
                f"unknown category {self.category!r}; expected one of {', '.join(CATEGORIES)}"
            )

    @property
    def pair(self) -> tuple[str, str]:
        a, b = sorted((self.person_a, self.person_b))
        return a, b


@dataclass(frozen=True)
class RelationshipSpec:
    """A set of pairwise constraints; each unordered pair at most once."""

    pairs: tuple[Relationship, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(self.pairs))
        seen: set[tuple[str, str]] = set()
        for rel in self.pairs:
            if rel.pair in seen:
                raise InvalidInputError(f"duplicate pair ({rel.person_a}, {rel.person_b})")
            seen.add(rel.pair)


@dataclass(frozen=True)
class ContradictionWarning:
    """A keep-together chain that also contains a specified negative edge."""

    people: tuple[str, ...]
    description: str


def encode_relationships(
    people: Sequence[str],
    spec: RelationshipSpec,
    neutral_weight: float = DEFAULT_NEUTRAL_WEIGHT,
) -> SignedGraph:
    """Build the signed graph for a guest list and its constraints.

    Specified pairs get their category weight; every other distinct pair
    gets ``neutral_weight``. The matrix is exactly symmetric with a zero
    diagonal.
    """
    people = list(people)
    index = {p: i for i, p in enumerate(people)}
    if len(index) != len(people):
        raise InvalidInputError("duplicate person ids")
    if neutral_weight < 0:
        raise InvalidInputError("neutral weight must be >= 0")
    n = len(people)
    w = np.full((n, n), float(neutral_weight))
    np.fill_diagonal(w, 0.0)
    for rel in spec.pairs:
        try:
            i, j = index[rel.person_a], index[rel.person_b]
        except KeyError as exc:
            raise InvalidInputError(f"unknown person id: {exc.args[0]!r}") from None
        w[i, j] = w[j, i] = CATEGORY_WEIGHTS[rel.category]
    return SignedGraph(tuple(people), w)


def detect_contradictions(spec: RelationshipSpec) -> list[ContradictionWarning]:
    """Warn about negative edges inside a keep-together chain.

    Keep-together pairs are treated as hard links and closed transitively;
    any better_apart or keep_apart pair whose endpoints fall in the same
    closure is contradictory. Warnings never block solving.
    """
    adjacency: dict[str, list[str]] = defaultdict(list)
    for rel in spec.pairs:
        if rel.category == KEEP_TOGETHER:
            adjacency[rel.person_a].append(rel.person_b)
            adjacency[rel.person_b].append(rel.person_a)

    def chain(start: str, goal: str) -> list[str] | None:
        """Shortest keep-together path from start to goal, if any."""
        previous: dict[str, str | None] = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            if node == goal:
                path = [node]
                while previous[path[-1]] is not None:
                    path.append(previous[path[-1]])  # type: ignore[arg-type]
                return path[::-1]
            for other in adjacency[node]:
                if other not in previous:
                    previous[other] = node
                    queue.append(other)
        return None

    warnings: list[ContradictionWarning] = []
    for rel in spec.pairs:
        if rel.category not in NEGATIVE_CATEGORIES:
            continue
        path = chain(rel.person_a, rel.person_b)
        if path is None:
            continue
        warnings.append(
            ContradictionWarning(
                people=tuple(path),
                description=(
                    f"{rel.person_a} and {rel.person_b} are chained together "
                    f"({' - '.join(path)}) but the pair is marked {rel.category}"
                ),
            )
        )
    return warnings
