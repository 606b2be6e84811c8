"""Signed social graph and the matrices derived from it.

People are vertices; pairwise affinity is a symmetric weight (positive =
like, negative = dislike, zero = unspecified). A vertex degree sums the
absolute weights, so someone disliked by many still counts as socially
connected. Everything here is dense: the tool targets guest lists of at
most a few thousand people.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class SignedGraph:
    """Immutable symmetric affinity matrix over an ordered list of people.

    Invariants enforced at construction: the matrix is exactly symmetric,
    has a zero diagonal, and its dimension matches the vertex list.
    """

    vertices: tuple[str, ...]
    weights: np.ndarray

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if not vertices:
            raise InvalidInputError("graph needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise InvalidInputError("duplicate vertex ids")
        w = np.array(self.weights, dtype=float)
        n = len(vertices)
        if w.shape != (n, n):
            raise InvalidInputError(f"weight matrix must be {n}x{n}, got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise InvalidInputError("weights must be finite")
        if not np.array_equal(w, w.T):
            raise InvalidInputError("weight matrix must be symmetric")
        if np.any(np.diag(w) != 0.0):
            raise InvalidInputError("self-affinity must be zero")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vertices)})

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, person: str) -> int:
        try:
            return self._index[person]  # type: ignore[attr-defined]
        except KeyError:
            raise InvalidInputError(f"unknown person id: {person!r}") from None


def build_graph(
    vertices: Sequence[str], edges: Iterable[tuple[str, str, float]]
) -> SignedGraph:
    """Assemble a signed graph from a vertex list and weighted edges.

    Each unordered pair may appear at most once; both matrix entries are
    set from the same value so symmetry is exact. Unspecified pairs stay 0.
    """
    vertices = list(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    if len(index) != len(vertices):
        raise InvalidInputError("duplicate vertex ids")
    w = np.zeros((len(vertices), len(vertices)))
    seen: set[tuple[int, int]] = set()
    for a, b, weight in edges:
        if a == b:
            raise InvalidInputError(f"self-loop on {a!r} is not allowed")
        try:
            i, j = index[a], index[b]
        except KeyError as exc:
            raise InvalidInputError(f"unknown person id: {exc.args[0]!r}") from None
        key = (min(i, j), max(i, j))
        if key in seen:
            raise InvalidInputError(f"duplicate pair ({a}, {b})")
        seen.add(key)
        w[i, j] = w[j, i] = float(weight)
    return SignedGraph(tuple(vertices), w)


def signed_degrees(graph: SignedGraph) -> np.ndarray:
    """Per-vertex sum of absolute edge weights."""
    return np.abs(graph.weights).sum(axis=1)


def signed_laplacian(graph: SignedGraph) -> np.ndarray:
    """diag(degrees) - W; symmetric positive semidefinite."""
    return np.diag(signed_degrees(graph)) - graph.weights


def normalized_signed_laplacian(graph: SignedGraph) -> np.ndarray:
    """D^{-1/2} L D^{-1/2}; eigenvalues lie in [0, 2].

    Requires every degree to be positive: split isolated vertices out
    first. Built as an elementwise product with an outer scaling matrix so
    the result is bitwise symmetric.
    """
    degrees = signed_degrees(graph)
    zero = np.flatnonzero(degrees == 0.0)
    if zero.size:
        names = ", ".join(graph.vertices[i] for i in zero)
        raise InvalidInputError(f"zero-degree vertices present ({names}); split isolated vertices first")
    inv_sqrt = 1.0 / np.sqrt(degrees)
    return signed_laplacian(graph) * np.multiply.outer(inv_sqrt, inv_sqrt)


def positive_components(
    graph: SignedGraph, subset: Sequence[str], threshold: float = 1.0
) -> tuple[int, dict[str, int]]:
    """Connected components of the subgraph induced on ``subset``.

    Only edges with weight >= threshold count; the default of 1 ignores
    the slight neutral fill and counts specified positive relationships
    only. Returns the component count and a person -> component label map
    (labels numbered in first-seen vertex order).
    """
    if not subset:
        raise InvalidInputError("subset must be nonempty")
    indices = sorted(graph.index(p) for p in set(subset))
    w = graph.weights
    labels: dict[int, int] = {}
    count = 0
    for start in indices:
        if start in labels:
            continue
        queue = deque([start])
        labels[start] = count
        while queue:
            i = queue.popleft()
            for j in indices:
                if j not in labels and w[i, j] >= threshold:
                    labels[j] = count
                    queue.append(j)
        count += 1
    return count, {graph.vertices[i]: c for i, c in labels.items()}


def split_isolated(graph: SignedGraph) -> tuple[SignedGraph, list[str]]:
    """Separate zero-degree vertices from the clusterable core.

    The core keeps exactly the vertices with positive degree, with the
    induced weight submatrix. Raises if every vertex is isolated, since
    there is nothing left to cluster.
    """
    degrees = signed_degrees(graph)
    core = np.flatnonzero(degrees > 0.0)
    if core.size == 0:
        raise InvalidInputError("all vertices are isolated; nothing to cluster")
    isolated = [graph.vertices[i] for i in np.flatnonzero(degrees == 0.0)]
    core_vertices = tuple(graph.vertices[i] for i in core)
    core_weights = graph.weights[np.ix_(core, core)]
    return SignedGraph(core_vertices, core_weights), isolated
