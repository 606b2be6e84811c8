"""Lowest eigenpairs of the normalized signed Laplacian.

The relaxed form of the signed normalized cut is a trace minimization
whose optimum is spanned by the eigenvectors of the K smallest
eigenvalues. A full dense symmetric eigendecomposition is used: guest
lists are desk-scale, and a deterministic solver keeps runs reproducible.
(The spectrum is bounded by 2, so a sparse path could instead take the
largest eigenpairs of 2I - L; not needed at this scale.)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .graph import SignedGraph, normalized_signed_laplacian, signed_degrees

SYMMETRY_TOL = 1e-10


@dataclass(frozen=True)
class RelaxedSolution:
    """Continuous relaxation: Z = D^{-1/2} U for the K lowest eigenpairs.

    U has orthonormal columns; eigenvalues are ascending. Z's rows live in
    a K-dimensional embedding where people who belong together point in
    similar directions.
    """

    Z: np.ndarray
    eigenvalues: np.ndarray
    U: np.ndarray


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # Deterministic orientation: the entry of largest absolute value in
    # each column is positive; ties break toward the lowest row index.
    out = vectors.copy()
    for j in range(out.shape[1]):
        lead = int(np.argmax(np.abs(out[:, j])))
        if out[lead, j] < 0:
            out[:, j] = -out[:, j]
    return out


def smallest_eigenpairs(matrix: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """K smallest eigenvalues (ascending) with orthonormal eigenvectors.

    The input must be symmetric within 1e-10. Eigenvector signs follow a
    fixed convention so repeated runs are bitwise identical.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError("matrix must be square")
    n = m.shape[0]
    if not 1 <= k <= n:
        raise InvalidInputError(f"k must be in [1, {n}], got {k}")
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise InvalidInputError("matrix is not symmetric")
    values, vectors = np.linalg.eigh(m)
    return values[:k].copy(), _fix_signs(vectors[:, :k])


def relaxed_solution(graph: SignedGraph, k: int) -> RelaxedSolution:
    """Relaxed continuous solution for splitting ``graph`` into k groups.

    Requires a graph with no isolated vertices (every degree positive).
    """
    degrees = signed_degrees(graph)
    lsym = normalized_signed_laplacian(graph)
    values, u = smallest_eigenpairs(lsym, k)
    z = u / np.sqrt(degrees)[:, None]
    return RelaxedSolution(Z=z, eigenvalues=values, U=u)
