"""Round the continuous embedding to a discrete group indicator.

The continuous matrix Z is aligned to the closest one-seat-per-person
indicator X by alternating minimization of ||X - Z R Lambda||_F over
three blocks: the indicator X (closed-form row argmax), an orthogonal
rotation R (Procrustes step), and a positive diagonal scaling Lambda
(column-separable least squares). Each block update is the exact
minimizer for its block; a guard rejects any full pass that would
increase the residual, which keeps the residual history monotone even
though Z's columns are not exactly orthonormal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

LAMBDA_FLOOR = 1e-8
ACCEPT_SLACK = 1e-10
RELATIVE_IMPROVEMENT_TOL = 1e-6
DEFAULT_MAX_ITER = 100


@dataclass(frozen=True)
class DiscretizationState:
    """State of the alternating loop after its last accepted pass."""

    X: np.ndarray
    R: np.ndarray
    Lambda: np.ndarray
    residual: float
    iteration: int
    residual_history: tuple[float, ...]
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class ProbabilisticSolution:
    """Row-stochastic soft memberships derived from the aligned embedding.

    Rows whose aligned entries were all nonpositive carry no signal and
    are replaced by the uniform distribution; their indices are kept in
    ``degenerate_rows``.
    """

    P: np.ndarray
    degenerate_rows: tuple[int, ...] = ()


def default_epsilon(n: int) -> float:
    """Convergence threshold scaled to the row count of the embedding."""
    return 1e-6 * math.sqrt(n)


def init_rotation(Z: np.ndarray) -> np.ndarray:
    """Initial rotation from K greedily chosen, mutually far row directions.

    Rows of Z are normalized; the first pivot is the row of largest norm,
    then each further pivot minimizes the accumulated cosine similarity
    to the pivots chosen so far (ties by lowest index). The cosine is
    signed on purpose: in a signed embedding, opposing groups point in
    anti-parallel directions, which must count as far apart. The pivots
    are orthonormalized into the columns of R; each column keeps a
    nonnegative component along its own pivot, so columns stay aligned
    with the data rows that elected them (required for the positive
    scaling step downstream). A rank-deficient selection falls back to
    the identity.
    """
    z = np.asarray(Z, dtype=float)
    if z.ndim != 2:
        raise InvalidInputError("Z must be a 2-d matrix")
    n, k = z.shape
    if n < k:
        raise InvalidInputError(f"need at least {k} rows, got {n}")
    if k == 1:
        return np.eye(1)
    norms = np.linalg.norm(z, axis=1)
    if not norms.any():
        return np.eye(k)
    unit = np.divide(z, norms[:, None], out=np.zeros_like(z), where=norms[:, None] > 0)
    chosen = [int(np.argmax(norms))]
    accumulated = np.zeros(n)
    for _ in range(1, k):
        accumulated = accumulated + unit @ unit[chosen[-1]]
        masked = accumulated.copy()
        masked[chosen] = np.inf
        masked[norms == 0.0] = np.inf
        if not np.isfinite(masked).any():
            return np.eye(k)
        chosen.append(int(np.argmin(masked)))
    columns = []
    for row in unit[chosen]:
        vec = row.copy()
        for q in columns:
            vec -= (vec @ q) * q
        norm = np.linalg.norm(vec)
        if norm < 1e-10:
            return np.eye(k)
        columns.append(vec / norm)
    return np.column_stack(columns)


def update_indicator(M: np.ndarray) -> np.ndarray:
    """Closest one-1-per-row indicator to M under the Frobenius norm.

    Row-separable: each row picks its largest entry (ties toward the
    lowest column index).
    """
    m = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("indicator update requires finite input")
    x = np.zeros_like(m)
    x[np.arange(m.shape[0]), np.argmax(m, axis=1)] = 1.0
    return x


def update_rotation(X: np.ndarray, Z: np.ndarray, Lambda: np.ndarray) -> np.ndarray:
    """Procrustes step: R = U V' for the SVD U S V' of Z' X Lambda."""
    m = Z.T @ X * np.asarray(Lambda)[None, :]
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("rotation update requires finite input")
    u, _, vt = np.linalg.svd(m)
    return u @ vt


def update_scaling(X: np.ndarray, Z: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Column-wise least-squares scaling of ZR onto X, clamped positive.

    The exact minimizer per column is <(ZR)_j, X_j> / ||(ZR)_j||^2; any
    value below LAMBDA_FLOOR (including the zero-column case) is clamped
    up so Lambda stays invertible.
    """
    zr = Z @ R
    numerator = (zr * X).sum(axis=0)
    denominator = (zr * zr).sum(axis=0)
    lam = np.divide(
        numerator, denominator, out=np.zeros_like(numerator), where=denominator > 0
    )
    return np.maximum(lam, LAMBDA_FLOOR)


def _frobenius(X: np.ndarray, Z: np.ndarray, R: np.ndarray, lam: np.ndarray) -> float:
    return float(np.linalg.norm(X - (Z @ R) * lam[None, :]))


def alternate_minimize(
    Z: np.ndarray,
    epsilon: float | None = None,
    max_iter: int = DEFAULT_MAX_ITER,
) -> DiscretizationState:
    """Alternating X / R / Lambda minimization of ||X - Z R Lambda||_F.

    One pass per iteration: indicator update, rotation update, scaling
    update, then the residual check. A pass whose residual exceeds the
    previous one (beyond 1e-10 slack) is rejected and the previous state
    returned. The loop also stops on convergence (residual <= epsilon),
    on a relative improvement below 1e-6, or at max_iter.
    """
    z = np.asarray(Z, dtype=float)
    n, k = z.shape
    if epsilon is None:
        epsilon = default_epsilon(n)
    if epsilon <= 0:
        raise InvalidInputError("epsilon must be positive")
    if max_iter < 1:
        raise InvalidInputError("max_iter must be >= 1")

    rotation = init_rotation(z)
    lam = np.ones(k)
    warnings: list[str] = []
    state: DiscretizationState | None = None
    history: list[float] = []

    for iteration in range(1, max_iter + 1):
        x = update_indicator((z @ rotation) * lam[None, :])
        new_rotation = update_rotation(x, z, lam)
        column_norms = np.linalg.norm(z @ new_rotation, axis=0)
        if np.any(column_norms == 0.0) and not warnings:
            warnings.append("zero column in the rotated embedding; scaling clamped")
        new_lam = update_scaling(x, z, new_rotation)
        residual = _frobenius(x, z, new_rotation, new_lam)

        if state is not None and residual > state.residual + ACCEPT_SLACK:
            break  # rejected pass: keep the previous state
        previous = state.residual if state is not None else None
        history.append(residual)
        state = DiscretizationState(
            X=x,
            R=new_rotation,
            Lambda=new_lam,
            residual=residual,
            iteration=iteration,
            residual_history=tuple(history),
            warnings=tuple(warnings),
        )
        rotation, lam = new_rotation, new_lam
        if residual <= epsilon:
            break
        if previous is not None and previous - residual < RELATIVE_IMPROVEMENT_TOL * previous:
            break

    assert state is not None
    return state


def probabilistic_solution(aligned: np.ndarray) -> ProbabilisticSolution:
    """Soft memberships from the aligned continuous matrix Z R Lambda.

    Negative entries are zeroed and each row renormalized to sum to one.
    Rows left with no mass become uniform and are flagged.
    """
    m = np.asarray(aligned, dtype=float)
    p = np.clip(m, 0.0, None)
    sums = p.sum(axis=1)
    degenerate = np.flatnonzero(sums <= 0.0)
    if degenerate.size:
        p[degenerate] = 1.0 / m.shape[1]
        sums = p.sum(axis=1)
    p = p / sums[:, None]
    return ProbabilisticSolution(P=p, degenerate_rows=tuple(int(i) for i in degenerate))
