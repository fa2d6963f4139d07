"""Derivative-free minimizers used where no closed form exists.

Two searches live here: a 2-d compass search over a complex scalar (the
shift that best explains a fixed direction under the 1- or inf-norm, where
the objective is convex but nonsmooth) and a multistart compass search over
directions on the unit sphere (the smallest residual any direction can
achieve at a fixed shift).
"""

from __future__ import annotations

import numpy as np

from .linalg import batch_vec_norm, vec_norm

# Eight compass directions in the complex plane.
_PLANE_DIRS = np.array(
    [1.0, -1.0, 1j, -1j, (1 + 1j) / np.sqrt(2), (1 - 1j) / np.sqrt(2), (-1 + 1j) / np.sqrt(2), (-1 - 1j) / np.sqrt(2)],
    dtype=np.complex128,
)


def argmin_plane(evaluate, start: complex, step: float, min_step: float = 1e-12):
    """Adaptive compass search for a convex objective over the complex plane.

    ``evaluate`` maps a 1-d array of complex candidates to their objective
    values.  The step halves whenever no compass move improves, so the
    accepted value never increases.  Returns (argmin, value).
    """
    center = complex(start)
    value = float(evaluate(np.array([center]))[0])
    step = float(step)
    while step > min_step:
        candidates = center + step * _PLANE_DIRS
        values = evaluate(candidates)
        best = int(np.argmin(values))
        if values[best] < value:
            center = complex(candidates[best])
            value = float(values[best])
        else:
            step *= 0.5
    return center, value


def min_scaled_residual(w: np.ndarray, v: np.ndarray, norm: str, start: complex, step: float):
    """Minimize ``||w - lam v||`` over lam by compass search."""

    def evaluate(lams: np.ndarray) -> np.ndarray:
        return batch_vec_norm(w[None, :] - lams[:, None] * v[None, :], norm)

    return argmin_plane(evaluate, start, step)


def _sphere_descent(A: np.ndarray, v: np.ndarray, norm: str, min_step: float) -> tuple[np.ndarray, float]:
    """Compass descent of ``||A v|| / ||v||`` from one starting direction.

    Polls all coordinate perturbations (real and imaginary, both signs) at
    the current step, renormalizing after each accepted move.  The ratio is
    scale invariant, so normalization never changes the objective.
    """
    d = A.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    dirs = np.concatenate([eye, -eye, 1j * eye, -1j * eye], axis=0)
    v = v / vec_norm(v, norm)
    value = vec_norm(A @ v, norm)
    step = 1.0
    while step > min_step:
        candidates = v[None, :] + step * dirs
        lengths = batch_vec_norm(candidates, norm)
        ratios = np.where(lengths > 1e-300, batch_vec_norm(candidates @ A.T, norm) / np.maximum(lengths, 1e-300), np.inf)
        best = int(np.argmin(ratios))
        if ratios[best] < value:
            v = candidates[best]
            v = v / vec_norm(v, norm)
            value = float(ratios[best])
        else:
            step *= 0.5
    return v, value


def min_direction_residual(
    A: np.ndarray,
    norm: str,
    rng: np.random.Generator,
    starts: int = 32,
    seeded_starts: list[np.ndarray] | None = None,
    min_step: float = 1e-9,
) -> tuple[np.ndarray, float]:
    """Smallest value of ``||A v|| / ||v||`` over directions v.

    Multistart compass search: any provided ``seeded_starts`` run first,
    then coordinate directions, then random directions until ``starts``
    total.  Returns the best (unit vector, ratio) found.
    """
    d = A.shape[0]
    pool: list[np.ndarray] = list(seeded_starts or [])
    for i in range(min(d, 4)):
        e = np.zeros(d, dtype=np.complex128)
        e[i] = 1.0
        pool.append(e)
    while len(pool) < starts:
        pool.append(rng.standard_normal(d) + 1j * rng.standard_normal(d))
    best_v, best_value = None, np.inf
    for v0 in pool[:max(starts, len(seeded_starts or []))]:
        v, value = _sphere_descent(A, v0.astype(np.complex128), norm, min_step)
        if value < best_value:
            best_v, best_value = v, value
    return best_v, float(best_value)
