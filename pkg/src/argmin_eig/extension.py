"""Moving a candidate pair to a new shift without changing its residual vector.

For v_new = (T - mu I)^{-1} (T - lam I) v the defect vectors agree exactly:
T v_new - mu v_new = T v - lam v.  Only the vector's length changes, so the
normalized residual scales by ||v|| / ||v_new||.  This module computes that
map, measures how exactly the conservation holds in floating point, and
checks the companion resolvent bound ``||(T - mu I)^{-1} w|| <= ||w|| / c``
where c floors the residual ratio at the shift mu.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._patternsearch import min_direction_residual
from .linalg import as_matrix, as_scalar, as_vector, lu_factor, lu_solve, operator_bound, vec_norm
from .oracle import smallest_singular_direction
from .sampling import random_unit_vector

#: Input residual vectors below this relative size make the mapped vector
#: numerically zero and the outcome degenerate.
DEGENERATE_RTOL = 1e-13


@dataclass
class ExtensionResult:
    """Mapped vector plus the measured conservation drift and length change."""

    v_new: np.ndarray
    residual_vector_drift: float
    norm_growth: float
    degenerate: bool = False


def extend_pair(T, v, lam, new_lam, norm: str = "two") -> ExtensionResult:
    """Map (v, lam) to the vector carrying the same residual at ``new_lam``.

    Propagates :class:`~argmin_eig.linalg.SingularMatrixError` when
    ``new_lam`` is numerically an eigenvalue; the error's ``near_null``
    direction is then itself a high-quality eigenvector candidate.  When v
    is already an eigenvector the mapped vector collapses to zero and the
    result is flagged degenerate instead.
    """
    T = as_matrix(T)
    v = as_vector(v)
    lam = as_scalar(lam)
    new_lam = as_scalar(new_lam)
    scale = vec_norm(v, norm)
    if scale == 0.0:
        raise ValueError("cannot extend the zero vector")
    d = T.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    defect = T @ v - lam * v
    v_new = lu_solve(lu_factor(T - new_lam * eye), defect)
    new_defect = T @ v_new - new_lam * v_new
    drift = vec_norm(new_defect - defect, norm)
    growth = vec_norm(v_new, norm) / scale
    degenerate = vec_norm(defect, norm) <= DEGENERATE_RTOL * (1.0 + operator_bound(T, norm)) * scale
    return ExtensionResult(
        v_new=v_new,
        residual_vector_drift=drift,
        norm_growth=growth,
        degenerate=degenerate,
    )


def min_residual_at_shift(T, lam, norm: str = "two", starts: int = 32, seed: int = 0) -> float:
    """Floor of ``||T v - lam v|| / ||v||`` over directions v at fixed lam.

    Exact (smallest singular value) for the 2-norm; multistart compass
    search otherwise, seeded with the singular direction and the coordinate
    axes so the search starts where the floor is likely attained.
    """
    T = as_matrix(T)
    lam = as_scalar(lam)
    A = T - lam * np.eye(T.shape[0], dtype=np.complex128)
    direction, smallest = smallest_singular_direction(A)
    if norm == "two":
        return float(smallest)
    rng = np.random.default_rng(seed)
    _, value = min_direction_residual(A, norm, rng, starts=starts, seeded_starts=[direction])
    return float(value)


@dataclass
class InverseBoundReport:
    """Outcome of sampling the resolvent bound at one shift."""

    lam: complex
    norm: str
    floor: float
    trials: int
    violations: int
    worst_quotient: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {
            "lambda": [float(self.lam.real), float(self.lam.imag)],
            "norm": self.norm,
            "floor": float(self.floor),
            "trials": int(self.trials),
            "violations": int(self.violations),
            "worst_quotient": float(self.worst_quotient),
            "pass": bool(self.passed),
        }


def inverse_norm_bound_check(T, lam, norm: str = "two", trials: int = 100, seed: int = 0) -> InverseBoundReport:
    """Assert ``||(T - lam I)^{-1} v|| <= ||v|| / c`` on random unit vectors,
    with c the measured residual floor at lam.

    Propagates :class:`~argmin_eig.linalg.SingularMatrixError` when lam is
    numerically an eigenvalue (the floor would be zero and the resolvent
    unbounded).
    """
    T = as_matrix(T)
    lam = as_scalar(lam)
    floor = min_residual_at_shift(T, lam, norm, seed=seed)
    if floor == 0.0:
        raise ValueError("residual floor is zero: the shift sits numerically on the spectrum")
    factor = lu_factor(T - lam * np.eye(T.shape[0], dtype=np.complex128))
    rng = np.random.default_rng(seed)
    violations = 0
    worst = 0.0
    for _ in range(trials):
        v = random_unit_vector(T.shape[0], rng, norm)
        image = lu_solve(factor, v)
        quotient = vec_norm(image, norm) * floor  # == ||image|| / (1 / floor)
        worst = max(worst, quotient)
        if vec_norm(image, norm) > (1.0 / floor) * (1.0 + 1e-8):
            violations += 1
    return InverseBoundReport(
        lam=lam,
        norm=norm,
        floor=floor,
        trials=trials,
        violations=violations,
        worst_quotient=worst,
    )


def decay_term(lam_ref, lam, min_residual: float, n: int) -> float:
    """Scalar factor ``n (|lam - lam_ref| / min_residual)^n``.

    Once the shift distance is below the residual floor this decays to zero
    in n, which is what lets the conserved-residual construction reach every
    shift inside the floor's disk.
    """
    lam_ref = as_scalar(lam_ref)
    lam = as_scalar(lam)
    if min_residual <= 0.0:
        raise ValueError(f"residual floor must be positive, got {min_residual}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return float(n) * (abs(lam - lam_ref) / float(min_residual)) ** n
