"""Numerical verification of the operator identities behind the solver.

The solver's correctness argument rests on three exactly-true algebraic
facts about an invertible operator S, a shift sigma, and the n-th roots of
unity:

* the filter sum  sum_j omega^(k j)  equals n when n divides k, else 0;
* the geometric identity
  (S - omega^j sigma I)^{-1} (S^n - sigma^n I) = sum_k omega^(k j) sigma^k S^(n-1-k);
* the sum-of-inverses identity
  sum_j (S - omega^j sigma I)^{-1} (I - (sigma S^{-1})^n) S = n I.

Each check evaluates both sides with independent arithmetic routes (matrix
powers by repeated multiplication on one side, LU resolvent solves on the
other) and reports the worst entrywise deviation.  Inverses are never
materialized; every ``(.)^{-1}`` is a multi-column LU solve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import SingularMatrixError, as_matrix, as_scalar, lu_factor, lu_solve

#: Relative deviation below which an identity check is considered to pass.
DEFAULT_TOLERANCE = 1e-8


@dataclass
class RootsOfUnity:
    """The primitive n-th root of unity and its first n powers."""

    n: int
    primitive: complex
    powers: np.ndarray


def roots_of_unity(n: int) -> RootsOfUnity:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    powers = np.exp(2j * np.pi * np.arange(n) / n)
    return RootsOfUnity(n=n, primitive=complex(powers[1]) if n > 1 else 1.0 + 0.0j, powers=powers)


def filter_sum(n: int, k: int) -> complex:
    """Direct evaluation of sum_{j=0}^{n-1} omega^(k j).

    Summed term by term on purpose; collapsing to the closed form would
    defeat the check that the roots behave like a discrete filter.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    powers = roots_of_unity(n).powers
    return complex(np.sum(powers**k))


@dataclass
class IdentityReport:
    """Measured deviation of a computed operator expression from its target."""

    n: int
    shift: complex
    deviation: float
    target_scale: float
    check: str = "identity"

    @property
    def relative(self) -> float:
        return self.deviation / max(1.0, self.target_scale)

    def passed(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return self.relative <= tolerance

    def to_json(self, tolerance: float = DEFAULT_TOLERANCE) -> dict:
        return {
            "check": self.check,
            "n": int(self.n),
            "sigma": [float(self.shift.real), float(self.shift.imag)],
            "deviation": float(self.deviation),
            "relative": float(self.relative),
            "pass": bool(self.passed(tolerance)),
        }


def _max_abs(M: np.ndarray) -> float:
    return float(np.abs(M).max())


def _matrix_powers(S: np.ndarray, n: int) -> list[np.ndarray]:
    """[I, S, S^2, ..., S^n] by repeated multiplication."""
    d = S.shape[0]
    powers = [np.eye(d, dtype=np.complex128)]
    for _ in range(n):
        powers.append(powers[-1] @ S)
    return powers


def geometric_identity_check(S, shift, j: int, n: int) -> IdentityReport:
    """Compare the resolvent route against the telescoped geometric sum.

    Left side: (S - omega^j shift I)^{-1} (S^n - shift^n I) via LU solves.
    Right side: sum_{k<n} omega^(k j) shift^k S^(n-1-k) via matrix powers.
    """
    S = as_matrix(S)
    shift = as_scalar(shift)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    d = S.shape[0]
    root = roots_of_unity(n).powers[j % n]
    powers = _matrix_powers(S, n)
    eye = powers[0]
    factor = lu_factor(S - root * shift * eye)
    left = lu_solve(factor, powers[n] - (shift**n) * eye)
    right = np.zeros((d, d), dtype=np.complex128)
    for k in range(n):
        right += (root**k) * (shift**k) * powers[n - 1 - k]
    return IdentityReport(
        n=n,
        shift=shift,
        deviation=_max_abs(left - right),
        target_scale=_max_abs(right),
        check="geometric",
    )


def power_difference_identity_check(S, shift, n: int) -> IdentityReport:
    """Check I - (shift S^{-1})^n against (S^n - shift^n I) S^{-n}.

    Both sides run through the same factorization of S but along different
    arithmetic routes, so the deviation measures how well the power
    difference really factors through the inverse powers.
    """
    S = as_matrix(S)
    shift = as_scalar(shift)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    d = S.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    factor = lu_factor(S)
    scaled = eye.copy()
    for _ in range(n):
        scaled = shift * lu_solve(factor, scaled)
    left = eye - scaled
    inv_pow = eye.copy()
    for _ in range(n):
        inv_pow = lu_solve(factor, inv_pow)
    right = (_matrix_powers(S, n)[n] - (shift**n) * eye) @ inv_pow
    return IdentityReport(
        n=n,
        shift=shift,
        deviation=_max_abs(left - right),
        target_scale=_max_abs(right),
        check="power_difference",
    )


def sum_inverses_check(S, shift, n: int) -> IdentityReport:
    """Verify sum_j (S - omega^j shift I)^{-1} (I - (shift S^{-1})^n) S = n I.

    Terms are accumulated in index order for reproducibility.  A singular
    shifted operator raises :class:`SingularMatrixError` naming the root
    index j responsible.
    """
    S = as_matrix(S)
    shift = as_scalar(shift)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    d = S.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    try:
        base = lu_factor(S)
    except SingularMatrixError as err:
        raise SingularMatrixError(
            f"base operator is singular: {err}",
            pivot_index=err.pivot_index,
            near_null=err.near_null,
        ) from err
    scaled = eye.copy()
    for _ in range(n):
        scaled = shift * lu_solve(base, scaled)
    middle = (eye - scaled) @ S
    roots = roots_of_unity(n).powers
    total = np.zeros((d, d), dtype=np.complex128)
    for j in range(n):
        try:
            factor = lu_factor(S - roots[j] * shift * eye)
        except SingularMatrixError as err:
            raise SingularMatrixError(
                f"shifted operator is singular at root index {j}: {err}",
                pivot_index=err.pivot_index,
                near_null=err.near_null,
            ) from err
        total += lu_solve(factor, middle)
    return IdentityReport(
        n=n,
        shift=shift,
        deviation=_max_abs(total - n * eye),
        target_scale=float(n),
        check="sum_inverses",
    )
