"""Ground-truth spectra for small dense matrices.

Deliberately uses a different toolbox than the residual-minimizing solver
(closed forms, QR iteration, normal equations) so that agreement between the
two routes is meaningful evidence rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .linalg import SingularMatrixError, as_matrix, lu_factor, lu_solve

#: Largest dimension the oracle accepts; it exists for tests, not production.
MAX_DIM = 32

#: Subdiagonal entries below this fraction of the matrix scale are deflated.
DEFLATION_RTOL = 1e-12

#: Seed of the unitary similarity applied before QR iteration.  Fixed so the
#: oracle is a deterministic function of its input.
_PRECONDITION_SEED = 1831


class NonConvergenceError(Exception):
    """QR iteration ran out of sweeps; carries whatever deflated so far."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


@dataclass
class SpectrumEstimate:
    """All d eigenvalues of a matrix plus a residual-based quality measure.

    ``max_residual`` is the largest value ``||(T - lam I) x||_2`` over the
    returned eigenvalues, with x the unit near-null direction for lam.
    """

    eigenvalues: np.ndarray
    method: str
    max_residual: float = field(default=0.0)

    def to_json(self) -> dict:
        return {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "method": self.method,
            "max_residual": float(self.max_residual),
        }


def _eig_2x2(a, b, c, e):
    """Eigenvalues of [[a, b], [c, e]] by the stabilized quadratic formula."""
    mean = (a + e) / 2.0
    det = a * e - b * c
    disc = np.sqrt(complex(mean * mean - det))
    # pick the sign that avoids cancellation in mean + disc
    if (mean.real * disc.real + mean.imag * disc.imag) < 0.0:
        disc = -disc
    lam1 = mean + disc
    lam2 = det / lam1 if lam1 != 0.0 else mean - disc
    return complex(lam1), complex(lam2)


def _wilkinson_shift(block: np.ndarray) -> complex:
    lam1, lam2 = _eig_2x2(block[0, 0], block[0, 1], block[1, 0], block[1, 1])
    corner = block[1, 1]
    return lam1 if abs(lam1 - corner) <= abs(lam2 - corner) else lam2


def _qr_eigenvalues(T: np.ndarray, max_sweeps: int) -> list[complex]:
    d = T.shape[0]
    rng = np.random.default_rng(_PRECONDITION_SEED)
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    U, _ = np.linalg.qr(Z)
    H = scipy.linalg.hessenberg(U.conj().T @ T @ U)
    scale = float(np.sqrt((np.abs(H) ** 2).sum()))
    cutoff = DEFLATION_RTOL * max(scale, np.finfo(float).tiny)

    eigs: list[complex] = []
    hi = d - 1
    sweeps = 0
    since_deflation = 0
    while hi >= 0:
        # deflate converged trailing entries
        while hi > 0 and abs(H[hi, hi - 1]) <= cutoff:
            eigs.append(complex(H[hi, hi]))
            hi -= 1
            since_deflation = 0
        if hi == 0:
            eigs.append(complex(H[0, 0]))
            hi = -1
            break
        # active unreduced block [lo, hi]
        lo = hi
        while lo > 0 and abs(H[lo, lo - 1]) > cutoff:
            lo -= 1
        if hi - lo == 1:
            lam1, lam2 = _eig_2x2(H[lo, lo], H[lo, hi], H[hi, lo], H[hi, hi])
            eigs.extend([lam1, lam2])
            hi = lo - 1
            since_deflation = 0
            continue
        if sweeps >= max_sweeps:
            raise NonConvergenceError(
                f"QR iteration did not converge in {max_sweeps} sweeps "
                f"({len(eigs)} of {d} eigenvalues deflated)",
                partial=np.array(eigs, dtype=np.complex128),
            )
        mu = _wilkinson_shift(H[hi - 1 : hi + 1, hi - 1 : hi + 1])
        if since_deflation and since_deflation % 40 == 0:
            # occasional exceptional shift to break rare shift cycles
            mu = complex(H[hi, hi]) + 1.5 * abs(H[hi, hi - 1])
        block = H[lo : hi + 1, lo : hi + 1]
        m = block.shape[0]
        Q, R = np.linalg.qr(block - mu * np.eye(m))
        H[lo : hi + 1, lo : hi + 1] = R @ Q + mu * np.eye(m)
        sweeps += 1
        since_deflation += 1
    return eigs


def reference_spectrum(T, max_sweeps: int = 2000) -> SpectrumEstimate:
    """All eigenvalues of T: closed form for d <= 2, QR iteration above.

    The iteration works on a randomly (but deterministically) rotated copy
    of T and deflates subdiagonal entries below ``DEFLATION_RTOL`` times the
    matrix scale.  Raises :class:`NonConvergenceError` after ``max_sweeps``.
    """
    T = as_matrix(T)
    d = T.shape[0]
    if d > MAX_DIM:
        raise ValueError(f"oracle supports dim <= {MAX_DIM}, got {d}")
    if d == 1:
        eigs = [complex(T[0, 0])]
        method = "closed_form_2x2"
    elif d == 2:
        eigs = list(_eig_2x2(T[0, 0], T[0, 1], T[1, 0], T[1, 1]))
        method = "closed_form_2x2"
    else:
        eigs = _qr_eigenvalues(T.copy(), max_sweeps)
        method = "qr_iteration"
    values = np.array(sorted(eigs, key=lambda z: (z.real, z.imag)), dtype=np.complex128)
    worst = 0.0
    eye = np.eye(d)
    for lam in values:
        _, s = smallest_singular_direction(T - lam * eye)
        worst = max(worst, s)
    return SpectrumEstimate(eigenvalues=values, method=method, max_residual=worst)


def smallest_singular_direction(A, max_iters: int = 200):
    """Unit vector x and value s = ||A x||_2 at the smallest singular value.

    Runs inverse iteration on the normal-equations matrix A*A.  If that
    matrix is numerically singular the near-null direction recovered from
    the failed elimination already is the answer.
    """
    A = as_matrix(A)
    d = A.shape[0]
    if d > MAX_DIM:
        raise ValueError(f"oracle supports dim <= {MAX_DIM}, got {d}")
    if not np.any(A):
        x = np.zeros(d, dtype=np.complex128)
        x[0] = 1.0
        return x, 0.0
    gram = A.conj().T @ A
    try:
        factor = lu_factor(gram)
    except SingularMatrixError as err:
        x = err.near_null
        return x, float(np.linalg.norm(A @ x))
    diag = np.abs(np.diag(gram))
    x = np.ones(d, dtype=np.complex128)
    x[int(np.argmin(diag))] += 1.0
    x /= np.linalg.norm(x)
    s_prev = np.inf
    for _ in range(max_iters):
        y = lu_solve(factor, x)
        ny = np.linalg.norm(y)
        if not np.isfinite(ny) or ny == 0.0:
            break
        x = y / ny
        s = float(np.linalg.norm(A @ x))
        if abs(s_prev - s) <= 1e-12 * max(s, 1e-300):
            s_prev = s
            break
        s_prev = s
    return x, float(np.linalg.norm(A @ x))
