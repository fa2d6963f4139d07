"""Seeded random instance generators shared by the test suites and the CLI.

All functions take an explicit ``numpy.random.Generator`` so every caller
controls reproducibility.
"""

from __future__ import annotations

import numpy as np

from .linalg import vec_norm
from .oracle import reference_spectrum


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit_vector(d: int, rng: np.random.Generator, norm: str = "two") -> np.ndarray:
    """Random direction, normalized in the requested norm."""
    while True:
        v = complex_gaussian(rng, d)
        n = vec_norm(v, norm)
        if n > 1e-6:
            return v / n


def random_disk_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    """Matrix with iid entries uniform on the closed unit disk."""
    radius = np.sqrt(rng.uniform(0.0, 1.0, (d, d)))
    angle = rng.uniform(0.0, 2.0 * np.pi, (d, d))
    return radius * np.exp(1j * angle)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    Q, R = np.linalg.qr(complex_gaussian(rng, (d, d)))
    # fix phases so the factor is unique given the sample
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_normal_matrix(d: int, rng: np.random.Generator, radius: float = 2.0):
    """Unitarily diagonalizable matrix; returns (T, planted eigenvalues)."""
    eigs = radius * np.sqrt(rng.uniform(0.0, 1.0, d)) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, d))
    U = random_unitary(d, rng)
    return (U * eigs) @ U.conj().T, eigs


def random_invertible_matrix(
    d: int,
    rng: np.random.Generator,
    min_eig_modulus: float = 0.1,
    max_tries: int = 200,
) -> np.ndarray:
    """Unit-disk-entry matrix whose spectrum stays off the origin.

    Rejection-samples until every eigenvalue modulus is at least
    ``min_eig_modulus``, which keeps all shifted resolvents in the identity
    checks safely invertible.
    """
    for _ in range(max_tries):
        S = random_disk_matrix(d, rng)
        eigs = reference_spectrum(S).eigenvalues
        if np.abs(eigs).min() >= min_eig_modulus:
            return S
    raise RuntimeError(f"no invertible sample found in {max_tries} tries (d={d})")


def safe_shift(S, rng: np.random.Generator, fraction: float = 0.5) -> complex:
    """Shift drawn uniformly from the disk of radius ``fraction`` times the
    smallest eigenvalue modulus of S, so S and every rotated shift of S stay
    invertible."""
    eigs = reference_spectrum(S).eigenvalues
    closest = float(np.abs(eigs).min())
    if closest == 0.0:
        raise ValueError("operator is singular; no safe shift exists")
    r = fraction * closest * np.sqrt(rng.uniform(0.0, 1.0))
    return complex(r * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))


def shift_away_from_spectrum(
    T,
    rng: np.random.Generator,
    margin: float = 0.5,
    box: float = 3.0,
    max_tries: int = 500,
) -> complex:
    """Random shift at distance >= ``margin`` from every eigenvalue of T,
    keeping the shifted operator well conditioned."""
    eigs = reference_spectrum(T).eigenvalues
    for _ in range(max_tries):
        lam = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        if np.abs(eigs - lam).min() >= margin:
            return lam
    raise RuntimeError("could not find a shift away from the spectrum")
