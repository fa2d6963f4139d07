"""Eigenpair search by global minimization of the normalized residual.

The objective ``||T v - lam v|| / ||v||`` is continuous, reaches its global
minimum on the compact set {unit v} x {|lam| <= ||T v0|| + C}, and that
minimum is zero exactly at eigenpairs.  The search alternates two moves that
each cannot increase the objective:

* at fixed v, pick the best shift (closed form for the 2-norm, convex
  compass search for the 1- and inf-norms);
* at fixed shift, sharpen v by one resolvent application (shifted inverse
  iteration), keeping the previous v whenever the step would not help.

A numerically singular resolvent is the goal state, not an error: it means
the shift has landed on an eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._patternsearch import min_scaled_residual
from .linalg import (
    SingularMatrixError,
    apply,
    as_matrix,
    as_vector,
    lu_factor,
    lu_solve,
    operator_bound,
    vec_norm,
)

#: Iterations stop once the accepted residual improves by less than this
#: over STAGNATION_WINDOW consecutive iterations.
STAGNATION_EPS = 1e-15
STAGNATION_WINDOW = 10


@dataclass
class SearchDomain:
    """Compact region guaranteed to contain a global residual minimizer.

    Any shift outside the disk of ``radius = start_image_norm + bound``
    gives a residual strictly worse than the trivial candidate (v0, 0), so
    the search never needs to leave it.
    """

    radius: float
    bound: float
    start_image_norm: float


@dataclass
class CandidatePair:
    """A unit vector, a shift, and their cached normalized residual."""

    v: np.ndarray
    lam: complex
    residual_ratio: float


@dataclass
class RestartResult:
    """Outcome of one descent run, with the accepted-residual trace."""

    pair: CandidatePair
    iterations: int
    converged: bool
    trace: list = field(default_factory=list)
    hit_singular: bool = False


@dataclass
class Certificate:
    """Best pair found, its residual, and the domain it was certified on.

    ``converged`` means the normalized residual dropped to ``tolerance``,
    which is the numerical statement that (v, lam) is an eigenpair.
    """

    pair: CandidatePair
    domain: SearchDomain
    iterations: int
    converged: bool
    tolerance: float
    norm: str
    seed: int

    @property
    def residual(self) -> float:
        return self.pair.residual_ratio

    def to_json(self) -> dict:
        return {
            "lambda": [float(self.pair.lam.real), float(self.pair.lam.imag)],
            "v": [[float(z.real), float(z.imag)] for z in self.pair.v],
            "residual": float(self.residual),
            "C": float(self.domain.bound),
            "radius": float(self.domain.radius),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "norm": self.norm,
            "seed": int(self.seed),
        }


def default_tolerance(T, norm: str = "two") -> float:
    """Convergence tolerance scaled to the operator: 1e-10 * (1 + C)."""
    return 1e-10 * (1.0 + operator_bound(T, norm))


def search_domain(T, v0, norm: str = "two") -> SearchDomain:
    """Shift disk radius ``||T v0|| + C`` for a unit starting vector v0."""
    T = as_matrix(T)
    v0 = as_vector(v0)
    image_norm = vec_norm(apply(T, v0), norm)
    bound = operator_bound(T, norm)
    return SearchDomain(radius=image_norm + bound, bound=bound, start_image_norm=image_norm)


def _clamp_to_disk(lam: complex, radius: float) -> complex:
    mod = abs(lam)
    if mod <= radius:
        return lam
    if radius == 0.0:
        return 0.0 + 0.0j
    return lam * (radius / mod)


def best_lambda(T, v, norm: str = "two", step: float | None = None) -> complex:
    """Shift minimizing ``||T v - lam v||`` at fixed v.

    For the 2-norm this is the orthogonal projection ``<v, Tv> / <v, v>``.
    For the 1- and inf-norms the objective is convex in (Re lam, Im lam)
    and a compass search shrinking from ``step`` down to 1e-12 finds the
    minimum without derivatives; it starts from the 2-norm projection,
    which is already exact whenever v is an eigenvector.
    """
    T = as_matrix(T)
    v = as_vector(v)
    if vec_norm(v, norm) == 0.0:
        raise ValueError("best shift is undefined for the zero vector")
    w = apply(T, v)
    projection = complex(np.vdot(v, w) / np.vdot(v, v))
    if norm == "two":
        return projection
    if step is None:
        step = operator_bound(T, norm) + vec_norm(w, norm) / vec_norm(v, norm)
    if step <= 0.0:
        return projection
    lam, _ = min_scaled_residual(w, v, norm, start=projection, step=step)
    return lam


def make_pair(T, v, lam, norm: str = "two") -> CandidatePair:
    """Normalize v and cache the residual ratio."""
    v = as_vector(v)
    scale = vec_norm(v, norm)
    if scale == 0.0:
        raise ValueError("candidate vector must be nonzero")
    unit = v / scale
    ratio = vec_norm(apply(as_matrix(T), unit) - complex(lam) * unit, norm)
    return CandidatePair(v=unit, lam=complex(lam), residual_ratio=ratio)


def _resolvent_step(T: np.ndarray, v: np.ndarray, lam: complex, norm: str):
    """One shifted inverse-iteration step; returns (unit vector, hit_singular).

    A singular shifted system means lam is numerically an eigenvalue, so the
    step retries with a perturbed shift and reports the hit; if even that
    fails, the direction is left unchanged.
    """
    d = T.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    try:
        y = lu_solve(lu_factor(T - lam * eye), v)
        hit = False
    except SingularMatrixError:
        eps = 1e-10 * (1.0 + abs(lam))
        try:
            y = lu_solve(lu_factor(T - (lam + eps) * eye), v)
        except SingularMatrixError:
            return v.copy(), True
        hit = True
    scale = vec_norm(y, norm)
    if scale == 0.0 or not np.all(np.isfinite(y)):
        return v.copy(), hit
    return y / scale, hit


def improve_v(T, pair: CandidatePair, norm: str = "two"):
    """Sharpened unit vector from one resolvent application at the pair's
    shift; returns (vector, hit_singular)."""
    T = as_matrix(T)
    return _resolvent_step(T, as_vector(pair.v), complex(pair.lam), norm)


def descend(T, v_start, norm: str, domain: SearchDomain, tolerance: float, max_iters: int = 500) -> RestartResult:
    """Alternating minimization from one start; the accepted residual never
    increases (a worsening step keeps the previous candidate)."""
    T = as_matrix(T)
    v = as_vector(v_start)
    v = v / vec_norm(v, norm)
    lam = _clamp_to_disk(best_lambda(T, v, norm, step=domain.radius), domain.radius)
    value = vec_norm(apply(T, v) - lam * v, norm)
    trace = [value]
    hit_any = False
    iterations = 0
    converged = value <= tolerance
    while not converged and iterations < max_iters:
        iterations += 1
        v_new, hit = _resolvent_step(T, v, lam, norm)
        hit_any = hit_any or hit
        lam_new = _clamp_to_disk(best_lambda(T, v_new, norm, step=domain.radius), domain.radius)
        value_new = vec_norm(apply(T, v_new) - lam_new * v_new, norm)
        if value_new <= value:
            v, lam, value = v_new, lam_new, value_new
        trace.append(value)
        if value <= tolerance:
            converged = True
            break
        if len(trace) > STAGNATION_WINDOW and trace[-1 - STAGNATION_WINDOW] - value < STAGNATION_EPS:
            break
    return RestartResult(
        pair=CandidatePair(v=v, lam=lam, residual_ratio=value),
        iterations=iterations,
        converged=converged,
        trace=trace,
        hit_singular=hit_any,
    )


def minimize(
    T,
    norm: str = "two",
    tolerance: float | None = None,
    max_iters: int = 500,
    seed: int = 0,
    restarts: int = 4,
) -> Certificate:
    """Search for an eigenpair from a deterministic start plus seeded
    random restarts; always returns the best pair found, converged or not.

    The restarts are independent; the winner is the lowest residual with
    ties broken by start index, so the result is reproducible for a given
    seed.
    """
    T = as_matrix(T)
    d = T.shape[0]
    if tolerance is None:
        tolerance = default_tolerance(T, norm)
    e1 = np.zeros(d, dtype=np.complex128)
    e1[0] = 1.0
    domain = search_domain(T, e1, norm)
    rng = np.random.default_rng(seed)
    starts = [e1]
    for _ in range(restarts):
        g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        starts.append(g / vec_norm(g, norm))
    best: RestartResult | None = None
    for candidate_start in starts:
        outcome = descend(T, candidate_start, norm, domain, tolerance, max_iters)
        if best is None or outcome.pair.residual_ratio < best.pair.residual_ratio:
            best = outcome
        if best.converged and best.pair.residual_ratio == 0.0:
            break
    return Certificate(
        pair=best.pair,
        domain=domain,
        iterations=best.iterations,
        converged=best.converged,
        tolerance=tolerance,
        norm=norm,
        seed=seed,
    )
