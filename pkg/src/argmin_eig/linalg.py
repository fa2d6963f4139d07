"""Dense complex linear algebra substrate: norms, residuals, LU solves.

Everything here works on plain numpy arrays of dtype complex128.  Vectors
are 1-d arrays, operators are square 2-d arrays.  Inputs are validated once
at the boundary (finite entries, matching shapes) and all functions are pure.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

#: Supported vector norms.  "one" and "inf" admit exact induced operator
#: norms; "two" uses the Frobenius norm as a cheap valid upper bound.
NORM_KINDS = ("one", "two", "inf")

# A pivot this small relative to the largest initial entry is treated as a
# numerically singular elimination step.
PIVOT_RTOL = 1e-14


class SingularMatrixError(Exception):
    """Raised when LU elimination meets a pivot below the singularity cutoff.

    Carries the column index of the failing pivot and a unit 2-norm vector
    ``near_null`` with ``A @ near_null`` small, recovered from the partially
    eliminated matrix.
    """

    def __init__(self, message, pivot_index=None, near_null=None):
        super().__init__(message)
        self.pivot_index = pivot_index
        self.near_null = near_null


class MatrixParseError(ValueError):
    """Malformed matrix input (wrong shape, counts, or non-finite entries)."""


def as_scalar(z) -> complex:
    """Validate a finite complex scalar."""
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError("scalar must be finite")
    return z


def as_vector(v) -> np.ndarray:
    """Coerce to a finite complex 1-d array of length >= 1."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"expected a 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("vector entries must be finite")
    return arr


def as_matrix(T) -> np.ndarray:
    """Coerce to a finite square complex 2-d array."""
    arr = np.asarray(T, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("matrix entries must be finite")
    return arr


def _check_norm(norm: str) -> str:
    if norm not in NORM_KINDS:
        raise ValueError(f"unknown norm {norm!r}, expected one of {NORM_KINDS}")
    return norm


def vec_norm(v, norm: str = "two") -> float:
    """Vector norm ``||v||`` for the selected kind; zero iff v == 0."""
    v = as_vector(v)
    _check_norm(norm)
    mods = np.abs(v)
    if norm == "one":
        return float(mods.sum())
    if norm == "inf":
        return float(mods.max())
    # rescale so squaring cannot underflow or overflow
    peak = float(mods.max())
    if peak == 0.0:
        return 0.0
    scaled = mods / peak
    return peak * float(np.sqrt((scaled * scaled).sum()))


def batch_vec_norm(rows: np.ndarray, norm: str = "two") -> np.ndarray:
    """Row-wise norms of a 2-d array; the batched form of :func:`vec_norm`."""
    _check_norm(norm)
    mods = np.abs(rows)
    if norm == "one":
        return mods.sum(axis=1)
    if norm == "inf":
        return mods.max(axis=1)
    return np.sqrt((mods * mods).sum(axis=1))


def apply(T, v) -> np.ndarray:
    """Matrix-vector product ``T v`` with an explicit dimension check."""
    T = as_matrix(T)
    v = as_vector(v)
    if T.shape[0] != v.shape[0]:
        raise ValueError(f"dimension mismatch: operator is {T.shape[0]}, vector is {v.shape[0]}")
    return T @ v


def residual(T, v, lam, norm: str = "two") -> float:
    """Residual value ``||T v - lam v||``."""
    T = as_matrix(T)
    v = as_vector(v)
    lam = as_scalar(lam)
    if T.shape[0] != v.shape[0]:
        raise ValueError(f"dimension mismatch: operator is {T.shape[0]}, vector is {v.shape[0]}")
    return vec_norm(T @ v - lam * v, norm)


def residual_ratio(T, v, lam, norm: str = "two") -> float:
    """Normalized residual ``||T v - lam v|| / ||v||``; undefined at v = 0."""
    v = as_vector(v)
    denom = vec_norm(v, norm)
    if denom == 0.0:
        raise ValueError("residual ratio is undefined for the zero vector")
    return residual(T, v, lam, norm) / denom


def operator_bound(T, norm: str = "two") -> float:
    """A constant C with ``||T v|| <= C ||v||`` for every v.

    Exact induced norms for "one" (max column sum of moduli) and "inf"
    (max row sum); the Frobenius norm for "two", which over-estimates the
    sharp induced value but keeps the bound cheap and exact to evaluate.
    """
    T = as_matrix(T)
    _check_norm(norm)
    mods = np.abs(T)
    if norm == "one":
        return float(mods.sum(axis=0).max())
    if norm == "inf":
        return float(mods.sum(axis=1).max())
    return float(np.sqrt((mods * mods).sum()))


def coercivity_gap(T, v, lam, norm: str = "two", bound: float | None = None) -> float:
    """Slack ``||T v - lam v|| - (|lam| - C) ||v||``, nonnegative up to rounding.

    With C = ``operator_bound(T, norm)`` the triangle inequality forces the
    residual to dominate ``(|lam| - C) ||v||``, which is what makes large
    shifts unprofitable for the minimizer.
    """
    T = as_matrix(T)
    v = as_vector(v)
    lam = as_scalar(lam)
    if bound is None:
        bound = operator_bound(T, norm)
    return residual(T, v, lam, norm) - (abs(lam) - float(bound)) * vec_norm(v, norm)


class LUFactor:
    """LU factorization with partial pivoting of a square complex matrix.

    ``lu`` stores U on and above the diagonal and the unit-lower-triangular
    multipliers below it; ``perm`` maps factored row -> original row.
    """

    __slots__ = ("lu", "perm", "scale")

    def __init__(self, lu: np.ndarray, perm: np.ndarray, scale: float):
        self.lu = lu
        self.perm = perm
        self.scale = scale

    @property
    def dim(self) -> int:
        return self.lu.shape[0]


def _near_null_vector(lu: np.ndarray, k: int) -> np.ndarray:
    """Unit vector x with ``A x`` small, from a failed pivot at column k.

    The leading k x k block of U is nonsingular (its pivots passed the
    cutoff), so back-substitution against column k yields a vector the
    original matrix nearly annihilates.  Column permutations are never
    performed, so x needs no reordering.
    """
    d = lu.shape[0]
    x = np.zeros(d, dtype=np.complex128)
    x[k] = 1.0
    for i in range(k - 1, -1, -1):
        x[i] = -(lu[i, i + 1 : k + 1] @ x[i + 1 : k + 1]) / lu[i, i]
    return x / np.sqrt(float((np.abs(x) ** 2).sum()))


def lu_factor(A) -> LUFactor:
    """Factor A = P^T L U with partial pivoting.

    Raises :class:`SingularMatrixError` when a pivot falls below
    ``PIVOT_RTOL`` times the largest initial entry magnitude, which is the
    numerical signature of applying a resolvent exactly at an eigenvalue.
    """
    A = as_matrix(A)
    d = A.shape[0]
    lu = A.copy()
    perm = np.arange(d)
    scale = float(np.abs(A).max())
    cutoff = PIVOT_RTOL * scale
    for k in range(d):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if scale == 0.0 or abs(lu[p, k]) < cutoff or lu[p, k] == 0.0:
            if p != k:
                lu[[k, p], :] = lu[[p, k], :]
            raise SingularMatrixError(
                f"singular system: pivot {abs(lu[k, k]):.3e} below cutoff "
                f"{cutoff:.3e} at column {k}",
                pivot_index=k,
                near_null=_near_null_vector(lu, k),
            )
        if p != k:
            lu[[k, p], :] = lu[[p, k], :]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1 :, k] /= lu[k, k]
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return LUFactor(lu, perm, scale)


def lu_solve(factor: LUFactor, b) -> np.ndarray:
    """Solve A x = b given a factorization; b may be a vector or a matrix
    of stacked right-hand-side columns."""
    B = np.asarray(b, dtype=np.complex128)
    single = B.ndim == 1
    if single:
        B = B[:, None]
    if B.shape[0] != factor.dim:
        raise ValueError(f"dimension mismatch: factor is {factor.dim}, rhs has {B.shape[0]} rows")
    lu = factor.lu
    X = B[factor.perm].copy()
    d = factor.dim
    for k in range(d - 1):
        X[k + 1 :] -= np.outer(lu[k + 1 :, k], X[k])
    for k in range(d - 1, -1, -1):
        X[k] /= lu[k, k]
        if k:
            X[:k] -= np.outer(lu[:k, k], X[k])
    return X[:, 0] if single else X


def solve(A, b) -> np.ndarray:
    """Solve A x = b by LU with partial pivoting."""
    b_arr = np.asarray(b, dtype=np.complex128)
    if b_arr.ndim == 1:
        as_vector(b_arr)
    return lu_solve(lu_factor(A), b_arr)


# ---------------------------------------------------------------------------
# Matrix file format: JSON {"dim": d, "entries": [[re, im], ...]} row-major,
# or CSV with 2d interleaved (re, im) values per row.


def _entry_pair(entry, index: int, source: str) -> complex:
    try:
        re, im = entry
        re = float(re)
        im = float(im)
    except (TypeError, ValueError) as exc:
        raise MatrixParseError(f"{source}: entries[{index}]: expected a [re, im] pair") from exc
    if not (np.isfinite(re) and np.isfinite(im)):
        raise MatrixParseError(f"{source}: entries[{index}]: non-finite value")
    return complex(re, im)


def parse_matrix_json(text: str, source: str = "<json>") -> np.ndarray:
    """Parse the JSON matrix format; errors name the offending entry."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"{source}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise MatrixParseError(f'{source}: expected an object with "dim" and "entries"')
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise MatrixParseError(f"{source}: dim must be a positive integer, got {dim!r}")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != dim * dim:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise MatrixParseError(f"{source}: expected {dim * dim} entries for dim {dim}, got {got}")
    flat = [_entry_pair(e, i, source) for i, e in enumerate(entries)]
    return np.array(flat, dtype=np.complex128).reshape(dim, dim)


def parse_matrix_csv(text: str, source: str = "<csv>") -> np.ndarray:
    """Parse the CSV matrix format (row i holds re, im, re, im, ... for row i)."""
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(f.strip() for f in row)]
    if not rows:
        raise MatrixParseError(f"{source}: empty input")
    d = len(rows)
    out = np.zeros((d, d), dtype=np.complex128)
    for i, row in enumerate(rows):
        fields = [f for f in (s.strip() for s in row) if f]
        if len(fields) != 2 * d:
            raise MatrixParseError(
                f"{source}: row {i}: expected {2 * d} values for a {d}x{d} matrix, got {len(fields)}"
            )
        for j in range(d):
            try:
                re = float(fields[2 * j])
                im = float(fields[2 * j + 1])
            except ValueError as exc:
                raise MatrixParseError(f"{source}: row {i}, column {j}: not a number") from exc
            if not (np.isfinite(re) and np.isfinite(im)):
                raise MatrixParseError(f"{source}: row {i}, column {j}: non-finite value")
            out[i, j] = complex(re, im)
    return out


def load_matrix(path) -> np.ndarray:
    """Load a matrix from a .json or .csv file (sniffed by leading '{' otherwise)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    name = str(path)
    if name.endswith(".json") or text.lstrip().startswith("{"):
        return parse_matrix_json(text, source=name)
    return parse_matrix_csv(text, source=name)


def matrix_to_json(T) -> dict:
    """Serialize a matrix to the JSON wire format."""
    T = as_matrix(T)
    return {
        "dim": int(T.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in T.ravel()],
    }
