"""Command-line front end.

Subcommands: ``solve`` (find an eigenpair and print its certificate),
``certify`` (recheck a stored pair), ``verify-identities`` (run the operator
identity suites on seeded instances) and ``landscape`` (sample the residual
surface over the shift disk as CSV).

Exit codes: 0 success, 1 bad input, 2 honest non-convergence.  Identical
inputs and seed produce byte-identical output.  ``ARGMIN_EIG_THREADS``
limits data parallelism (0 or unset = automatic).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .extension import min_residual_at_shift
from .identities import (
    DEFAULT_TOLERANCE,
    filter_sum,
    geometric_identity_check,
    power_difference_identity_check,
    sum_inverses_check,
)
from .linalg import (
    MatrixParseError,
    SingularMatrixError,
    as_vector,
    load_matrix,
    residual_ratio,
    vec_norm,
)
from .minimizer import default_tolerance, minimize
from .oracle import reference_spectrum
from .sampling import random_invertible_matrix, safe_shift


def thread_count() -> int:
    """Worker count from ARGMIN_EIG_THREADS; 0, unset or invalid = auto."""
    raw = os.environ.get("ARGMIN_EIG_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        return min(8, os.cpu_count() or 1)
    return n


def _emit(text: str, output_path: str | None) -> bool:
    print(text)
    if output_path:
        try:
            with open(output_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {output_path}: {exc}", file=sys.stderr)
            return False
    return True


def _load(path: str):
    try:
        return load_matrix(path)
    except FileNotFoundError:
        print(f"error: {path}: no such file", file=sys.stderr)
    except MatrixParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return None


def cmd_solve(args) -> int:
    T = _load(args.matrix)
    if T is None:
        return 1
    cert = minimize(
        T,
        norm=args.norm,
        tolerance=args.tol,
        seed=args.seed,
        restarts=args.restarts,
    )
    payload = cert.to_json()
    if args.oracle:
        payload["oracle"] = reference_spectrum(T).to_json()
    if not _emit(json.dumps(payload), args.output):
        return 1
    return 0 if cert.converged else 2


def cmd_certify(args) -> int:
    T = _load(args.matrix)
    if T is None:
        return 1
    try:
        with open(args.pair, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        lam = complex(obj["lambda"][0], obj["lambda"][1])
        v = as_vector([complex(re, im) for re, im in obj["v"]])
    except FileNotFoundError:
        print(f"error: {args.pair}: no such file", file=sys.stderr)
        return 1
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {args.pair}: malformed pair file: {exc}", file=sys.stderr)
        return 1
    if vec_norm(v, args.norm) == 0.0:
        print("error: pair file holds the zero vector", file=sys.stderr)
        return 1
    if T.shape[0] != v.shape[0]:
        print(f"error: matrix is {T.shape[0]}-dimensional but vector has {v.shape[0]} entries", file=sys.stderr)
        return 1
    tol = args.tol if args.tol is not None else default_tolerance(T, args.norm)
    ratio = residual_ratio(T, v, lam, args.norm)
    ok = ratio <= tol
    if not _emit(json.dumps({"ratio": ratio, "tolerance": tol, "converged": ok}), args.output):
        return 1
    return 0 if ok else 2


def _identity_case(S, shift, n: int) -> list[dict]:
    reports = []
    ks = list(range(0, 2 * n + 1))
    dev = max(abs(filter_sum(n, k) - (n if k % n == 0 else 0.0)) for k in ks)
    reports.append(
        {
            "check": "filter_sum",
            "n": n,
            "sigma": [float(shift.real), float(shift.imag)],
            "deviation": float(dev),
            "relative": float(dev / max(1.0, n)),
            "pass": bool(dev / max(1.0, n) <= DEFAULT_TOLERANCE),
        }
    )
    for j in (0, n // 2, n - 1):
        reports.append(geometric_identity_check(S, shift, j, n).to_json())
    reports.append(power_difference_identity_check(S, shift, n).to_json())
    reports.append(sum_inverses_check(S, shift, n).to_json())
    return reports


def cmd_verify_identities(args) -> int:
    S_fixed = None
    if args.matrix:
        S_fixed = _load(args.matrix)
        if S_fixed is None:
            return 1
    rng = np.random.default_rng(args.seed)
    all_pass = True
    saw_singular = False
    lines = []
    for case in range(args.cases):
        if S_fixed is not None:
            S = S_fixed
        else:
            S = random_invertible_matrix(int(rng.integers(2, 9)), rng)
        n = args.n if args.n is not None else int(rng.integers(2, 13))
        try:
            if args.sigma_eigenvalue:
                eigs = reference_spectrum(S).eigenvalues
                shift = complex(eigs[int(np.argmin(np.abs(eigs)))])
            else:
                shift = safe_shift(S, rng)
            for report in _identity_case(S, shift, n):
                report["case"] = case
                lines.append(json.dumps(report))
                all_pass = all_pass and report["pass"]
        except SingularMatrixError as exc:
            lines.append(json.dumps({"case": case, "error": "singular", "detail": str(exc), "pass": False}))
            saw_singular = True
            all_pass = False
    text = "\n".join(lines)
    if not _emit(text, args.output):
        return 1
    if saw_singular:
        return 1
    return 0 if all_pass else 1


def _landscape_rows(T, xs, ys, cert, norm, restarts, seed):
    v_best = cert.pair.v
    d = T.shape[0]
    eye = np.eye(d, dtype=np.complex128)

    def one_row(iy):
        rows = []
        for ix in range(xs.size):
            lam = complex(xs[ix], ys[iy])
            best_v_res = min_residual_at_shift(T, lam, norm, starts=max(1, restarts), seed=seed)
            fixed_res = vec_norm(T @ v_best - lam * v_best, norm)
            rows.append((float(xs[ix]), float(ys[iy]), float(best_v_res), float(fixed_res)))
        return rows

    workers = thread_count()
    if workers > 1 and ys.size > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_row = list(pool.map(one_row, range(ys.size)))
    else:
        per_row = [one_row(iy) for iy in range(ys.size)]
    for row in per_row:
        yield from row


def cmd_landscape(args) -> int:
    if args.grid < 3 or args.grid % 2 == 0:
        print(f"error: grid must be odd and >= 3, got {args.grid}", file=sys.stderr)
        return 1
    T = _load(args.matrix)
    if T is None:
        return 1
    cert = minimize(T, norm=args.norm, tolerance=args.tol, seed=args.seed, restarts=args.restarts)
    r = cert.domain.radius
    xs = np.linspace(-r, r, args.grid)
    ys = np.linspace(-r, r, args.grid)
    rows = _landscape_rows(T, xs, ys, cert, args.norm, args.restarts, args.seed)
    try:
        sink = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    try:
        writer = csv.writer(sink)
        writer.writerow(["re_lambda", "im_lambda", "best_v_residual", "solver_v_residual"])
        for row in rows:
            writer.writerow([repr(x) for x in row])
    finally:
        if sink is not sys.stdout:
            sink.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="argmin-eig", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_restarts=True):
        p.add_argument("--norm", choices=("one", "two", "inf"), default="two")
        p.add_argument("--tol", type=float, default=None, help="convergence tolerance (default 1e-10 * (1 + C))")
        p.add_argument("--seed", type=int, default=0)
        if with_restarts:
            p.add_argument("--restarts", type=int, default=4)
        p.add_argument("--output", default=None, help="also write the result to this path")

    p_solve = sub.add_parser("solve", help="find an eigenpair and print its certificate")
    p_solve.add_argument("matrix", help="matrix file (.json or .csv)")
    p_solve.add_argument("--oracle", action="store_true", help="include the reference spectrum in the output")
    common(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_cert = sub.add_parser("certify", help="recheck a stored (v, lambda) pair")
    p_cert.add_argument("matrix")
    p_cert.add_argument("pair", help="JSON file with 'lambda' and 'v' (a solve certificate works)")
    common(p_cert, with_restarts=False)
    p_cert.set_defaults(func=cmd_certify)

    p_ver = sub.add_parser("verify-identities", help="run the operator identity suites")
    p_ver.add_argument("matrix", nargs="?", default=None, help="optional matrix to use as the base operator")
    p_ver.add_argument("--cases", type=int, default=20)
    p_ver.add_argument("--n", type=int, default=None, help="force the root count n")
    p_ver.add_argument(
        "--sigma-eigenvalue",
        action="store_true",
        help="take the shift exactly on the spectrum (expected to fail singular)",
    )
    common(p_ver, with_restarts=False)
    p_ver.set_defaults(func=cmd_verify_identities)

    p_land = sub.add_parser("landscape", help="sample the residual surface over the shift disk")
    p_land.add_argument("matrix")
    p_land.add_argument("--grid", type=int, default=101, help="odd number of samples per axis")
    common(p_land)
    p_land.set_defaults(func=cmd_landscape)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
