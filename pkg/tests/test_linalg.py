"""Core vector/matrix operations: norms, residuals, bounds, LU solves, I/O."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argmin_eig.linalg import (
    NORM_KINDS,
    MatrixParseError,
    SingularMatrixError,
    apply,
    coercivity_gap,
    load_matrix,
    lu_factor,
    lu_solve,
    matrix_to_json,
    operator_bound,
    parse_matrix_csv,
    parse_matrix_json,
    residual,
    residual_ratio,
    solve,
    vec_norm,
)
from argmin_eig.oracle import smallest_singular_direction
from argmin_eig.sampling import complex_gaussian


# ---------------------------------------------------------------- vec_norm

def test_vec_norm_zero_vector():
    for norm in NORM_KINDS:
        assert vec_norm([0.0, 0.0], norm) == 0.0


def test_vec_norm_single_modulus():
    assert vec_norm([3 + 4j, 0.0], "two") == pytest.approx(5.0)


def test_vec_norm_one_sums_moduli():
    assert vec_norm([1.0, -1.0, 1j], "one") == pytest.approx(3.0)


def test_vec_norm_rejects_bad_input():
    with pytest.raises(ValueError):
        vec_norm([1.0, np.nan])
    with pytest.raises(ValueError):
        vec_norm([1.0], "three")
    with pytest.raises(ValueError):
        vec_norm([[1.0, 2.0]])


finite_entry = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False).filter(
    lambda x: x == 0.0 or abs(x) > 1e-100  # keep products clear of subnormals
)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(finite_entry, finite_entry), min_size=1, max_size=6),
    st.tuples(finite_entry, finite_entry),
)
def test_vec_norm_homogeneity(entries, alpha):
    v = np.array([complex(re, im) for re, im in entries])
    a = complex(*alpha)
    for norm in NORM_KINDS:
        left = vec_norm(a * v, norm)
        right = abs(a) * vec_norm(v, norm)
        assert left == pytest.approx(right, rel=1e-12, abs=1e-300)


unit_entry = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(unit_entry, unit_entry, unit_entry, unit_entry), min_size=1, max_size=6)
)
def test_vec_norm_triangle_inequality(rows):
    u = np.array([complex(a, b) for a, b, _, _ in rows])
    v = np.array([complex(c, d) for _, _, c, d in rows])
    for norm in NORM_KINDS:
        assert vec_norm(u + v, norm) <= vec_norm(u, norm) + vec_norm(v, norm) + 1e-12


def test_vec_norm_triangle_inequality_large_scale():
    rng = np.random.default_rng(13)
    for _ in range(200):
        u = 1e6 * complex_gaussian(rng, 5)
        v = 1e6 * complex_gaussian(rng, 5)
        for norm in NORM_KINDS:
            nu, nv = vec_norm(u, norm), vec_norm(v, norm)
            assert vec_norm(u + v, norm) <= nu + nv + 1e-12 * (1 + nu + nv)


def test_vec_norm_definiteness():
    rng = np.random.default_rng(5)
    for _ in range(50):
        v = complex_gaussian(rng, 4)
        for norm in NORM_KINDS:
            assert vec_norm(v, norm) > 0.0


# ------------------------------------------------------------------- apply

def test_apply_identity():
    v = np.array([1.0, 1j])
    assert np.allclose(apply(np.eye(2), v), v)


def test_apply_shift_matrix():
    out = apply([[0, 1], [0, 0]], [0, 1])
    assert np.allclose(out, [1, 0])


def test_apply_diagonal():
    out = apply([[2, 0], [0, 5]], [1, 1])
    assert np.allclose(out, [2, 5])


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        apply(np.eye(2), [1, 2, 3])


# ---------------------------------------------------------------- residual

def test_residual_exact_eigenpair():
    assert residual([[2, 0], [0, 5]], [1, 0], 2.0) == 0.0


def test_residual_identity_at_zero_shift():
    v = np.array([0.6, 0.8])
    assert residual(np.eye(3)[:2, :2] * 0 + np.eye(2), v, 0.0, "two") == pytest.approx(1.0)


def test_residual_rotation_generator():
    # T e1 = (0, 1), so the residual at shift 0 is exactly 1
    assert residual([[0, -1], [1, 0]], [1, 0], 0.0, "two") == pytest.approx(1.0)


def test_residual_ratio_rejects_zero_vector():
    with pytest.raises(ValueError, match="zero vector"):
        residual_ratio(np.eye(2), [0, 0], 1.0)


def test_residual_ratio_scale_invariant():
    rng = np.random.default_rng(2)
    T = complex_gaussian(rng, (4, 4))
    v = complex_gaussian(rng, 4)
    for norm in NORM_KINDS:
        r1 = residual_ratio(T, v, 0.3 + 0.1j, norm)
        r2 = residual_ratio(T, 7.5j * v, 0.3 + 0.1j, norm)
        assert r1 == pytest.approx(r2, rel=1e-12)


# ---------------------------------------------------------- operator_bound

def test_operator_bound_inf_row_sums():
    assert operator_bound([[1, 2], [3, 4]], "inf") == pytest.approx(7.0)


def test_operator_bound_zero_matrix():
    for norm in NORM_KINDS:
        assert operator_bound(np.zeros((3, 3)), norm) == 0.0


def test_operator_bound_two_is_frobenius():
    # exceeds the sharp induced value 1, which the contract permits
    assert operator_bound(np.eye(2), "two") == pytest.approx(np.sqrt(2.0))


@pytest.mark.parametrize("norm", NORM_KINDS)
def test_operator_bound_dominates_images(norm):
    rng = np.random.default_rng(17)
    for _ in range(1000):
        d = int(rng.integers(1, 7))
        T = complex_gaussian(rng, (d, d))
        v = complex_gaussian(rng, d)
        C = operator_bound(T, norm)
        assert vec_norm(T @ v, norm) <= C * vec_norm(v, norm) * (1 + 1e-10)


# ---------------------------------------------------------- coercivity_gap

def test_coercivity_gap_zero_vector():
    assert coercivity_gap(np.eye(2), [0, 0], 3.0 + 1j) == 0.0


def test_coercivity_gap_equality_case():
    # zero operator: || -lam v || = |lam| ||v|| exactly
    gap = coercivity_gap(np.zeros((2, 2)), [1, 0], 3.0, "two", bound=0.0)
    assert gap == pytest.approx(0.0, abs=1e-14)


def test_coercivity_gap_positive_for_small_shifts():
    rng = np.random.default_rng(23)
    for _ in range(100):
        T = complex_gaussian(rng, (4, 4))
        v = complex_gaussian(rng, 4)
        C = operator_bound(T, "two")
        lam = complex_gaussian(rng, ()) * C / 3  # |lam| <= C almost surely
        if abs(lam) > C:
            continue
        assert coercivity_gap(T, v, lam, "two") > 0.0


@pytest.mark.parametrize("norm", NORM_KINDS)
def test_coercivity_gap_lower_bound(norm):
    rng = np.random.default_rng(31)
    for _ in range(1000):
        d = int(rng.integers(1, 7))
        T = complex_gaussian(rng, (d, d))
        v = complex_gaussian(rng, d)
        lam = 3.0 * complex_gaussian(rng, ())
        gap = coercivity_gap(T, v, lam, norm)
        assert gap >= -1e-10 * (1 + abs(lam)) * vec_norm(v, norm)


# ------------------------------------------------------------------- solve

def test_solve_identity():
    b = np.array([1.0, 2j, -1.0])
    assert np.allclose(solve(np.eye(3), b), b)


def test_solve_diagonal():
    assert np.allclose(solve([[2, 0], [0, 4]], [2, 4]), [1, 1])


def test_solve_permutation():
    out = solve([[0, 1], [1, 0]], [3 + 1j, 5.0])
    assert np.allclose(out, [5.0, 3 + 1j])


def test_solve_multiple_right_hand_sides():
    rng = np.random.default_rng(4)
    A = complex_gaussian(rng, (5, 5))
    B = complex_gaussian(rng, (5, 3))
    X = lu_solve(lu_factor(A), B)
    assert np.allclose(A @ X, B, atol=1e-10)


def test_solve_backward_error_well_conditioned():
    rng = np.random.default_rng(41)
    checked = 0
    while checked < 100:
        d = int(rng.integers(2, 13))
        A = complex_gaussian(rng, (d, d))
        _, smallest = smallest_singular_direction(A)
        if smallest == 0.0 or operator_bound(A, "two") / smallest > 1e8:
            continue
        checked += 1
        b = complex_gaussian(rng, d)
        x = solve(A, b)
        lhs = vec_norm(A @ x - b, "inf")
        assert lhs <= 1e-9 * operator_bound(A, "inf") * vec_norm(x, "inf")


def test_solve_singular_is_typed_error():
    with pytest.raises(SingularMatrixError):
        solve(np.zeros((2, 2)), [1.0, 0.0])
    err = None
    try:
        solve([[1, 2, 3], [4, 5, 6], [7, 8, 9]], [1.0, 0.0, 0.0])
    except SingularMatrixError as exc:
        err = exc
    assert err is not None
    assert err.pivot_index == 2
    x = err.near_null
    assert np.linalg.norm(x) == pytest.approx(1.0)
    A = np.array([[1, 2, 3], [4, 5, 6], [7, 8, 9]], dtype=complex)
    assert np.linalg.norm(A @ x) <= 1e-12 * np.abs(A).max()


def test_solve_near_singular_shift_detection():
    # a shift equal to a diagonal eigenvalue must surface as singular
    T = np.diag([2.0, 5.0]).astype(complex)
    with pytest.raises(SingularMatrixError):
        solve(T - 2.0 * np.eye(2), [1.0, 1.0])


# --------------------------------------------------------------- matrix io

def test_matrix_json_round_trip(tmp_path):
    rng = np.random.default_rng(9)
    T = complex_gaussian(rng, (3, 3))
    path = tmp_path / "m.json"
    import json

    path.write_text(json.dumps(matrix_to_json(T)))
    back = load_matrix(path)
    assert np.array_equal(back, T)


def test_matrix_json_errors_name_position():
    with pytest.raises(MatrixParseError, match="entries\\[2\\]"):
        parse_matrix_json('{"dim": 2, "entries": [[1,0],[0,0],["x",0],[1,0]]}')
    with pytest.raises(MatrixParseError, match="expected 1 entries"):
        parse_matrix_json('{"dim": 1, "entries": [[1,0],[2,0]]}')  # wrong count
    with pytest.raises(MatrixParseError, match="expected 4 entries"):
        parse_matrix_json('{"dim": 2, "entries": [[1,0],[0,0],[1,0]]}')
    with pytest.raises(MatrixParseError, match="non-finite"):
        parse_matrix_json('{"dim": 1, "entries": [[Infinity,0]]}')
    with pytest.raises(MatrixParseError, match="dim"):
        parse_matrix_json('{"dim": 0, "entries": []}')


def test_matrix_csv_parses_interleaved_pairs():
    T = parse_matrix_csv("0,0,-1,0\n1,0,0,0\n")
    assert np.array_equal(T, np.array([[0, -1], [1, 0]], dtype=complex))


def test_matrix_csv_errors_name_position():
    with pytest.raises(MatrixParseError, match="row 1"):
        parse_matrix_csv("1,0,2,0\n3,0\n")
    with pytest.raises(MatrixParseError, match="row 0, column 1"):
        parse_matrix_csv("1,0,nan,0\n3,0,4,0\n")


def test_load_matrix_sniffs_json_without_extension(tmp_path):
    path = tmp_path / "matrix.txt"
    path.write_text('{"dim": 1, "entries": [[7, 0]]}')
    assert load_matrix(path)[0, 0] == 7.0
