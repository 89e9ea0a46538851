"""Solver and matrix-helper checks against cofactor-expansion references."""

import numpy as np
import pytest

from kelmocc.linalg import SingularMatrixError, as_matrix, matmul, solve

from oracles import matmul_loops, solve_adjugate


def well_conditioned(n, seed):
    # diagonal dominance keeps the adjugate reference numerically honest
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, n)) + n * np.eye(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_solve_vector_rhs_matches_adjugate_inverse(n):
    a = well_conditioned(n, seed=n)
    b = np.random.default_rng(100 + n).normal(size=n)
    x = solve(a, b)
    assert x.shape == (n,)
    assert np.allclose(x, solve_adjugate(a, b), rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_solve_matrix_rhs_matches_adjugate_inverse(n):
    a = well_conditioned(n, seed=10 + n)
    b = np.random.default_rng(200 + n).normal(size=(n, 3))
    x = solve(a, b)
    assert x.shape == (n, 3)
    assert np.allclose(x, solve_adjugate(a, b), rtol=1e-10, atol=1e-12)


def test_solve_residual_is_tiny():
    a = well_conditioned(6, seed=42)
    b = np.arange(6.0)
    x = solve(a, b)
    assert np.allclose(a @ x, b, rtol=0, atol=1e-10)


def test_singular_matrix_raises_with_pivot_column():
    a = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularMatrixError) as err:
        solve(a, np.ones(2))
    assert err.value.column == 1
    assert "singular" in str(err.value)
    assert "pivot column 1" in str(err.value)


def test_zero_matrix_raises_at_first_column():
    with pytest.raises(SingularMatrixError) as err:
        solve(np.zeros((3, 3)), np.ones(3))
    assert err.value.column == 0
    assert err.value.pivot == 0.0


def test_singular_error_is_a_value_error():
    # callers that only catch ValueError still see the failure
    assert issubclass(SingularMatrixError, ValueError)


def test_solve_rejects_nonfinite_entries():
    a = np.eye(2)
    a[0, 1] = np.nan
    with pytest.raises(ValueError, match="finite"):
        solve(a, np.ones(2))
    with pytest.raises(ValueError, match="finite"):
        solve(np.eye(2), np.array([1.0, np.inf]))


def test_solve_rejects_nonsquare():
    with pytest.raises(ValueError, match="square"):
        solve(np.ones((2, 3)), np.ones(2))


def test_solve_rejects_rhs_row_mismatch():
    with pytest.raises(ValueError, match="rows"):
        solve(np.eye(3), np.ones(2))


def test_matmul_matches_triple_loop():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(3, 5))
    b = rng.normal(size=(5, 2))
    assert np.allclose(matmul(a, b), matmul_loops(a, b), rtol=1e-12, atol=1e-14)


def test_matmul_rejects_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_as_matrix_promotes_vectors_to_rows():
    m = as_matrix([1.0, 2.0, 3.0])
    assert m.shape == (1, 3)


def test_as_matrix_names_the_bad_entry():
    with pytest.raises(ValueError, match="row 0, column 1"):
        as_matrix([[1.0, np.nan]])


def test_as_matrix_rejects_empty_and_3d():
    with pytest.raises(ValueError, match="empty"):
        as_matrix(np.empty((0, 3)))
    with pytest.raises(ValueError, match="2-dimensional"):
        as_matrix(np.ones((2, 2, 2)))
