"""Dense real-matrix helpers shared by the whole package.

Matrices are plain float64 numpy arrays with samples as rows. The solver is
an LU factorization with partial (row) pivoting plus an explicit relative
pivot check, so near-singular systems fail loudly instead of returning
garbage.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

# A pivot this much smaller than the largest pivot is treated as zero.
SINGULAR_PIVOT_RTOL = 1e-12


class SingularMatrixError(ValueError):
    """Raised when elimination meets a pivot too small to trust.

    ``column`` is the 0-based pivot column where elimination broke down.
    """

    def __init__(self, column: int, pivot: float):
        self.column = int(column)
        self.pivot = float(pivot)
        super().__init__(
            f"matrix is singular to working precision: pivot column {column} "
            f"has |pivot| = {abs(pivot):.3e}"
        )


def as_matrix(data, name: str = "matrix") -> np.ndarray:
    """Coerce user input to a 2-D float64 array, rejecting NaN/Inf entries."""
    a = np.asarray(data, dtype=float)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if a.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(a)):
        bad = np.argwhere(~np.isfinite(a))[0]
        raise ValueError(
            f"{name} contains a non-finite entry at row {bad[0]}, column {bad[1]}"
        )
    return a


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("matmul expects 2-D operands")
    if a.shape[1] != b.shape[0]:
        raise ValueError(
            f"matmul dimension mismatch: {a.shape[0]}x{a.shape[1]} times "
            f"{b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` by row-pivoted LU factorization.

    ``a`` must be square and ``b`` must have matching row count (1-D right
    hand sides are treated as single columns). Raises SingularMatrixError
    when any pivot falls below SINGULAR_PIVOT_RTOL times the largest pivot.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    squeeze = b.ndim == 1
    if squeeze:
        b = b.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"coefficient matrix must be square, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise ValueError(
            f"right-hand side has {b.shape[0]} rows, expected {a.shape[0]}"
        )
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("solve requires finite inputs")
    with np.errstate(all="ignore"), warnings.catch_warnings():
        # the explicit pivot check below is the real singularity report
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    largest = pivots.max() if pivots.size else 0.0
    if largest == 0.0:
        raise SingularMatrixError(column=0, pivot=0.0)
    small = np.nonzero(pivots < SINGULAR_PIVOT_RTOL * largest)[0]
    if small.size:
        col = int(small[0])
        raise SingularMatrixError(column=col, pivot=float(np.diag(lu)[col]))
    x = scipy.linalg.lu_solve((lu, piv), b, check_finite=False)
    # C layout, so downstream matmuls hit the same BLAS path as after a
    # save/load round trip of the solution
    return np.ascontiguousarray(x[:, 0] if squeeze else x)
