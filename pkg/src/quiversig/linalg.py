"""Numerical-rank helpers shared by the morphism and decomposition code."""
from __future__ import annotations

import numpy as np

__all__ = ["EPS", "singular_value_cutoff", "numerical_rank", "null_space"]

EPS = float(np.finfo(np.float64).eps)


def singular_value_cutoff(sigma: np.ndarray, shape: tuple[int, int], tol: float | None = None) -> float:
    """Rank cutoff: max(rows, cols) * eps * sigma_max, or the caller's absolute override."""
    if tol is not None:
        return float(tol)
    smax = float(sigma[0]) if sigma.size else 0.0
    return max(shape) * EPS * smax if shape else 0.0


def numerical_rank(matrix: np.ndarray, tol: float | None = None) -> int:
    m = np.asarray(matrix, dtype=np.float64)
    if m.size == 0:
        return 0
    sigma = np.linalg.svd(m, compute_uv=False)
    return int(np.count_nonzero(sigma > singular_value_cutoff(sigma, m.shape, tol)))


def null_space(matrix: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Orthonormal null-space basis as columns; handles empty row/column counts."""
    m = np.asarray(matrix, dtype=np.float64)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0))
    if rows == 0:
        return np.eye(cols)
    _, sigma, vh = np.linalg.svd(m, full_matrices=True)
    rank = int(np.count_nonzero(sigma > singular_value_cutoff(sigma, m.shape, tol)))
    return vh[rank:].T.copy()
