"""
Exact linear algebra over F_p on numpy int64 matrices.

Entries are kept reduced mod p, so products stay far below the int64
range for the small primes used here.
"""
from typing import List, Optional, Tuple

import numpy as np


def reduce_mod(matrix: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(matrix, dtype=np.int64) % p


def row_echelon_mod_p(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    Row-reduce a matrix over F_p.

    Pivots are chosen as the first nonzero entry at or below the current row,
    so the result is deterministic.

    Args:
        matrix: (m x n) integer matrix
        p: prime

    Returns:
        (R, pivot_cols): echelon form with unit pivots, and the pivot columns
    """
    R = reduce_mod(matrix, p).copy()
    m, n = R.shape
    pivot_cols: List[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nonzero = np.nonzero(R[row:, col])[0]
        if nonzero.size == 0:
            continue
        found = row + int(nonzero[0])
        if found != row:
            R[[row, found]] = R[[found, row]]
        inverse = pow(int(R[row, col]), -1, p)
        R[row] = (R[row] * inverse) % p
        below = R[row + 1:, col].copy()
        if below.any():
            R[row + 1:] = (R[row + 1:] - np.outer(below, R[row])) % p
        pivot_cols.append(col)
        row += 1
    return R, pivot_cols


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Exact rank over F_p."""
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    _, pivots = row_echelon_mod_p(matrix, p)
    return len(pivots)


def matmul_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (reduce_mod(a, p) @ reduce_mod(b, p)) % p


def first_nonzero_column(matrix: np.ndarray) -> Optional[int]:
    """Index of the first column with a nonzero entry, or None."""
    if matrix.size == 0:
        return None
    cols = np.nonzero(matrix.any(axis=0))[0]
    return int(cols[0]) if cols.size else None


def sparse_triplets(matrix: np.ndarray) -> List[Tuple[int, int, int]]:
    """(row, col, value) for every nonzero entry, row-major."""
    rows, cols = np.nonzero(matrix)
    return [(int(r), int(c), int(matrix[r, c])) for r, c in zip(rows, cols)]
