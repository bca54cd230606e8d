"""
Exact matrix rank.

Rank over Q uses fraction-free (Bareiss) elimination on integer rows; rank
over F_p uses numpy int64 arrays and doubles as a fast screen for Q.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from algebra.fields import CoefficientField, PrimeField, RationalField
from utils.errors import InputError

logger = logging.getLogger(__name__)

# 2^31 - 1: products of two reduced entries stay below 2^63
SCREEN_PRIME = 2_147_483_647


def _integer_rows(matrix: Sequence[Sequence]) -> List[List[int]]:
    """Scale each row by the lcm of its denominators."""
    rows = []
    for row in matrix:
        values = [Fraction(v) for v in row]
        scale = math.lcm(*(v.denominator for v in values)) if values else 1
        rows.append([int(v * scale) for v in values])
    return rows


def bareiss_rank(matrix: Sequence[Sequence]) -> int:
    """
    Rank of a rational matrix by fraction-free elimination.

    Pivots are the first nonzero entry in column order, so the elimination
    is deterministic. Every division in the Bareiss update is exact.
    """
    rows = _integer_rows(matrix)
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    previous = 1
    for col in range(n_cols):
        pivot_row = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, n_rows):
            lead = rows[r][col]
            rows[r] = [
                (pivot * rows[r][c] - lead * rows[rank][c]) // previous
                for c in range(n_cols)
            ]
        previous = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


def _reduce_mod(matrix: Sequence[Sequence], p: int) -> Optional[np.ndarray]:
    field = PrimeField(p)
    try:
        data = [[field.from_fraction(Fraction(v)) for v in row] for row in matrix]
    except InputError:
        return None
    return np.array(data, dtype=np.int64).reshape(len(data), -1 if data else 0)


def rank_mod_p(matrix: Sequence[Sequence], p: int) -> int:
    """Rank of the matrix reduced mod p (p < 2^31)."""
    if p >= 2 ** 31:
        raise InputError(f"rank_mod_p needs p < 2^31, got {p}")
    arr = _reduce_mod(matrix, p)
    if arr is None:
        raise InputError(f"Matrix entries are not representable mod {p}")
    return _rank_int64(arr, p)


def _rank_int64(arr: np.ndarray, p: int) -> int:
    arr = arr.copy() % p
    n_rows, n_cols = arr.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.nonzero(arr[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot_row = rank + int(nonzero[0])
        if pivot_row != rank:
            arr[[rank, pivot_row]] = arr[[pivot_row, rank]]
        inv = pow(int(arr[rank, col]), -1, p)
        arr[rank] = (arr[rank] * inv) % p
        below = arr[rank + 1:, col].copy()
        if below.any():
            arr[rank + 1:] = (arr[rank + 1:] - np.outer(below, arr[rank]) % p) % p
        rank += 1
    return rank


def exact_rank(matrix: Sequence[Sequence], field: CoefficientField) -> int:
    """
    Rank over the given field.

    Over Q a mod-p rank equal to min(rows, cols) settles the answer, since
    reduction never raises the rank; otherwise Bareiss elimination decides.
    """
    if not matrix:
        return 0
    if isinstance(field, PrimeField):
        return _rank_int64(np.array([[int(v) for v in row] for row in matrix], dtype=np.int64), field.p)
    if not isinstance(field, RationalField):
        raise InputError(f"Exact rank is available over Q and F_p, not {field.label()}")
    full = min(len(matrix), len(matrix[0]))
    screened = _reduce_mod(matrix, SCREEN_PRIME)
    if screened is not None and _rank_int64(screened, SCREEN_PRIME) == full:
        return full
    rank = bareiss_rank(matrix)
    logger.debug(f"Bareiss rank {rank} of a {len(matrix)}x{len(matrix[0])} matrix")
    return rank
