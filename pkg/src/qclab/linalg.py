"""Exact Gaussian elimination over the scalar fraction field.

Matrices are lists of rows of ScalarFraction.  Sizes here are tiny (ring
dimensions and chain-complex ranks), so classical elimination with full
normalisation after every step is fine.
"""

from __future__ import annotations

from typing import Sequence

from .polynomials import ScalarFraction


def _rref(rows: list[list[ScalarFraction]], ncols: int, m: int) -> tuple[list[list[ScalarFraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: Sequence[Sequence[ScalarFraction]], ncols: int, m: int) -> int:
    if not rows:
        return 0
    _, pivots = _rref([list(r) for r in rows], ncols, m)
    return len(pivots)


def solve_columns(
    columns: Sequence[Sequence[ScalarFraction]], target: Sequence[ScalarFraction], m: int
) -> list[ScalarFraction] | None:
    """Coefficients x with sum x_k columns[k] = target, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    if not columns:
        return None if any(target) else []
    nrows = len(columns[0])
    aug = [[col[i] for col in columns] + [target[i]] for i in range(nrows)]
    red, pivots = _rref(aug, len(columns) + 1, m)
    if len(columns) in pivots:
        return None  # inconsistent
    out = [ScalarFraction.zero(m)] * len(columns)
    for row, c in zip(red, pivots):
        out[c] = row[len(columns)]
    return out


def nullspace(rows: Sequence[Sequence[ScalarFraction]], ncols: int, m: int) -> list[list[ScalarFraction]]:
    """Basis of the right nullspace of the matrix given by `rows`."""
    red, pivots = _rref([list(r) for r in rows], ncols, m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    one = ScalarFraction.one(m)
    for f in free:
        vec = [ScalarFraction.zero(m)] * ncols
        vec[f] = one
        for row, c in zip(red, pivots):
            vec[c] = -row[f]
        basis.append(vec)
    return basis
