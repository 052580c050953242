"""Small dense exact linear algebra over Z/pZ (internal).

Matrices here are lists of row lists; everything works by Gaussian
elimination with an inverse lookup from the field.  Sizes stay tiny
(n <= a few dozen), so clarity beats asymptotics.
"""

from __future__ import annotations

from .field import PrimeField


def det_mod(rows: list[list[int]], field: PrimeField) -> int:
    """Determinant by elimination with row swaps; consumes a copy."""
    p = field.p
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    det = 1
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            return 0
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        pivot = m[col][col]
        det = (det * pivot) % p
        inv_pivot = field.inv(pivot)
        row_c = m[col]
        for r in range(col + 1, n):
            factor = (m[r][col] * inv_pivot) % p
            if factor:
                row_r = m[r]
                for c in range(col, n):
                    row_r[c] = (row_r[c] - factor * row_c[c]) % p
    return det % p if sign == 1 else (-det) % p


def rank_mod(rows: list[list[int]], field: PrimeField) -> int:
    p = field.p
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv_pivot = field.inv(m[rank][col])
        row_k = m[rank]
        for r in range(rank + 1, nrows):
            factor = (m[r][col] * inv_pivot) % p
            if factor:
                row_r = m[r]
                for c in range(col, ncols):
                    row_r[c] = (row_r[c] - factor * row_k[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def nullspace_vector(rows: list[list[int]], field: PrimeField) -> list[int] | None:
    """One kernel vector of the square system, deterministically chosen.

    Reduces to row echelon form, sets the first free variable to 1 and
    the other free variables to 0, then back-substitutes.  Returns None
    when the matrix is invertible.
    """
    p = field.p
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[tuple[int, int]] = []  # (row, col)
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv_pivot = field.inv(m[rank][col])
        m[rank] = [(c * inv_pivot) % p for c in m[rank]]
        row_k = m[rank]
        for r in range(nrows):
            if r != rank and m[r][col]:
                factor = m[r][col]
                row_r = m[r]
                for c in range(col, ncols):
                    row_r[c] = (row_r[c] - factor * row_k[c]) % p
        pivots.append((rank, col))
        rank += 1
    free_cols = [c for c in range(ncols) if c not in {pc for _, pc in pivots}]
    if not free_cols:
        return None
    free = free_cols[0]
    vec = [0] * ncols
    vec[free] = 1
    for r, c in pivots:
        vec[c] = (-m[r][free]) % p
    return vec
