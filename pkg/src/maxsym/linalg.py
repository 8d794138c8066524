"""Dense linear algebra over the small fields: row reduction, solving,
kernels, inverses.  Everything works on int8 code matrices and is sized
for the dimensions that occur here (<= 14), so plain pivot loops are fine.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .gf import Field

__all__ = [
    "row_reduce",
    "rank",
    "kernel_basis",
    "solve_affine",
    "inverse",
    "determinant",
    "is_independent",
    "reduce_against",
    "enumerate_span",
]


def row_reduce(field: Field, mat: np.ndarray):
    """Reduced row echelon form.

    Returns (echelon matrix, pivot column list).  The input is not modified.
    """
    m = field.asarray(mat).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hit = None
        for i in range(r, rows):
            if m[i, c] != 0:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            m[[r, hit]] = m[[hit, r]]
        m[r] = field.mul(m[r], field.inv(int(m[r, c])))
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = field.sub(m[i], field.mul(m[r], int(m[i, c])))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(field: Field, mat: np.ndarray) -> int:
    if mat.size == 0:
        return 0
    return len(row_reduce(field, mat)[1])


def kernel_basis(field: Field, mat: np.ndarray) -> np.ndarray:
    """Basis of the right kernel {x : mat @ x = 0}, one row per basis vector."""
    m = field.asarray(mat)
    rows, cols = m.shape
    ech, pivots = row_reduce(field, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int8)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = field.neg(int(ech[r, fc]))
    return basis


def solve_affine(field: Field, mat: np.ndarray, rhs: np.ndarray):
    """Solve mat @ x = rhs.  Returns (particular, kernel rows) or None."""
    m = field.asarray(mat)
    b = field.asarray(rhs).reshape(-1, 1)
    aug = np.concatenate([m, b], axis=1)
    ech, pivots = row_reduce(field, aug)
    cols = m.shape[1]
    if cols in pivots:
        return None  # a pivot in the rhs column means inconsistency
    particular = np.zeros(cols, dtype=np.int8)
    for r, pc in enumerate(pivots):
        particular[pc] = ech[r, cols]
    return particular, kernel_basis(field, m)


def inverse(field: Field, mat: np.ndarray) -> np.ndarray:
    m = field.asarray(mat)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"not square: {m.shape}")
    aug = np.concatenate([m, np.eye(n, dtype=np.int8)], axis=1)
    ech, pivots = row_reduce(field, aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return ech[:, n:].copy()


def determinant(field: Field, mat: np.ndarray) -> int:
    """Determinant by fraction-free elimination over the field."""
    m = field.asarray(mat).copy()
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"not square: {m.shape}")
    det = 1
    for c in range(n):
        hit = None
        for i in range(c, n):
            if m[i, c] != 0:
                hit = i
                break
        if hit is None:
            return 0
        if hit != c:
            m[[c, hit]] = m[[hit, c]]
            det = field.neg(det)
        det = field.mul(det, int(m[c, c]))
        inv = field.inv(int(m[c, c]))
        for i in range(c + 1, n):
            if m[i, c] != 0:
                factor = field.mul(int(m[i, c]), inv)
                m[i] = field.sub(m[i], field.mul(m[c], factor))
    return int(det)


def is_independent(field: Field, rows: np.ndarray, vec: np.ndarray) -> bool:
    """True if vec lies outside the row span of rows."""
    if rows.size == 0:
        return bool(np.any(np.asarray(vec) != 0))
    stacked = np.vstack([rows, np.asarray(vec, dtype=np.int8)])
    return rank(field, stacked) > rank(field, rows)


def reduce_against(field: Field, ech: np.ndarray, pivots: list, batch: np.ndarray) -> np.ndarray:
    """Reduce each row of batch against an echelon basis (vectorized).

    Rows that land on zero are in the span of the basis.
    """
    out = field.asarray(batch).copy()
    for r, pc in enumerate(pivots):
        coef = out[:, pc]
        out = field.sub(out, field.mul_table[coef[:, None], ech[r][None, :]])
    return out


@functools.lru_cache(maxsize=64)
def _coeff_grid(order: int, k: int) -> np.ndarray:
    if k == 0:
        grid = np.zeros((1, 0), dtype=np.int8)
    else:
        grid = np.array(
            list(itertools.product(range(order), repeat=k)), dtype=np.int8
        ).reshape(-1, k)
    grid.setflags(write=False)
    return grid


def enumerate_span(field: Field, basis: np.ndarray, offset: np.ndarray | None = None) -> np.ndarray:
    """All field combinations of the basis rows, plus an optional offset.

    Returns a (q**k, dim) array in lexicographic coefficient order.
    """
    k, dim = basis.shape if basis.size else (0, len(offset))
    coeffs = _coeff_grid(field.order, k)
    if k == 0:
        combos = np.zeros((1, dim), dtype=np.int8)
    else:
        prods = field.mul_table[coeffs[:, :, None], basis[None, :, :]]
        combos = field.sum(prods, axis=1)
    if offset is not None:
        combos = field.add(combos, np.asarray(offset, dtype=np.int8)[None, :])
    return combos.astype(np.int8)
