"""Arithmetic for the three small fields underlying the form spaces.

Elements are plain int codes.  GF(2) and GF(3) use the codes 0..p-1 with
mod-p arithmetic.  GF(4) uses the basis {1, a} with a^2 = a + 1, so the
codes are 0, 1, a = 2, a+1 = 3 and addition is XOR of codes.  All
operations are table driven and accept either ints or numpy integer
arrays; array inputs come back as arrays of the same shape.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Field", "F2", "F3", "F4", "ALPHA", "ALPHA_BAR", "get_field"]

# GF(4) element names for callers that build vectors by hand.
ALPHA = 2
ALPHA_BAR = 3


def _build_tables(order: int):
    if order in (2, 3):
        vals = np.arange(order)
        add = (vals[:, None] + vals[None, :]) % order
        mul = (vals[:, None] * vals[None, :]) % order
        neg = (-vals) % order
        conj = vals.copy()
    elif order == 4:
        # Codes are bit pairs over GF(2)[a]/(a^2+a+1); addition is XOR.
        vals = np.arange(4)
        add = vals[:, None] ^ vals[None, :]

        def poly_mul(x: int, y: int) -> int:
            # Multiply bit-pair polynomials, reduce a^2 -> a + 1.
            prod = 0
            for shift in range(2):
                if (y >> shift) & 1:
                    prod ^= x << shift
            if prod & 4:
                prod ^= 0b111  # a^2 = a + 1
            return prod & 3

        mul = np.array([[poly_mul(x, y) for y in range(4)] for x in range(4)])
        neg = vals.copy()  # char 2
        conj = np.array([poly_mul(x, x) for x in range(4)])  # x -> x^2
    else:
        raise ValueError(f"unsupported field order {order}")

    inv = np.zeros(order, dtype=np.int8)
    for x in range(1, order):
        for y in range(1, order):
            if mul[x, y] == 1:
                inv[x] = y
    return (
        add.astype(np.int8),
        mul.astype(np.int8),
        neg.astype(np.int8),
        inv,
        conj.astype(np.int8),
    )


class Field:
    """One of GF(2), GF(3), GF(4) with table-driven arithmetic.

    Parameters
    ----------
    order : int
        Field size, one of 2, 3, 4.
    """

    def __init__(self, order: int):
        self.order = order
        self.char = 2 if order in (2, 4) else 3
        tables = _build_tables(order)
        self.add_table, self.mul_table, self.neg_table, self.inv_table, self.conj_table = tables

    def __repr__(self):
        return f"Field(GF({self.order}))"

    def elements(self):
        """All element codes in ascending order."""
        return list(range(self.order))

    def check(self, x) -> None:
        arr = np.asarray(x)
        if arr.size and (arr.min() < 0 or arr.max() >= self.order):
            raise ValueError(f"code out of range for GF({self.order}): {x!r}")

    def add(self, x, y):
        return self.add_table[x, y]

    def sub(self, x, y):
        return self.add_table[x, self.neg_table[y]]

    def neg(self, x):
        return self.neg_table[x]

    def mul(self, x, y):
        return self.mul_table[x, y]

    def inv(self, x):
        if np.any(np.asarray(x) == 0):
            raise ZeroDivisionError(f"no inverse of 0 in GF({self.order})")
        return self.inv_table[x]

    def conj(self, x):
        """Field involution: x^2 on GF(4), identity on GF(2) and GF(3)."""
        return self.conj_table[x]

    # -- vector / matrix helpers (int8 arrays of codes) ----------------

    def asarray(self, v) -> np.ndarray:
        arr = np.asarray(v, dtype=np.int8)
        self.check(arr)
        return arr

    def sum(self, arr: np.ndarray, axis=None):
        """Field sum along an axis (XOR for char-2 codes, mod 3 otherwise)."""
        if self.order in (2, 4):
            # addition of codes is XOR for both GF(2) and GF(4)
            return np.bitwise_xor.reduce(arr, axis=axis)
        return np.asarray(arr, dtype=np.int64).sum(axis=axis) % 3

    def dot(self, u, w):
        return self.sum(self.mul_table[u, w], axis=-1)

    def matvec(self, m: np.ndarray, v: np.ndarray):
        return self.sum(self.mul_table[m, np.asarray(v)[None, :]], axis=1)

    def matmul(self, a: np.ndarray, b: np.ndarray):
        prods = self.mul_table[np.asarray(a)[:, :, None], np.asarray(b)[None, :, :]]
        return self.sum(prods, axis=1)

    def mat_power_is_identity(self, m: np.ndarray) -> bool:
        return bool(np.array_equal(m, np.eye(m.shape[0], dtype=np.int8)))


F2 = Field(2)
F3 = Field(3)
F4 = Field(4)

_BY_ORDER = {2: F2, 3: F3, 4: F4}


def get_field(order: int) -> Field:
    try:
        return _BY_ORDER[order]
    except KeyError:
        raise ValueError(f"unsupported field order {order}") from None
