"""The transposition class D of a form space and its action.

Class members are projective: t(v) = t(cv), so elements are stored by the
canonical representative whose first nonzero coordinate is 1.  Membership
follows the kind:

* symplectic: every nonzero vector (transvection w -> w + (w,v)v)
* unitary: nonzero singular vectors, (v,v) = 0
* orthogonal_f2: Q(v) = 1
* orthogonal_f3: Q(v) = pi for the chosen reflection class pi in {+1, -1},
  acting by w -> w - (w,v) Q(v)^(-1) v

Vectors inside the radical of the (polar) form are excluded throughout:
their transvections are the identity, not involutions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import OrderCapExceeded
from .spaces import FormKind, FormSpace, all_vectors, bilinear, quadratic_rows

__all__ = [
    "ClassSpec",
    "ClassElement",
    "class_element",
    "in_class",
    "in_class_rows",
    "canonical_rep",
    "canonical_rep_rows",
    "enumerate_class",
    "apply_transposition",
    "matrix_of",
    "commutes",
    "product_order",
    "identity_matrix",
]


@dataclass(frozen=True)
class ClassSpec:
    """Selects the transposition class; pi only matters over GF(3)."""

    pi: int = 1

    def __post_init__(self):
        if self.pi not in (1, -1):
            raise ValueError(f"pi must be +1 or -1, got {self.pi}")

    @property
    def pi_code(self) -> int:
        return 1 if self.pi == 1 else 2


@dataclass(frozen=True, order=True)
class ClassElement:
    """A class member, keyed by its canonical projective representative."""

    rep: tuple

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rep, dtype=np.int8)

    def __repr__(self):
        return f"ClassElement{self.rep}"


def canonical_rep(space: FormSpace, v) -> np.ndarray:
    """Scale v so its first nonzero coordinate is 1."""
    f = space.field
    v = space.vec(v)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        raise ValueError("zero vector has no canonical representative")
    return f.mul_table[f.inv(int(v[nz[0]])), v]


def canonical_rep_rows(space: FormSpace, mat: np.ndarray) -> np.ndarray:
    f = space.field
    mat = np.asarray(mat, dtype=np.int8)
    first = np.argmax(mat != 0, axis=1)
    lead = mat[np.arange(len(mat)), first]
    if np.any(lead == 0):
        raise ValueError("zero row has no canonical representative")
    return f.mul_table[f.inv_table[lead][:, None], mat]


def _radical_echelon(space: FormSpace):
    rad = linalg.kernel_basis(space.field, space.gram.T)
    return linalg.row_reduce(space.field, rad) if rad.size else (rad, [])


def in_class_rows(space: FormSpace, spec: ClassSpec, mat: np.ndarray) -> np.ndarray:
    """Vectorized membership test for the rows of mat."""
    f = space.field
    mat = np.asarray(mat, dtype=np.int8)
    ok = np.any(mat != 0, axis=1)
    if space.kind is FormKind.UNITARY:
        gcv = f.sum(
            f.mul_table[space.gram[None, :, :], f.conj(mat)[:, None, :]], axis=2
        )
        norms = f.sum(f.mul_table[mat, gcv.astype(np.int8)], axis=1)
        ok &= norms == 0
    elif space.kind is FormKind.ORTHOGONAL_F2:
        ok &= quadratic_rows(space, mat) == 1
    elif space.kind is FormKind.ORTHOGONAL_F3:
        ok &= quadratic_rows(space, mat) == spec.pi_code
    ech, pivots = _radical_echelon(space)
    if pivots:
        reduced = linalg.reduce_against(f, ech, pivots, mat)
        ok &= np.any(reduced != 0, axis=1)
    return ok


def in_class(space: FormSpace, spec: ClassSpec, v) -> bool:
    return bool(in_class_rows(space, spec, space.vec(v)[None, :])[0])


def class_element(space: FormSpace, spec: ClassSpec, v) -> ClassElement:
    if not in_class(space, spec, v):
        raise ValueError(f"vector {list(np.asarray(v))} is not in class D")
    return ClassElement(tuple(int(c) for c in canonical_rep(space, v)))


def enumerate_class(space: FormSpace, spec: ClassSpec) -> np.ndarray:
    """All canonical class representatives, lexicographically sorted rows."""
    vecs = all_vectors(space)
    nonzero = vecs[np.any(vecs != 0, axis=1)]
    reps = canonical_rep_rows(space, nonzero)
    reps = np.unique(reps, axis=0)
    return reps[in_class_rows(space, spec, reps)]


# ---------------------------------------------------------------------------
# the action


def _scale_code(space: FormSpace, v: np.ndarray) -> int:
    """Coefficient k in t(v): w -> w + k (w,v) v."""
    f = space.field
    if space.kind is FormKind.ORTHOGONAL_F3:
        q = int(quadratic_rows(space, v[None, :])[0])
        if q == 0:
            raise ValueError("reflection needs Q(v) != 0")
        return int(f.neg(f.inv(q)))
    return 1


def apply_transposition(space: FormSpace, v, w) -> np.ndarray:
    """Image of w under the transvection/reflection attached to v."""
    f = space.field
    v = space.vec(v)
    w = space.vec(w)
    c = f.mul(bilinear(space, w, v), _scale_code(space, v))
    return f.add(w, f.mul_table[c, v])


def matrix_of(space: FormSpace, v) -> np.ndarray:
    """Matrix of t(v) acting on column vectors."""
    f = space.field
    v = space.vec(v)
    a = f.matvec(space.gram, f.conj(v))
    k = _scale_code(space, v)
    outer = f.mul_table[f.mul_table[k, v][:, None], a[None, :]]
    return f.add(np.eye(space.dim, dtype=np.int8), outer)


def identity_matrix(space: FormSpace) -> np.ndarray:
    return np.eye(space.dim, dtype=np.int8)


def commutes(space: FormSpace, u, w) -> bool:
    """Class elements commute exactly when their vectors pair to zero."""
    return bilinear(space, u, w) == 0


def product_order(space: FormSpace, g: np.ndarray, h: np.ndarray, cap: int = 12) -> int:
    """Order of g @ h by repeated multiplication, capped."""
    f = space.field
    prod = f.matmul(g, h)
    eye = np.eye(space.dim, dtype=np.int8)
    acc = prod
    for k in range(1, cap + 1):
        if np.array_equal(acc, eye):
            return k
        acc = f.matmul(acc, prod)
    raise OrderCapExceeded(f"order exceeds cap {cap}")
