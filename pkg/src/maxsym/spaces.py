"""Bilinear and quadratic form spaces over GF(2), GF(3), GF(4).

A FormSpace is a dimension, a Gram matrix and (for quadratic kinds) the
diagonal of Q on the distinguished basis.  Four kinds appear:

* symplectic: alternating bilinear form over GF(2)
* unitary: hermitian form over GF(4), linear in the first argument and
  conjugate-linear in the second
* orthogonal_f2: quadratic form Q over GF(2) with its (alternating) polar
  form as Gram matrix; Q is reconstructed from qdiag via the polar identity
* orthogonal_f3: symmetric bilinear form over GF(3) with Q(v) = -(v, v)

Vectors are int8 numpy arrays of field codes.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .gf import F2, F3, F4, Field

__all__ = [
    "FormKind",
    "FormSpace",
    "LinearSolution",
    "QuotientSpace",
    "bilinear",
    "quadratic",
    "solve_linear",
    "perp_basis",
    "radical",
    "perp_quotient",
    "orthogonal_type_f2",
    "discriminant_f3",
    "symplectic_pairs",
    "unitary_orthonormal",
    "f3_diag",
    "f2_quadratic",
    "f2_perm_symplectic",
    "f2_perm_quadratic",
    "all_vectors",
]


class FormKind(enum.Enum):
    SYMPLECTIC = "symplectic"
    UNITARY = "unitary"
    ORTHOGONAL_F2 = "orthogonal_f2"
    ORTHOGONAL_F3 = "orthogonal_f3"


_KIND_FIELD = {
    FormKind.SYMPLECTIC: F2,
    FormKind.UNITARY: F4,
    FormKind.ORTHOGONAL_F2: F2,
    FormKind.ORTHOGONAL_F3: F3,
}


@dataclass(frozen=True)
class FormSpace:
    kind: FormKind
    dim: int
    gram: np.ndarray
    qdiag: np.ndarray | None = None

    def __post_init__(self):
        f = self.field
        gram = f.asarray(self.gram)
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)
        if gram.shape != (self.dim, self.dim):
            raise ValueError(f"gram shape {gram.shape} does not match dim {self.dim}")
        if self.kind is FormKind.ORTHOGONAL_F2:
            if self.qdiag is None:
                raise ValueError("orthogonal_f2 spaces need qdiag")
            qd = f.asarray(self.qdiag)
            qd.setflags(write=False)
            object.__setattr__(self, "qdiag", qd)
            if qd.shape != (self.dim,):
                raise ValueError("qdiag length does not match dim")
        elif self.qdiag is not None:
            raise ValueError(f"{self.kind.value} spaces do not take qdiag")
        self._validate_symmetry()

    @property
    def field(self) -> Field:
        return _KIND_FIELD[self.kind]

    def _validate_symmetry(self):
        f, g = self.field, self.gram
        if self.kind in (FormKind.SYMPLECTIC, FormKind.ORTHOGONAL_F2):
            if not np.array_equal(g, g.T) or np.any(np.diagonal(g)):
                raise ValueError("polar/symplectic Gram must be symmetric with zero diagonal")
        elif self.kind is FormKind.UNITARY:
            if not np.array_equal(g, f.conj(g.T)):
                raise ValueError("unitary Gram must be conjugate-symmetric")
        else:
            if not np.array_equal(g, g.T):
                raise ValueError("orthogonal_f3 Gram must be symmetric")

    def vec(self, v) -> np.ndarray:
        arr = self.field.asarray(v)
        if arr.shape != (self.dim,):
            raise ValueError(f"vector length {arr.shape} does not match dim {self.dim}")
        return arr

    def __repr__(self):
        return f"FormSpace({self.kind.value}, dim={self.dim})"


# ---------------------------------------------------------------------------
# form evaluation


def bilinear(space: FormSpace, u, w) -> int:
    """(u, w) via the Gram matrix; unitary forms conjugate the second slot."""
    f = space.field
    u = space.vec(u)
    w = space.vec(w)
    return int(f.dot(u, f.matvec(space.gram, f.conj(w))))


def bilinear_rows(space: FormSpace, mat: np.ndarray, w) -> np.ndarray:
    """(row_i, w) for every row of mat, vectorized."""
    f = space.field
    a = f.matvec(space.gram, f.conj(space.vec(w)))
    return f.sum(f.mul_table[np.asarray(mat, dtype=np.int8), a[None, :]], axis=1)


def quadratic(space: FormSpace, v) -> int:
    """Q(v) for the orthogonal kinds."""
    return int(quadratic_rows(space, space.vec(v)[None, :])[0])


def quadratic_rows(space: FormSpace, mat: np.ndarray) -> np.ndarray:
    f = space.field
    mat = np.asarray(mat, dtype=np.int8)
    if space.kind is FormKind.ORTHOGONAL_F2:
        diag_part = f.sum(f.mul_table[mat, space.qdiag[None, :]], axis=1)
        upper = np.triu(space.gram, 1)
        # cross terms sum_{i<j} v_i v_j (b_i, b_j) via v^T U v
        gu = (mat.astype(np.int64) @ upper) % 2
        cross = f.sum(f.mul_table[mat, gu.astype(np.int8)], axis=1)
        return f.add(diag_part, cross)
    if space.kind is FormKind.ORTHOGONAL_F3:
        gm = (mat.astype(np.int64) @ space.gram) % 3
        vals = (mat.astype(np.int64) * gm).sum(axis=1) % 3
        return ((-vals) % 3).astype(np.int8)
    raise ValueError(f"quadratic form undefined for kind {space.kind.value}")


# ---------------------------------------------------------------------------
# linear systems in the form geometry


@dataclass(frozen=True)
class LinearSolution:
    """Affine solution set particular + span(kernel rows)."""

    particular: np.ndarray
    kernel: np.ndarray

    @property
    def count(self) -> int:
        return int(self.kernel.shape[0])

    def enumerate(self, field: Field) -> np.ndarray:
        return linalg.enumerate_span(field, self.kernel, self.particular)


def constraint_matrix(space: FormSpace, vectors) -> np.ndarray:
    """Rows a_c with (x, c) = x . a_c, one per constraint vector c."""
    f = space.field
    rows = [f.matvec(space.gram, f.conj(space.vec(c))) for c in vectors]
    return np.array(rows, dtype=np.int8).reshape(len(rows), space.dim)


def solve_linear(space: FormSpace, constraints) -> LinearSolution | None:
    """Solve (x, c_i) = s_i for all given (c_i, s_i) pairs.

    Returns None when the system is inconsistent; the empty constraint list
    yields the whole space.
    """
    f = space.field
    if not constraints:
        return LinearSolution(
            np.zeros(space.dim, dtype=np.int8), np.eye(space.dim, dtype=np.int8)
        )
    mat = constraint_matrix(space, [c for c, _ in constraints])
    rhs = np.array([s for _, s in constraints], dtype=np.int8)
    sol = linalg.solve_affine(f, mat, rhs)
    if sol is None:
        return None
    return LinearSolution(*sol)


def perp_basis(space: FormSpace, v) -> np.ndarray:
    """Basis rows of the hyperplane {x : (x, v) = 0}."""
    return linalg.kernel_basis(space.field, constraint_matrix(space, [v]))


def radical(space: FormSpace, subspace_rows: np.ndarray | None = None) -> np.ndarray:
    """Radical of the form restricted to a subspace (whole space by default).

    Returns basis rows in ambient coordinates.
    """
    f = space.field
    if subspace_rows is None:
        subspace_rows = np.eye(space.dim, dtype=np.int8)
    rows = np.asarray(subspace_rows, dtype=np.int8).reshape(-1, space.dim)
    gram_u = np.array(
        [[bilinear(space, u, w) for w in rows] for u in rows], dtype=np.int8
    ).reshape(len(rows), len(rows))
    coeffs = linalg.kernel_basis(f, gram_u.T)
    if coeffs.size == 0:
        return np.zeros((0, space.dim), dtype=np.int8)
    prods = f.mul_table[coeffs[:, :, None], rows[None, :, :]]
    return f.sum(prods, axis=1).astype(np.int8)


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientSpace:
    """perp(v) / <r> with a fixed section and projection.

    section_rows holds lifts of the induced basis; project maps a vector of
    perp(v) to induced coordinates.
    """

    parent: FormSpace
    v: np.ndarray
    r: np.ndarray
    space: FormSpace
    section_rows: np.ndarray
    _projection: np.ndarray = dc_field(repr=False, default=None)

    def lift(self, coords) -> np.ndarray:
        f = self.parent.field
        coords = self.space.vec(coords)
        prods = f.mul_table[coords[:, None], self.section_rows]
        return f.sum(prods, axis=0).astype(np.int8)

    def project(self, x) -> np.ndarray:
        x = self.parent.vec(x)
        if bilinear(self.parent, x, self.v) != 0:
            raise ValueError("vector is not in perp(v)")
        return self.parent.field.matvec(self._projection, x)

    def push_matrix(self, m: np.ndarray) -> np.ndarray:
        """Induced matrix of an ambient map that preserves perp(v) and <r>."""
        f = self.parent.field
        m = f.asarray(m)
        mr = f.matvec(m, self.r)
        if not _collinear(f, mr, self.r):
            raise ValueError("map does not preserve the modded line <r>")
        images = [f.matvec(m, row) for row in self.section_rows]
        for img in images:
            if bilinear(self.parent, img, self.v) != 0:
                raise ValueError("map does not preserve perp(v)")
        cols = [f.matvec(self._projection, img) for img in images]
        return np.array(cols, dtype=np.int8).T


def _collinear(f: Field, x: np.ndarray, y: np.ndarray) -> bool:
    nz = np.flatnonzero(y)
    if nz.size == 0:
        return not np.any(x)
    c = f.mul(int(x[nz[0]]), f.inv(int(y[nz[0]])))
    return bool(np.array_equal(x, f.mul_table[c, y]))


def perp_quotient(space: FormSpace, v, r) -> QuotientSpace:
    """Quotient of the hyperplane perp(v) by a radical vector r.

    r must lie in perp(v), pair to zero with all of perp(v), and for
    quadratic-form spaces satisfy Q(r) = 0 so that Q descends.
    """
    f = space.field
    v = space.vec(v)
    r = space.vec(r)
    if not np.any(r):
        raise ValueError("r must be nonzero")
    if bilinear(space, r, v) != 0:
        raise ValueError("r is not in perp(v)")
    wp = perp_basis(space, v)
    for row in wp:
        if bilinear(space, row, r) != 0:
            raise ValueError("r is not in the radical of the restricted form")
    if space.kind is FormKind.ORTHOGONAL_F2 and quadratic(space, r) != 0:
        raise ValueError("Q(r) must vanish for the quadratic form to descend")

    # basis of perp(v) starting with r, then independent rows of wp
    picked = [r]
    for row in wp:
        if linalg.is_independent(f, np.array(picked, dtype=np.int8), row):
            picked.append(row)
    if len(picked) != wp.shape[0]:
        raise ValueError("r is not inside perp(v)")
    section = np.array(picked[1:], dtype=np.int8)

    # complete to an ambient basis for the coordinate map
    full = list(picked)
    for j in range(space.dim):
        if len(full) == space.dim:
            break
        e = np.zeros(space.dim, dtype=np.int8)
        e[j] = 1
        if linalg.is_independent(f, np.array(full, dtype=np.int8), e):
            full.append(e)
    finv = linalg.inverse(f, np.array(full, dtype=np.int8).T)
    projection = finv[1 : 1 + section.shape[0], :]

    ind_dim = section.shape[0]
    gram = np.array(
        [[bilinear(space, a, b) for b in section] for a in section], dtype=np.int8
    ).reshape(ind_dim, ind_dim)
    qdiag = None
    if space.kind is FormKind.ORTHOGONAL_F2:
        qdiag = quadratic_rows(space, section)
    induced = FormSpace(space.kind, ind_dim, gram, qdiag)
    return QuotientSpace(space, v, r, induced, section, projection)


# ---------------------------------------------------------------------------
# invariants of a space


@functools.lru_cache(maxsize=None)
def _all_vectors_cached(order: int, dim: int) -> np.ndarray:
    f = {2: F2, 3: F3, 4: F4}[order]
    vecs = np.array(list(itertools.product(f.elements(), repeat=dim)), dtype=np.int8)
    return vecs.reshape(order**dim, dim)


def all_vectors(space: FormSpace) -> np.ndarray:
    """Every vector of the space, lexicographic order, including zero."""
    return _all_vectors_cached(space.field.order, space.dim)


def orthogonal_type_f2(space: FormSpace) -> int:
    """Type of a nondegenerate even-dimensional quadratic GF(2) space.

    +1 or -1, determined by counting nonzero singular vectors against
    2^(n-1) + eps 2^(n/2-1) - 1.
    """
    if space.kind is not FormKind.ORTHOGONAL_F2:
        raise ValueError("type is defined for orthogonal_f2 spaces")
    n = space.dim
    vecs = all_vectors(space)
    singular = int(np.count_nonzero(quadratic_rows(space, vecs) == 0)) - 1
    if n % 2 == 0:
        for eps in (1, -1):
            if singular == 2 ** (n - 1) + eps * 2 ** (n // 2 - 1) - 1:
                return eps
    raise ValueError(f"no orthogonal type matches singular count {singular} in dim {n}")


def discriminant_f3(space: FormSpace) -> int:
    """+1 if det(gram) = 1, -1 if det(gram) = 2; error on degenerate forms."""
    if space.kind is not FormKind.ORTHOGONAL_F3:
        raise ValueError("discriminant is defined for orthogonal_f3 spaces")
    det = linalg.determinant(F3, space.gram)
    if det == 1:
        return 1
    if det == 2:
        return -1
    raise ValueError("degenerate form has no discriminant")


# ---------------------------------------------------------------------------
# presets


def symplectic_pairs(dim: int) -> FormSpace:
    """Hyperbolic pairs (v1,v2) = (v3,v4) = ... = 1 over GF(2)."""
    if dim < 2 or dim % 2:
        raise ValueError(f"symplectic spaces need even dim >= 2, got {dim}")
    gram = np.zeros((dim, dim), dtype=np.int8)
    for i in range(0, dim, 2):
        gram[i, i + 1] = gram[i + 1, i] = 1
    return FormSpace(FormKind.SYMPLECTIC, dim, gram)


def unitary_orthonormal(dim: int) -> FormSpace:
    """Orthonormal hermitian basis over GF(4)."""
    if dim < 1:
        raise ValueError("dim must be positive")
    return FormSpace(FormKind.UNITARY, dim, np.eye(dim, dtype=np.int8))


def f3_diag(dim: int, neg_last: bool = False) -> FormSpace:
    """diag(1,...,1) or diag(1,...,1,-1) over GF(3).

    The all-plus form has discriminant +, the neg_last form discriminant -.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    gram = np.eye(dim, dtype=np.int8)
    if neg_last:
        gram[dim - 1, dim - 1] = 2
    return FormSpace(FormKind.ORTHOGONAL_F3, dim, gram)


def f2_quadratic(dim: int, eps: int) -> FormSpace:
    """Quadratic GF(2) space of type eps on the pairs basis.

    Even dim: Q = 1 on the first dim-1 basis vectors and Q(v_dim) picked so
    the singular count matches eps.  Odd dim gives the defective space (the
    last basis vector spans the polar radical with Q = 1); both eps values
    name the same space there since odd-dimensional nondegenerate quadratic
    forms over GF(2) are unique up to isometry.
    """
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    gram = np.zeros((dim, dim), dtype=np.int8)
    for i in range(0, dim - 1, 2):
        gram[i, i + 1] = gram[i + 1, i] = 1
    qdiag = np.ones(dim, dtype=np.int8)
    if dim % 2 == 0:
        wants_last_one = (dim % 4 == 0) == (eps == 1)
        qdiag[dim - 1] = 1 if wants_last_one else 0
        space = FormSpace(FormKind.ORTHOGONAL_F2, dim, gram, qdiag)
        if orthogonal_type_f2(space) != eps:
            raise AssertionError("preset failed its own type check")
        return space
    return FormSpace(FormKind.ORTHOGONAL_F2, dim, gram, qdiag)


def f2_perm_symplectic(dim: int) -> FormSpace:
    """All-ones-off-diagonal alternating form (coordinate-permutation model)."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    gram = np.ones((dim, dim), dtype=np.int8) - np.eye(dim, dtype=np.int8)
    return FormSpace(FormKind.SYMPLECTIC, dim, gram)


def f2_perm_quadratic(dim: int, qdiag) -> FormSpace:
    """All-ones-off-diagonal polar form with a prescribed Q diagonal."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    gram = np.ones((dim, dim), dtype=np.int8) - np.eye(dim, dtype=np.int8)
    qd = np.asarray(qdiag, dtype=np.int8)
    if qd.shape != (dim,):
        raise ValueError("qdiag length must equal dim")
    return FormSpace(FormKind.ORTHOGONAL_F2, dim, gram, qd)
