"""Maximal chain search in a transposition class.

A chain is a sequence of class elements, pairwise distinct as projective
points, in which consecutive members do not commute while every
non-consecutive pair does.  A chain of length m generates a symmetric group
on m + 1 letters, so the longest chain measures the largest symmetric
subgroup visible inside the transposition group.

The search is an exhaustive depth-first enumeration with two exact pruning
rules:

* an extension that is linearly dependent on the chain so far is always a
  leaf, because any further element would have to be perpendicular to every
  chain member except the new one, which contradicts the dependency; and
* in the default ``witt`` mode, a sibling extension is skipped when an
  explicitly constructed and verified automorphism of the form space fixes
  the current chain pointwise and carries an already kept sibling onto it.
  The automorphism maps extension chains to extension chains, so the two
  subtrees have the same maximal depth and skipping one cannot change the
  answer.

Certificate construction is greedy and may dead-end; a sibling whose
certificate fails is simply explored, which keeps the search unconditionally
exhaustive.  Modes ``none`` (no collapsing) and ``first`` (collapse the
root level only, where the isometry group acts transitively on the class)
exist to cross-check ``witt`` on small spaces.

Candidates extending a chain are normalized to pair to 1 with the last
chain element; every projective extension class contains exactly one such
vector, so the candidate sets are both complete and duplicate-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import SearchBudgetExceeded, WittExtensionError
from .spaces import (
    FormKind,
    FormSpace,
    bilinear,
    bilinear_rows,
    quadratic,
    quadratic_rows,
    solve_linear,
)
from .transpositions import (
    ClassSpec,
    canonical_rep,
    canonical_rep_rows,
    enumerate_class,
    in_class,
    in_class_rows,
)

__all__ = [
    "MODES",
    "DEFAULT_BUDGET",
    "SearchOutcome",
    "chain_violations",
    "is_chain",
    "extend_candidates",
    "witt_extend",
    "realize_gram",
    "max_chain",
]

MODES = ("none", "first", "witt")
DEFAULT_BUDGET = 10**8


# ---------------------------------------------------------------------------
# chain predicates


def chain_violations(space: FormSpace, spec: ClassSpec, vectors) -> list[str]:
    """Every way the given sequence fails to be a chain, as messages."""
    rows = [space.vec(v) for v in vectors]
    msgs = []
    for i, v in enumerate(rows):
        if not in_class(space, spec, v):
            msgs.append(f"element {i} is not in the transposition class")
    canon = [
        tuple(int(x) for x in canonical_rep(space, v)) if v.any() else None
        for v in rows
    ]
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if canon[i] is not None and canon[i] == canon[j]:
                msgs.append(f"elements {i} and {j} are the same projective point")
            b = bilinear(space, rows[i], rows[j])
            if j == i + 1 and b == 0:
                msgs.append(f"consecutive elements {i} and {j} commute")
            elif j > i + 1 and b != 0:
                msgs.append(f"non-consecutive elements {i} and {j} do not commute")
    return msgs


def is_chain(space: FormSpace, spec: ClassSpec, vectors) -> bool:
    return not chain_violations(space, spec, vectors)


# ---------------------------------------------------------------------------
# candidate generation


def extend_candidates(space: FormSpace, spec: ClassSpec, prefix) -> np.ndarray:
    """All one-step extensions of a chain, one vector per projective class.

    The empty prefix yields the canonical class representatives.  Otherwise
    candidates x satisfy (x, e_i) = 0 for all but the last chain element and
    (x, e_last) = 1, are class members, and are projectively distinct from
    the prefix.  Rows come back lexicographically sorted.
    """
    f = space.field
    if not len(prefix):
        return enumerate_class(space, spec)
    rows = [space.vec(v) for v in prefix]
    constraints = [(e, 0) for e in rows[:-1]] + [(rows[-1], 1)]
    sol = solve_linear(space, constraints)
    if sol is None:
        return np.zeros((0, space.dim), dtype=np.int8)
    vecs = sol.enumerate(f)
    vecs = vecs[in_class_rows(space, spec, vecs)]
    if vecs.shape[0] == 0:
        return vecs.reshape(0, space.dim)
    seen = {tuple(int(x) for x in canonical_rep(space, r)) for r in rows}
    canon = canonical_rep_rows(space, vecs)
    keep = [i for i in range(vecs.shape[0]) if tuple(int(x) for x in canon[i]) not in seen]
    vecs = vecs[keep]
    if vecs.shape[0] > 1:
        vecs = vecs[np.lexsort(vecs.T[::-1])]
    return vecs


# ---------------------------------------------------------------------------
# isometry certificates


def _square_target(space: FormSpace, v: np.ndarray):
    """The invariant a completion partner must reproduce, or None."""
    if space.kind is FormKind.SYMPLECTIC:
        return None
    if space.kind is FormKind.UNITARY:
        return bilinear(space, v, v)
    return quadratic(space, v)


def _square_values(space: FormSpace, rows: np.ndarray) -> np.ndarray:
    if space.kind is FormKind.UNITARY:
        f = space.field
        gc = f.sum(f.mul_table[space.gram[None, :, :], f.conj(rows)[:, None, :]], axis=2)
        return f.sum(f.mul_table[rows, gc.astype(np.int8)], axis=1)
    return quadratic_rows(space, rows)


def _affine_blocks(f, sol):
    """Partition the affine solution set into blocks of increasing size.

    Block j holds the vectors whose last nonzero kernel coefficient sits at
    position j, so early blocks are tiny and a match is usually found before
    the large tail is ever materialized.
    """
    part, ker = sol.particular, sol.kernel
    yield part[None, :]
    for j in range(ker.shape[0]):
        base = linalg.enumerate_span(f, ker[:j], part)
        for c in f.elements()[1:]:
            shift = f.mul_table[c, ker[j]]
            yield f.add(base, shift[None, :])


def _pick_partner(space, sol, target, img_ech, img_piv):
    for block in _affine_blocks(space.field, sol):
        if target is not None:
            block = block[_square_values(space, block) == target]
            if block.shape[0] == 0:
                continue
        res = linalg.reduce_against(space.field, img_ech, img_piv, block)
        idx = np.flatnonzero(np.any(res != 0, axis=1))
        if idx.size:
            return block[idx[0]]
    return None


def witt_extend(space: FormSpace, src_rows, dst_rows) -> np.ndarray:
    """Extend src_i -> dst_i to a verified automorphism of the form space.

    Both sides must be independent lists with matching pairings.  The
    completion is greedy: each remaining basis direction is matched with a
    partner that reproduces its pairings against the rows fixed so far (plus
    the quadratic/norm value where the form has one).  Greedy search can
    dead-end even when an automorphism exists, in which case
    WittExtensionError is raised; a returned matrix has always been checked
    to preserve the form and hit the prescribed images.
    """
    f = space.field
    src = [space.vec(r) for r in src_rows]
    dst = [space.vec(r) for r in dst_rows]
    if len(src) != len(dst) or not src:
        raise ValueError("need equally many source and destination vectors")
    src_arr = np.array(src, dtype=np.int8)
    if linalg.rank(f, src_arr) != len(src):
        raise WittExtensionError("source vectors are dependent")
    dom = list(src)
    img = list(dst)
    while len(dom) < space.dim:
        dom_arr = np.array(dom, dtype=np.int8)
        ech, piv = linalg.row_reduce(f, dom_arr)
        ech = ech[: len(piv)]
        v = None
        for idx in range(space.dim):
            e = np.zeros(space.dim, dtype=np.int8)
            e[idx] = 1
            if linalg.reduce_against(f, ech, piv, e[None, :]).any():
                v = e
                break
        constraints = [(img[j], bilinear(space, v, dom[j])) for j in range(len(dom))]
        sol = solve_linear(space, constraints)
        if sol is None:
            raise WittExtensionError("pairing constraints have no solution")
        img_arr = np.array(img, dtype=np.int8)
        iech, ipiv = linalg.row_reduce(f, img_arr)
        iech = iech[: len(ipiv)]
        w = _pick_partner(space, sol, _square_target(space, v), iech, ipiv)
        if w is None:
            raise WittExtensionError("greedy completion dead-ended")
        dom.append(v)
        img.append(w)
    m = f.matmul(np.array(img, dtype=np.int8).T, linalg.inverse(f, np.array(dom, dtype=np.int8).T))
    _verify_certificate(space, m, src, dst)
    return m


def _verify_certificate(space, m, src, dst):
    f = space.field
    pulled = f.matmul(f.matmul(m.T, space.gram), f.conj(m))
    if not np.array_equal(pulled, space.gram):
        raise WittExtensionError("certificate does not preserve the form")
    if space.kind is FormKind.ORTHOGONAL_F2:
        if not np.array_equal(quadratic_rows(space, m.T), space.qdiag):
            raise WittExtensionError("certificate does not preserve Q")
    for s, d in zip(src, dst):
        if not np.array_equal(f.matvec(m, s), d):
            raise WittExtensionError("certificate misses a prescribed image")


def realize_gram(space: FormSpace, gram, qdiag=None) -> np.ndarray:
    """Independent rows of space with the prescribed pairing matrix.

    gram[i][j] is the required value of (row_i, row_j); for the unitary kind
    the diagonal doubles as the norm target, for orthogonal GF(3) it fixes Q
    through Q = -(v, v), and for quadratic GF(2) targets the separate qdiag
    gives the required Q values.  Rows are found greedily, one at a time,
    the same way witt_extend completes a basis; a dead end raises
    WittExtensionError even when a different branch might have succeeded.
    The returned rows are verified against every requested value.
    """
    f = space.field
    gram = np.asarray(gram, dtype=np.int8)
    k = gram.shape[0]
    if gram.shape != (k, k):
        raise ValueError("gram must be a square matrix")
    if k > space.dim:
        raise ValueError("cannot realize more independent rows than dim")
    if space.kind in (FormKind.SYMPLECTIC, FormKind.ORTHOGONAL_F2):
        if np.any(np.diagonal(gram)):
            raise ValueError("the polar form over GF(2) is alternating")
    if space.kind is FormKind.ORTHOGONAL_F2:
        if qdiag is None:
            raise ValueError("qdiag is required for quadratic GF(2) targets")
        qdiag = np.asarray(qdiag, dtype=np.int8)
        if qdiag.shape != (k,):
            raise ValueError("qdiag length must match gram")
    elif qdiag is not None:
        raise ValueError("qdiag only applies to orthogonal_f2 targets")

    rows: list[np.ndarray] = []
    for i in range(k):
        constraints = [(rows[j], int(gram[i, j])) for j in range(i)]
        sol = solve_linear(space, constraints)
        if sol is None:
            raise WittExtensionError("pairing constraints have no solution")
        if space.kind is FormKind.SYMPLECTIC:
            target = None
        elif space.kind is FormKind.ORTHOGONAL_F2:
            target = int(qdiag[i])
        elif space.kind is FormKind.ORTHOGONAL_F3:
            target = int(f.neg(int(gram[i, i])))
        else:
            target = int(gram[i, i])
        if rows:
            ech, piv = linalg.row_reduce(f, np.array(rows, dtype=np.int8))
            ech = ech[: len(piv)]
        else:
            ech, piv = np.zeros((0, space.dim), dtype=np.int8), []
        w = _pick_partner(space, sol, target, ech, piv)
        if w is None:
            raise WittExtensionError("greedy realization dead-ended")
        rows.append(w)

    out = np.array(rows, dtype=np.int8).reshape(k, space.dim)
    for i in range(k):
        if not np.array_equal(bilinear_rows(space, out, out[i]), gram[:, i]):
            raise WittExtensionError("realized rows miss a pairing target")
    if space.kind is FormKind.ORTHOGONAL_F2:
        if not np.array_equal(quadratic_rows(space, out), qdiag):
            raise WittExtensionError("realized rows miss a Q target")
    return out


# ---------------------------------------------------------------------------
# the search


@dataclass(frozen=True)
class SearchOutcome:
    """Result of an exhaustive chain search.

    length is exact in every mode.  witness is the lexicographically least
    maximal chain among the branches the chosen mode explored, as canonical
    representative tuples; it is deterministic for a fixed mode but may
    differ between modes.  collapsed counts siblings skipped behind a
    certificate, cert_failures the siblings explored because certificate
    construction failed.
    """

    length: int
    witness: tuple
    mode: str
    nodes: int
    collapsed: int
    cert_failures: int

    def witness_arrays(self) -> list[np.ndarray]:
        return [np.array(w, dtype=np.int8) for w in self.witness]


def max_chain(
    space: FormSpace,
    spec: ClassSpec = ClassSpec(),
    mode: str = "witt",
    node_budget: int = DEFAULT_BUDGET,
    start=(),
) -> SearchOutcome:
    """Length of the longest chain in the class, plus a witness.

    start seeds the search with an existing chain; the outcome is then the
    longest chain extending it, start included in the length.  Raises
    SearchBudgetExceeded when more than node_budget chain prefixes would
    have to be visited.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    start_rows = [space.vec(v) for v in start]
    if start_rows and not is_chain(space, spec, start_rows):
        raise ValueError("start must itself be a chain in the class")
    f = space.field
    counters = {"nodes": 0, "collapsed": 0, "cert_failures": 0}
    best = [0, ()]

    def consider(rows):
        length = len(rows)
        if length < best[0]:
            return
        canon = tuple(tuple(int(x) for x in canonical_rep(space, r)) for r in rows)
        if length > best[0]:
            best[0] = length
            best[1] = canon
        elif canon < best[1]:
            best[1] = canon

    def bump(n=1):
        counters["nodes"] += n
        if counters["nodes"] > node_budget:
            raise SearchBudgetExceeded(
                f"chain search visited more than {node_budget} nodes"
            )

    def recurse(prefix):
        bump()
        consider(prefix)
        cands = extend_candidates(space, spec, prefix)
        if cands.shape[0] == 0:
            return
        if prefix:
            ech, piv = linalg.row_reduce(f, np.array(prefix, dtype=np.int8))
            ech = ech[: len(piv)]
            residues = linalg.reduce_against(f, ech, piv, cands)
            dep_mask = ~np.any(residues != 0, axis=1)
        else:
            dep_mask = np.zeros(cands.shape[0], dtype=bool)
        dependent = cands[dep_mask]
        if dependent.shape[0]:
            # exact rule: dependent extensions are leaves, all of the same
            # length, so only the lexicographically least one is recorded
            bump(int(dependent.shape[0]))
            canon = canonical_rep_rows(space, dependent)
            pick = min(range(dependent.shape[0]), key=lambda i: tuple(canon[i]))
            consider(prefix + [dependent[pick]])
        independent = cands[~dep_mask]
        if independent.shape[0] == 0:
            return
        if mode == "none" or (mode == "first" and prefix):
            keepers = list(independent)
        elif mode == "first":
            keepers = [independent[0]]
            counters["collapsed"] += independent.shape[0] - 1
        else:
            keepers = [independent[0]]
            anchor = independent[0]
            for x in independent[1:]:
                try:
                    witt_extend(space, prefix + [anchor], prefix + [x])
                    counters["collapsed"] += 1
                except WittExtensionError:
                    counters["cert_failures"] += 1
                    keepers.append(x)
        for x in keepers:
            recurse(prefix + [x])

    recurse(start_rows)
    return SearchOutcome(
        length=best[0],
        witness=best[1],
        mode=mode,
        nodes=counters["nodes"],
        collapsed=counters["collapsed"],
        cert_failures=counters["cert_failures"],
    )
