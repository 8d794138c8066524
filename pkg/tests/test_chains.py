"""Chain predicates, candidate generation, certificates, and the search.

The expected maximal lengths in the small tables below are derived by hand
from the class geometry (the arguments are in comments next to the values);
medium cases are frozen after cross-checking all three search modes against
each other, which only share the candidate generator, not the pruning.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maxsym import linalg
from maxsym.chains import (
    DEFAULT_BUDGET,
    MODES,
    chain_violations,
    extend_candidates,
    is_chain,
    max_chain,
    witt_extend,
)
from maxsym.errors import SearchBudgetExceeded, WittExtensionError
from maxsym.spaces import (
    FormKind,
    all_vectors,
    bilinear,
    f2_quadratic,
    f3_diag,
    quadratic,
    quadratic_rows,
    radical,
    symplectic_pairs,
    unitary_orthonormal,
)
from maxsym.transpositions import (
    ClassSpec,
    canonical_rep,
    enumerate_class,
    identity_matrix,
    in_class,
    matrix_of,
)

PI = ClassSpec()


def _norm(space, v):
    return bilinear(space, v, v)


# ---------------------------------------------------------------------------
# chain predicates


def test_valid_chain_has_no_violations():
    # pairs basis (v1,v2),(v3,v4); direct check of all ten pairings
    sp = symplectic_pairs(4)
    chain = [
        (1, 1, 0, 0),
        (0, 1, 1, 0),
        (0, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 1, 1, 1),
    ]
    assert chain_violations(sp, PI, chain) == []
    assert is_chain(sp, PI, chain)


def test_violation_not_in_class():
    u = unitary_orthonormal(3)
    # (1,0,0) has norm 1, not singular
    msgs = chain_violations(u, PI, [(1, 0, 0)])
    assert any("not in the transposition class" in m for m in msgs)


def test_violation_consecutive_commute():
    sp = symplectic_pairs(4)
    msgs = chain_violations(sp, PI, [(1, 0, 0, 0), (0, 0, 1, 0)])
    assert any("consecutive" in m and "commute" in m for m in msgs)


def test_violation_nonconsecutive_noncommute():
    sp = symplectic_pairs(4)
    msgs = chain_violations(sp, PI, [(1, 0, 0, 0), (1, 1, 1, 0), (0, 1, 1, 1)])
    assert any("non-consecutive" in m for m in msgs)


def test_violation_projective_duplicate_over_f3():
    v = (1, 1, 0)
    w = (2, 2, 0)  # the same projective point
    msgs = chain_violations(f3_diag(3), PI, [v, w])
    assert any("same projective point" in m for m in msgs)


# ---------------------------------------------------------------------------
# candidate generation

SMALL_CASES = [
    (symplectic_pairs(4), PI),
    (unitary_orthonormal(3), PI),
    (f2_quadratic(4, 1), PI),
    (f2_quadratic(4, -1), PI),
    (f3_diag(4), PI),
    (f3_diag(4, neg_last=True), PI),
]

SMALL_IDS = ["sp4", "u3", "o4+", "o4-", "po4+", "po4-"]


def _legal_extensions(space, spec, prefix):
    """Brute force: canonical reps of every class vector extending the chain."""
    reps = {tuple(int(x) for x in canonical_rep(space, r)) for r in prefix}
    out = set()
    for w in all_vectors(space):
        if not in_class(space, spec, w):
            continue
        c = tuple(int(x) for x in canonical_rep(space, w))
        if c in reps:
            continue
        if any(bilinear(space, w, e) != 0 for e in prefix[:-1]):
            continue
        if bilinear(space, w, prefix[-1]) == 0:
            continue
        out.add(c)
    return out


@pytest.mark.parametrize("space,spec", SMALL_CASES, ids=SMALL_IDS)
def test_extend_candidates_complete_and_exact(space, spec):
    reps = enumerate_class(space, spec)
    prefix = [np.asarray(reps[0], dtype=np.int8)]
    for _ in range(3):
        cands = extend_candidates(space, spec, prefix)
        got = {tuple(int(x) for x in canonical_rep(space, c)) for c in cands}
        assert got == _legal_extensions(space, spec, prefix)
        assert len(got) == cands.shape[0]  # one vector per projective point
        for c in cands:
            assert bilinear(space, c, prefix[-1]) == 1
            for e in prefix[:-1]:
                assert bilinear(space, c, e) == 0
        if cands.shape[0] == 0:
            break
        prefix.append(cands[0])
        assert is_chain(space, spec, prefix)


def test_extend_candidates_empty_prefix_is_class():
    sp = symplectic_pairs(4)
    assert np.array_equal(extend_candidates(sp, PI, []), enumerate_class(sp, PI))


def test_extend_candidates_rows_sorted():
    sp = symplectic_pairs(6)
    reps = enumerate_class(sp, PI)
    cands = extend_candidates(sp, PI, [reps[0]])
    as_tuples = [tuple(r) for r in cands]
    assert as_tuples == sorted(as_tuples)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_walk_stays_a_chain_and_dependent_is_leaf(seed):
    rng = np.random.default_rng(seed)
    space, spec = SMALL_CASES[seed % len(SMALL_CASES)]
    prefix = []
    for _ in range(space.dim + 2):
        cands = extend_candidates(space, spec, prefix)
        if cands.shape[0] == 0:
            break
        nxt = cands[rng.integers(cands.shape[0])]
        prefix.append(nxt)
        assert is_chain(space, spec, prefix)
        if prefix[:-1] and not linalg.is_independent(
            space.field, np.array(prefix[:-1], dtype=np.int8), nxt
        ):
            # a dependent extension can never be continued
            assert extend_candidates(space, spec, prefix).shape[0] == 0
            break


# ---------------------------------------------------------------------------
# isometry certificates

ISOMETRY_CASES = [
    (symplectic_pairs(4), PI),
    (unitary_orthonormal(4), PI),
    (f2_quadratic(4, 1), PI),
    (f2_quadratic(4, -1), PI),
    (f3_diag(5), PI),
]

ISOMETRY_IDS = ["sp4", "u4", "o4+", "o4-", "po5+"]


def _random_isometry(space, spec, rng, steps=8):
    """A random product of class transvection matrices."""
    reps = enumerate_class(space, spec)
    m = identity_matrix(space)
    for _ in range(steps):
        v = reps[rng.integers(reps.shape[0])]
        m = space.field.matmul(matrix_of(space, v), m)
    return m


def _check_automorphism(space, m):
    f = space.field
    assert np.array_equal(
        f.matmul(f.matmul(m.T, space.gram), f.conj(m)), space.gram
    )
    if space.kind is FormKind.ORTHOGONAL_F2:
        assert np.array_equal(quadratic_rows(space, m.T), space.qdiag)


@pytest.mark.parametrize("space,spec", ISOMETRY_CASES, ids=ISOMETRY_IDS)
def test_witt_extend_random_partial_isometries(space, spec):
    f = space.field
    kind_index = list(FormKind).index(space.kind)
    rng = np.random.default_rng(20240 + 16 * kind_index + space.dim)
    vectors = all_vectors(space)
    rad = radical(space)
    for trial in range(25):
        k = int(rng.integers(1, space.dim))
        rows = []
        while len(rows) < k:
            v = vectors[rng.integers(1, vectors.shape[0])]
            if rad.shape[0] and not linalg.is_independent(f, rad, v):
                continue
            if not rows or linalg.is_independent(
                f, np.array(rows, dtype=np.int8), v
            ):
                rows.append(v)
        iso = _random_isometry(space, spec, rng)
        src = np.array(rows, dtype=np.int8)
        dst = np.array([f.matvec(iso, v) for v in rows], dtype=np.int8)
        m = witt_extend(space, src, dst)
        _check_automorphism(space, m)
        for s, d in zip(src, dst):
            assert np.array_equal(f.matvec(m, s), d)


def test_witt_extend_full_basis_identity():
    sp = symplectic_pairs(4)
    basis = np.eye(4, dtype=np.int8)
    m = witt_extend(sp, basis, basis)
    assert np.array_equal(m, np.eye(4, dtype=np.int8))


def test_witt_extend_rejects_dependent_source():
    sp = symplectic_pairs(4)
    src = [(1, 0, 0, 0), (1, 0, 0, 0)]
    with pytest.raises(WittExtensionError):
        witt_extend(sp, src, src)


def test_witt_extend_rejects_non_isometry():
    # e1 and e3 are perpendicular, e1 and e2 are not
    sp = symplectic_pairs(4)
    src = [(1, 0, 0, 0), (0, 0, 1, 0)]
    dst = [(1, 0, 0, 0), (0, 1, 0, 0)]
    with pytest.raises(WittExtensionError):
        witt_extend(sp, src, dst)


def test_witt_extend_rejects_length_mismatch():
    sp = symplectic_pairs(4)
    with pytest.raises(ValueError):
        witt_extend(sp, [(1, 0, 0, 0)], [])


def test_witt_extend_quadratic_f2_keeps_q():
    o = f2_quadratic(6, 1)
    reps = enumerate_class(o, PI)
    m = witt_extend(o, reps[:1], reps[1:2])
    _check_automorphism(o, m)
    assert quadratic(o, o.field.matvec(m, reps[0])) == quadratic(o, reps[0])


# ---------------------------------------------------------------------------
# the search: hand-derived values

HAND_TABLE = [
    # Three nonzero vectors, pairwise non-perpendicular, so a chain of two
    # exists and a third element would have to commute with the first.
    (symplectic_pairs(2), PI, 2),
    # No nonzero singular vector in one unitary dimension.
    (unitary_orthonormal(1), PI, 0),
    # Nine singular vectors = three projective points, pairwise
    # non-perpendicular, as in the symplectic plane.
    (unitary_orthonormal(2), PI, 2),
    # Q(1,0)=Q(0,1)=0, so (1,1) is the only class point.
    (f2_quadratic(2, 1), PI, 1),
    # All three nonzero points have Q=1 and pair to 1 with each other.
    (f2_quadratic(2, -1), PI, 2),
    # Class points (1,1) and (1,2) satisfy ((1,1),(1,2)) = 1+2 = 0: they
    # commute, so no chain of two exists.
    (f3_diag(2), PI, 1),
    # Q(v)=-(v,v)=-1 for both points on the line, so the class is empty.
    (f3_diag(1), PI, 0),
    # gram (-1): the single projective point has Q(v)=1.
    (f3_diag(1, neg_last=True), PI, 1),
]

HAND_IDS = ["sp2", "u1", "u2", "o2+", "o2-", "po2+", "po1+", "po1-"]


@pytest.mark.parametrize("space,spec,expected", HAND_TABLE, ids=HAND_IDS)
def test_max_chain_hand_derived(space, spec, expected):
    for mode in MODES:
        out = max_chain(space, spec, mode=mode)
        assert out.length == expected
        assert len(out.witness) == expected
        assert is_chain(space, spec, out.witness_arrays())


# ---------------------------------------------------------------------------
# the search: cross-mode frozen table

CROSS_TABLE = [
    (symplectic_pairs(4), PI, 5, MODES),
    (unitary_orthonormal(3), PI, 2, MODES),
    (unitary_orthonormal(4), PI, 5, MODES),
    (f2_quadratic(4, 1), PI, 2, MODES),
    (f2_quadratic(4, -1), PI, 4, MODES),
    (f2_quadratic(5, 1), PI, 5, MODES),
    (f3_diag(3), PI, 3, MODES),
    (f3_diag(3, neg_last=True), PI, 1, MODES),
    (f3_diag(4), PI, 3, MODES),
    (f3_diag(4, neg_last=True), PI, 5, MODES),
    (f3_diag(5), PI, 5, ("first", "witt")),
    (f3_diag(5, neg_last=True), PI, 5, ("first", "witt")),
    (symplectic_pairs(6), PI, 7, ("first", "witt")),
    (f2_quadratic(6, 1), PI, 7, ("first", "witt")),
    (f2_quadratic(6, -1), PI, 5, ("first", "witt")),
    (unitary_orthonormal(5), PI, 5, ("witt",)),
    (f3_diag(6), PI, 6, ("witt",)),
    (f3_diag(6, neg_last=True), PI, 5, ("witt",)),
]

CROSS_IDS = [
    "sp4", "u3", "u4", "o4+", "o4-", "o5", "po3+", "po3-", "po4+", "po4-",
    "po5+", "po5-", "sp6", "o6+", "o6-", "u5", "po6+", "po6-",
]


@pytest.mark.parametrize("space,spec,expected,modes", CROSS_TABLE, ids=CROSS_IDS)
def test_max_chain_cross_mode(space, spec, expected, modes):
    for mode in modes:
        out = max_chain(space, spec, mode=mode)
        assert out.length == expected, mode
        witness = out.witness_arrays()
        assert is_chain(space, spec, witness)
        assert len(witness) == expected
        for row in witness:
            lead = row[np.flatnonzero(row)[0]]
            assert lead == 1  # canonical representatives


def test_max_chain_witness_deterministic():
    sp = symplectic_pairs(4)
    a = max_chain(sp, PI, mode="witt")
    b = max_chain(sp, PI, mode="witt")
    assert a.witness == b.witness


def test_max_chain_counts_are_reported():
    out = max_chain(symplectic_pairs(6), PI, mode="witt")
    assert out.mode == "witt"
    assert out.nodes > 0
    assert out.collapsed > 0
    out_none = max_chain(symplectic_pairs(4), PI, mode="none")
    assert out_none.collapsed == 0
    assert out_none.cert_failures == 0


def test_max_chain_budget_exceeded():
    with pytest.raises(SearchBudgetExceeded):
        max_chain(symplectic_pairs(4), PI, node_budget=3)


def test_max_chain_empty_class():
    out = max_chain(f3_diag(1), PI)
    assert out.length == 0
    assert out.witness == ()


def test_max_chain_rejects_unknown_mode():
    with pytest.raises(ValueError):
        max_chain(symplectic_pairs(2), PI, mode="both")


# ---------------------------------------------------------------------------
# isomorphic presentations must agree


def test_defective_odd_orthogonal_matches_symplectic():
    # t(v) only sees the polar form, and the odd-dimensional polar quotient
    # is the symplectic space one dimension down
    assert max_chain(f2_quadratic(5, 1), PI).length == max_chain(
        symplectic_pairs(4), PI
    ).length


@pytest.mark.parametrize("n", [2, 3, 4])
def test_f3_sign_flip_pairs_agree(n):
    # negating the form swaps both the discriminant and the reflection class
    # in odd dimension, and fixes the discriminant in even dimension
    plus = max_chain(f3_diag(n), ClassSpec(pi=1)).length
    if n % 2:
        other = max_chain(f3_diag(n, neg_last=True), ClassSpec(pi=-1)).length
    else:
        other = max_chain(f3_diag(n), ClassSpec(pi=-1)).length
    assert plus == other


# ---------------------------------------------------------------------------
# seeded search


def test_seeded_search_reaches_global_max():
    space = symplectic_pairs(4)
    full = max_chain(space, PI)
    for k in (1, 2, 3):
        seed = full.witness_arrays()[:k]
        out = max_chain(space, PI, start=seed)
        assert out.length == full.length
        assert list(out.witness[:k]) == [
            tuple(int(x) for x in canonical_rep(space, r)) for r in seed
        ]


def test_seeded_search_rejects_non_chain_start():
    space = symplectic_pairs(4)
    e1 = np.eye(4, dtype=np.int8)[0]
    with pytest.raises(ValueError):
        max_chain(space, PI, start=[e1, e1])


def test_seeded_search_counts_start_in_length():
    space = symplectic_pairs(2)
    full = max_chain(space, PI)
    out = max_chain(space, PI, start=full.witness_arrays())
    assert out.length == full.length
