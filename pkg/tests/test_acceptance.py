"""End-to-end acceptance run, one test per shipped guarantee.

Each test appends a [PASS]/[FAIL] line to the report conftest prints after
the run, then asserts.  The witness-table test is expected to fail: two
orthogonal GF(2) cells claim chain lengths that exhaustive search proves
unattainable (O^-_8 and O^+_12), and this suite reports that honestly
rather than quietly lowering the claim.
"""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from maxsym import linalg
from maxsym.chains import extend_candidates, max_chain, witt_extend
from maxsym.embeddings import (
    embed_symmetric,
    full_injectivity,
    phi_consistency_report,
)
from maxsym.norton import norton_check
from maxsym.phi import (
    GroupSpec,
    discrepancy_report,
    fischer_filter,
    normalize_spec,
    phi_resolved,
    realize_spec,
)
from maxsym.spaces import (
    f2_quadratic,
    f3_diag,
    symplectic_pairs,
    unitary_orthonormal,
)
from maxsym.transpositions import ClassSpec, enumerate_class, matrix_of
from maxsym.witnesses import paper_witness_chain


def _record(num: int, ok: bool, text: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {text}"
    ACCEPTANCE.append(line)
    print(line)


def _table_specs() -> list[GroupSpec]:
    specs = [GroupSpec("sp", n) for n in (2, 4, 6, 8)]
    specs += [GroupSpec("u", n) for n in range(1, 7)]
    specs += [GroupSpec("o2", n, eps=e) for n in (2, 4, 6, 8) for e in (1, -1)]
    specs += [GroupSpec("po3", n, mu=m, pi=1) for n in range(1, 7) for m in (1, -1)]
    return specs


@pytest.fixture(scope="module")
def searched():
    """Exhaustive search over the whole verification table, timed once."""
    outcomes = {}
    start = time.perf_counter()
    for spec in _table_specs():
        space, cls = realize_spec(spec)
        outcomes[spec] = max_chain(space, cls)
    elapsed = time.perf_counter() - start
    return {"outcomes": outcomes, "elapsed": elapsed}


def test_criterion_1_phi_table(searched):
    mismatched = [
        spec.label()
        for spec, out in searched["outcomes"].items()
        if out.length + 1 != phi_resolved(spec)
    ]
    flagged = {d.spec.label(): d.kind for d in discrepancy_report(max_dim=8)}
    expected_flags = {
        "U_2(2)": "source-vs-source",
        "PO^{+,+}_2(3)": "source-vs-source",
        "PO^{-,+}_1(3)": "source-vs-source",
        "PO^{-,+}_3(3)": "source-vs-source",
        "PO^{-,+}_5(3)": "source-vs-source",
        "PO^{-,+}_6(3)": "source-vs-source",
        "PO^{-,+}_8(3)": "source-vs-source",
        "O^-_8(2)": "search-vs-both",
    }
    elapsed = searched["elapsed"]
    ok = not mismatched and flagged == expected_flags and elapsed < 120.0
    _record(
        1,
        ok,
        f"search equals the resolved table on all 30 spaces in {elapsed:.1f}s "
        "(< 120s); the known conflicts are flagged (U_2 source values 3 vs 2, "
        "PO^{-,+} residue swap, O^-_8 corrected by search)",
    )
    assert not mismatched, mismatched
    assert flagged == expected_flags
    assert elapsed < 120.0


def test_criterion_2_spot_values(searched):
    phi = {s.label(): o.length + 1 for s, o in searched["outcomes"].items()}
    want = {
        "Sp_4(2)": 6,
        "Sp_8(2)": 10,
        "U_4(2)": 6,
        "U_5(2)": 6,
        "O^+_6(2)": 8,
        "O^-_6(2)": 6,
        "PO^{+,+}_6(3)": 7,
    }
    got = {k: phi[k] for k in want}
    ok = got == want
    _record(
        2,
        ok,
        "spot values by search: "
        + ", ".join(f"{k}={v}" for k, v in sorted(want.items())),
    )
    assert got == want


def test_criterion_3_witness_chains():
    specs = [GroupSpec("sp", n) for n in (2, 4, 6, 8, 10)]
    specs += [GroupSpec("u", n) for n in range(1, 8)]
    specs += [GroupSpec("po3", n, mu=m, pi=1) for n in range(1, 8) for m in (1, -1)]
    specs += [GroupSpec("o2", n, eps=e) for n in range(2, 13, 2) for e in (1, -1)]
    invalid, short = [], []
    for spec in specs:
        w = paper_witness_chain(spec)
        if not w.verify():
            invalid.append(spec.label())
        if w.length != w.claimed_length:
            short.append(
                f"{spec.label()} (claimed {w.claimed_length}, achieved {w.length})"
            )
    ok = not invalid and not short
    if ok:
        _record(3, True, f"all {len(specs)} witness chains valid at the claimed lengths")
    else:
        _record(
            3,
            False,
            f"all {len(specs)} witness chains are valid, but the claimed length is "
            "unattainable at " + "; ".join(short) + " (those table cells are "
            "corrected by search; the maximum really is lower)",
        )
    assert not invalid, invalid
    assert not short, short


def _random_independent_prefix(space, cls, rng):
    target = int(rng.integers(1, space.dim + 1))
    chain: list = []
    while len(chain) < target:
        cands = extend_candidates(space, cls, chain)
        if len(chain):
            arr = np.array(chain, dtype=np.int8)
            keep = [
                i
                for i in range(cands.shape[0])
                if linalg.is_independent(space.field, arr, cands[i])
            ]
            cands = cands[keep] if keep else cands[:0]
        if cands.shape[0] == 0:
            break
        chain.append(cands[int(rng.integers(cands.shape[0]))])
    return chain


def _random_partial_isometry(space, cls, rng, reps):
    f = space.field
    k = int(rng.integers(1, space.dim + 1))
    src: list = []
    while len(src) < k:
        v = rng.integers(0, f.order, size=space.dim).astype(np.int8)
        if not v.any():
            continue
        if not src or linalg.is_independent(f, np.array(src, dtype=np.int8), v):
            src.append(v)
    g = np.eye(space.dim, dtype=np.int8)
    for _ in range(8):
        g = f.matmul(g, matrix_of(space, reps[int(rng.integers(reps.shape[0]))]))
    dst = [f.matvec(g, v) for v in src]
    return src, dst


def test_criterion_4_lemma_suite(searched):
    rng = np.random.default_rng(40404)

    # (a) every proper prefix of a chain is linearly independent: checked on
    # the search witness of each table space and on random search-tree nodes
    dependent = []
    for spec, out in searched["outcomes"].items():
        space, _ = realize_spec(spec)
        rows = out.witness_arrays()
        if len(rows) > 1:
            head = np.array(rows[:-1], dtype=np.int8)
            if linalg.rank(space.field, head) != len(rows) - 1:
                dependent.append(spec.label())
    node_specs = [
        GroupSpec("sp", 4),
        GroupSpec("sp", 6),
        GroupSpec("u", 4),
        GroupSpec("u", 5),
        GroupSpec("o2", 6, eps=1),
        GroupSpec("o2", 6, eps=-1),
        GroupSpec("po3", 5, mu=1, pi=1),
        GroupSpec("po3", 5, mu=-1, pi=1),
    ]
    nodes = 0
    quota = 1000 // len(node_specs)
    for spec in node_specs:
        space, cls = realize_spec(spec)
        produced = 0
        while produced < quota:
            chain: list = []
            while True:
                cands = extend_candidates(space, cls, chain)
                if cands.shape[0] == 0:
                    break
                chain.append(cands[int(rng.integers(cands.shape[0]))])
                produced += 1
                nodes += 1
                if len(chain) > 1:
                    head = np.array(chain[:-1], dtype=np.int8)
                    if linalg.rank(space.field, head) != len(chain) - 1:
                        dependent.append(f"{spec.label()} node")
                if produced >= quota or rng.random() < 0.2:
                    break

    # (b) a search seeded with any independent prefix still reaches the
    # global maximum, so greedy deepening never strands the search
    small = [
        (spec, out.length)
        for spec, out in searched["outcomes"].items()
        if realize_spec(spec)[0].dim <= 6
    ]
    stranded = []
    trials = 0
    for spec, best in small:
        space, cls = realize_spec(spec)
        for _ in range(50):
            prefix = _random_independent_prefix(space, cls, rng)
            got = max_chain(space, cls, start=prefix).length
            trials += 1
            if got != best:
                stranded.append((spec.label(), len(prefix), got, best))

    # (c) witt_extend completes random partial isometries; the images come
    # from a genuine isometry so a completion always exists
    kind_presets = {
        "symplectic": [symplectic_pairs(2), symplectic_pairs(4)],
        "unitary": [unitary_orthonormal(3), unitary_orthonormal(5)],
        "orthogonal_f2": [f2_quadratic(4, 1), f2_quadratic(4, -1)],
        "orthogonal_f3": [f3_diag(4), f3_diag(5, neg_last=True)],
    }
    extend_failures = []
    extensions = 0
    for kind, presets in kind_presets.items():
        for space in presets:
            cls = ClassSpec(pi=1) if kind == "orthogonal_f3" else ClassSpec()
            reps = enumerate_class(space, cls)
            f = space.field
            for _ in range(50):
                src, dst = _random_partial_isometry(space, cls, rng, reps)
                extensions += 1
                try:
                    m = witt_extend(space, src, dst)
                except Exception as exc:
                    extend_failures.append((kind, space.dim, repr(exc)))
                    continue
                for s, d in zip(src, dst):
                    if not np.array_equal(f.matvec(m, s), d):
                        extend_failures.append((kind, space.dim, "image mismatch"))

    ok = not dependent and not stranded and not extend_failures
    _record(
        4,
        ok,
        f"prefix independence held on {len(searched['outcomes'])} search "
        f"witnesses and {nodes} random chain nodes; seeded search reached the "
        f"global maximum in {trials}/{trials} prefix trials over {len(small)} "
        f"spaces; witt_extend certified {extensions - len(extend_failures)}"
        f"/{extensions} random partial isometries",
    )
    assert not dependent, dependent
    assert not stranded, stranded
    assert not extend_failures, extend_failures


ADMISSIBLE = [
    (6, "sp", None),
    (8, "sp", None),
    (10, "sp", None),
    (6, "u", None),
    (8, "u", None),
    (10, "u", None),
    (6, "po3a", None),
    (7, "po3a", None),
    (9, "po3a", None),
    (10, "po3a", None),
    (6, "po3b", None),
    (9, "po3b", None),
    (5, "o2", None),
    (8, "o2", None),
    (9, "o2", None),
    (6, "o2", 1),
    (6, "o2", -1),
    (10, "o2", 1),
    (10, "o2", -1),
]


def test_criterion_5_symmetric_representations():
    failures = []
    injective = 0
    gram_cells = 0
    for n, cons, eps in ADMISSIBLE:
        try:
            report = embed_symmetric(n, cons, eps=eps)
        except (ValueError, RuntimeError) as exc:
            failures.append((n, cons, eps, repr(exc)))
            continue
        if not all(report.checks.values()):
            failures.append((n, cons, eps, report.checks))
        if cons == "po3a":
            gram_cells += 1
            if not report.checks.get("gram_identity", False):
                failures.append((n, cons, eps, "gram identity"))
        if n <= 7:
            if full_injectivity(report):
                injective += 1
            else:
                failures.append((n, cons, eps, "not injective"))
    ok = not failures and injective == 8 and gram_cells == 4
    _record(
        5,
        ok,
        f"all {len(ADMISSIBLE)} constructions at n <= 10 pass every check "
        f"(relations, class membership, form, induced type); {injective} cells "
        f"at n <= 7 injective under full enumeration; Gram identities hold on "
        f"{gram_cells} cells",
    )
    assert not failures, failures
    assert injective == 8
    assert gram_cells == 4


def test_criterion_6_tightness():
    cells = [
        (GroupSpec("sp", 6), "construction 'sp'"),
        (GroupSpec("u", 6), "construction 'u'"),
        (GroupSpec("o2", 8, eps=1), "construction 'o2'"),
        (GroupSpec("o2", 8, eps=-1), "witness chain"),
        (GroupSpec("po3", 6, mu=1, pi=1), "construction 'po3a'"),
        (GroupSpec("po3", 4, mu=-1, pi=1), "construction 'po3b'"),
    ]
    bad = []
    vias = []
    for spec, via_part in cells:
        rep = phi_consistency_report(spec)
        vias.append(f"{spec.label()} via {rep.via}")
        if not rep.realized or via_part not in rep.via:
            bad.append((spec.label(), rep.realized, rep.via))
    ok = not bad
    _record(6, ok, "S_phi realized inside each group: " + "; ".join(vias))
    assert not bad, bad


def test_criterion_7_order_six_bound():
    specs = [
        GroupSpec("sp", 4),
        GroupSpec("sp", 6),
        GroupSpec("u", 4),
        GroupSpec("o2", 6, eps=1),
        GroupSpec("o2", 6, eps=-1),
        GroupSpec("po3", 4, mu=1, pi=1),
        GroupSpec("po3", 4, mu=-1, pi=1),
    ]
    bad = []
    pairs = 0
    max_order = 0
    for spec in specs:
        rep = norton_check(spec)
        pairs += rep.pairs_tested
        max_order = max(max_order, rep.max_order_seen)
        if not rep.exhaustive or rep.violations or rep.max_order_seen > 6:
            bad.append((spec.label(), rep.exhaustive, rep.violations))
    ok = not bad
    _record(
        7,
        ok,
        f"exhaustive scan of {len(specs)} groups, {pairs} products of "
        f"commuting-pair involutions, max order {max_order}, zero violations",
    )
    assert not bad, bad
    assert max_order <= 6


def test_criterion_8_search_consistency(searched):
    phi = {s: o.length + 1 for s, o in searched["outcomes"].items()}
    checks = []
    for n, partner in ((5, GroupSpec("sp", 4)), (7, GroupSpec("sp", 6))):
        for e in (1, -1):
            spec = GroupSpec("o2", n, eps=e)
            space, cls = realize_spec(spec)
            got = max_chain(space, cls).length + 1
            checks.append((spec.label(), got, partner.label(), phi[partner]))
    for n in range(1, 6):
        for m in (1, -1):
            raw = GroupSpec("po3", n, mu=m, pi=-1)
            space, cls = realize_spec(raw)
            got = max_chain(space, cls).length + 1
            norm = normalize_spec(raw)
            checks.append((raw.label(), got, norm.label(), phi[norm]))
    bad = [c for c in checks if c[1] != c[3]]
    ok = not bad
    _record(
        8,
        ok,
        f"{len(checks)} isomorphism coincidences agree by independent search "
        "(odd-dimensional quadratic = symplectic; negated GF(3) form = "
        "opposite reflection class)",
    )
    assert not bad, bad


def test_criterion_9_bounded_groups():
    rep = fischer_filter(bound=12)
    want_source = {
        "sym": 12,
        "sp": 10,
        "u": 11,
        "o2+": 11,
        "o2-": 11,
        "po3+": 11,
        "po3-": 12,
    }
    want_resolved = dict(want_source, **{"o2+": 12})
    deviation_ok = len(rep.deviations) == 1 and "O^+_12(2)" in rep.deviations[0]
    ok = (
        rep.source_cutoffs == want_source
        and rep.resolved_cutoffs == want_resolved
        and deviation_ok
        and rep.fischer == {22: 10, 23: 12, 24: 12}
    )
    _record(
        9,
        ok,
        "family cutoffs at bound 12 reproduced (sym 12, sp 10, u 11, "
        "o2 11/11, po3 11/12); the resolved table adds O^+_12(2); recorded "
        "constants 10/12/12 within bound",
    )
    assert rep.source_cutoffs == want_source
    assert rep.resolved_cutoffs == want_resolved
    assert deviation_ok, rep.deviations
    assert rep.fischer == {22: 10, 23: 12, 24: 12}
