"""Order statistics for products of commuting transposition pairs.

S collects the products p * q over distinct commuting class pairs,
deduplicated by matrix since distinct pairs can share a product.  Each
element of S is an involution; the claim under test is that every product
s * t with s, t in S has order at most six.  Orders come from matrix
powering, so the whole check is exhaustive linear algebra on the preset
form spaces.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import OrderCapExceeded, UnsupportedCase
from .phi import GroupSpec, normalize_spec, realize_spec
from .transpositions import (
    enumerate_class,
    identity_matrix,
    matrix_of,
    product_order,
)

__all__ = ["ORDER_CAP", "DEFAULT_PAIR_BUDGET", "NortonReport", "norton_check"]

ORDER_CAP = 24
DEFAULT_PAIR_BUDGET = 2_000_000


@dataclass(frozen=True)
class NortonReport:
    """Outcome of one product-order survey.

    histogram maps product order to pair count and sums to pairs_tested;
    violations lists (i, j, order) triples over indices into the
    deduplicated S with order above six.  exhaustive is False when the
    budget forced sampling, in which case the report is evidence, not a
    proof.
    """

    spec: GroupSpec
    class_size: int
    s_size: int
    pairs_tested: int
    max_order_seen: int
    histogram: dict
    violations: tuple
    exhaustive: bool

    def describe(self) -> str:
        mode = "exhaustive" if self.exhaustive else "sampled"
        lines = [
            f"{self.spec.label()}: |D| = {self.class_size}, |S| = {self.s_size}, "
            f"{self.pairs_tested} pairs ({mode})",
            "order histogram: "
            + ", ".join(f"{k}: {v}" for k, v in sorted(self.histogram.items())),
            f"max order seen: {self.max_order_seen}",
        ]
        if self.violations:
            lines.append(f"violations ({len(self.violations)}):")
            lines.extend(f"  s_{i} * s_{j} has order {o}" for i, j, o in self.violations)
        else:
            lines.append("violations: none")
        return "\n".join(lines)


def _as_int8(m: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(m, dtype=np.int8)


def _pair_streams(k: int, budget: int):
    """Unordered index pairs including the diagonal, and whether exhaustive.

    Over budget, pairs are thinned deterministically: each row keeps an
    evenly spaced subset of partners, so every s appears in the sample.
    """
    total = k * (k + 1) // 2
    if total <= budget:
        return (
            ((i, j) for i in range(k) for j in range(i, k)),
            total,
            True,
        )
    quota = max(1, budget // k)

    def sampled():
        count = 0
        for i in range(k):
            width = k - i
            step = max(1, -(-width // quota))
            for j in range(i, k, step):
                if count >= budget:
                    return
                count += 1
                yield (i, j)

    tested = 0
    for i in range(k):
        width = k - i
        step = max(1, -(-width // quota))
        tested += len(range(i, k, step))
    return sampled(), min(tested, budget), False


def norton_check(spec: GroupSpec, budget: int = DEFAULT_PAIR_BUDGET) -> NortonReport:
    """Survey product orders over S for one classical group.

    Enumerates the class, forms the deduplicated involution set S from
    commuting distinct pairs, then computes product_order on S x S pairs,
    exhaustively when the pair count fits the budget.  Orders beyond
    ORDER_CAP would abort the power iteration and are recorded as
    ORDER_CAP + 1; no tested space comes near the cap.
    """
    spec = normalize_spec(spec)
    if spec.family in ("sym", "fischer"):
        raise UnsupportedCase(f"no explicit class model for {spec.label()}")
    space, cls = realize_spec(spec)
    f = space.field
    reps = enumerate_class(space, cls)
    k = len(reps)
    mats = [matrix_of(space, v) for v in reps]
    # pairwise form values in one shot; zero means the transvections commute
    rows = f.matmul(np.asarray(reps, dtype=np.int8), space.gram)
    pairing = f.matmul(rows, f.conj(np.asarray(reps, dtype=np.int8).T))

    eye = identity_matrix(space)
    s_mats: dict[bytes, np.ndarray] = {}
    for i in range(k):
        for j in range(i + 1, k):
            if pairing[i, j]:
                continue
            prod = _as_int8(f.matmul(mats[i], mats[j]))
            key = prod.tobytes()
            if key in s_mats:
                continue
            if np.array_equal(prod, eye) or not np.array_equal(
                f.matmul(prod, prod), eye
            ):
                raise AssertionError(
                    "product of a commuting distinct pair must be an involution"
                )
            s_mats[key] = prod
    s = list(s_mats.values())

    pairs, pairs_tested, exhaustive = _pair_streams(len(s), budget)
    histogram: Counter = Counter()
    violations = []
    max_seen = 0
    for i, j in pairs:
        try:
            order = product_order(space, s[i], s[j], cap=ORDER_CAP)
        except OrderCapExceeded:
            order = ORDER_CAP + 1
        histogram[order] += 1
        if order > max_seen:
            max_seen = order
        if order > 6:
            violations.append((i, j, order))
    return NortonReport(
        spec=spec,
        class_size=k,
        s_size=len(s),
        pairs_tested=pairs_tested,
        max_order_seen=max_seen,
        histogram=dict(histogram),
        violations=tuple(violations),
        exhaustive=exhaustive,
    )
