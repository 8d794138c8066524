"""Maximal symmetric subgroup sizes: closed forms, search, and comparison.

phi(G) is the largest n with S_n embedded in G through class transpositions,
equal to one plus the longest transposition chain.  Two closed-form tables
are carried side by side (sources "propositions" and "conclusion"); they
disagree on a handful of cells, and on two cells both disagree with the
exhaustive search.  phi_resolved holds the search-backed table, and
discrepancy_report lays the three next to each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import max_chain, DEFAULT_BUDGET
from .errors import UnsupportedCase
from .spaces import FormSpace, f2_quadratic, f3_diag, symplectic_pairs, unitary_orthonormal
from .transpositions import ClassSpec

__all__ = [
    "FAMILIES",
    "SOURCES",
    "GroupSpec",
    "normalize_spec",
    "realize_spec",
    "phi_formula",
    "phi_resolved",
    "phi_bruteforce",
    "path_type_f2",
    "Discrepancy",
    "discrepancy_report",
    "FISCHER_PHI",
    "FilterReport",
    "fischer_filter",
]

FAMILIES = ("sym", "sp", "u", "o2", "po3", "fischer")
SOURCES = ("propositions", "conclusion")

FISCHER_PHI = {22: 10, 23: 12, 24: 12}


@dataclass(frozen=True)
class GroupSpec:
    """One group from the classification, by family and parameters.

    family "sym":     S_n, transpositions.
    family "sp":      Sp_n(2), n even, all nonzero vectors.
    family "u":       U_n(2), nonzero singular vectors.
    family "o2":      O^eps_n(2), nonsingular vectors; eps ignored for odd n.
    family "po3":     PO^{mu,pi}_n(3), reflections with Q(v)=pi.
    family "fischer": the three large groups, by n in {22, 23, 24}.
    """

    family: str
    n: int
    eps: int = 0
    mu: int = 0
    pi: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.family == "sp" and self.n % 2:
            raise ValueError("symplectic groups need even dimension")
        if self.family == "o2":
            if self.n < 2:
                raise ValueError("o2 groups need n >= 2")
            if self.n % 2 == 0 and self.eps not in (1, -1):
                raise ValueError("even orthogonal groups over GF(2) need eps=+-1")
        elif self.eps:
            raise ValueError("eps only applies to family 'o2'")
        if self.family == "po3":
            if self.mu not in (1, -1) or self.pi not in (1, -1):
                raise ValueError("po3 groups need mu=+-1 and pi=+-1")
        elif self.mu or self.pi:
            raise ValueError("mu and pi only apply to family 'po3'")
        if self.family == "fischer" and self.n not in FISCHER_PHI:
            raise ValueError("fischer groups exist for n in {22, 23, 24}")

    def label(self) -> str:
        sign = {1: "+", -1: "-"}
        if self.family == "sym":
            return f"S_{self.n}"
        if self.family == "sp":
            return f"Sp_{self.n}(2)"
        if self.family == "u":
            return f"U_{self.n}(2)"
        if self.family == "o2":
            eps = sign[self.eps] if self.eps else "."
            return f"O^{eps}_{self.n}(2)"
        if self.family == "po3":
            return f"PO^{{{sign[self.mu]},{sign[self.pi]}}}_{self.n}(3)"
        return f"M({self.n})"


def normalize_spec(spec: GroupSpec) -> GroupSpec:
    """The canonical member of the spec's isomorphism class.

    Odd-dimensional o2 groups coincide with the symplectic group one
    dimension down.  Negating a GF(3) form swaps the reflection class and,
    in odd dimension, the discriminant, so every po3 group is equivalent to
    one with pi=+.
    """
    if spec.family == "o2" and spec.n % 2:
        return GroupSpec("sp", spec.n - 1)
    if spec.family == "po3" and spec.pi == -1:
        mu = spec.mu if spec.n % 2 == 0 else -spec.mu
        return GroupSpec("po3", spec.n, mu=mu, pi=1)
    return spec


def realize_spec(spec: GroupSpec) -> tuple[FormSpace, ClassSpec]:
    """The preset form space and class carrying the group's transpositions.

    Realizes the spec as given, without normalizing: an odd-dimensional o2
    spec gets the defective quadratic space and a pi=-1 po3 spec gets the
    pi=-1 reflection class, so searches over raw specs independently confirm
    the identifications behind normalize_spec.
    """
    if spec.family == "sp":
        return symplectic_pairs(spec.n), ClassSpec()
    if spec.family == "u":
        return unitary_orthonormal(spec.n), ClassSpec()
    if spec.family == "o2":
        return f2_quadratic(spec.n, spec.eps or 1), ClassSpec()
    if spec.family == "po3":
        return f3_diag(spec.n, neg_last=spec.mu == -1), ClassSpec(pi=spec.pi)
    raise UnsupportedCase(f"no explicit form space for family {spec.family!r}")


def _require_normalized(spec: GroupSpec) -> GroupSpec:
    if normalize_spec(spec) != spec:
        raise ValueError(
            f"{spec.label()} is not normalized; call normalize_spec first"
        )
    return spec


def phi_formula(spec: GroupSpec, source: str = "propositions") -> int:
    """The closed-form phi value, exactly as the chosen source states it.

    The two sources disagree at a few cells, and at two o2 cells both
    disagree with the search; phi_formula reproduces each source verbatim,
    conflicts and all.  See discrepancy_report for the comparison.
    """
    _require_normalized(spec)
    if source not in SOURCES:
        raise ValueError(f"source must be one of {SOURCES}, got {source!r}")
    n = spec.n
    if spec.family == "sym":
        return n
    if spec.family == "fischer":
        return FISCHER_PHI[n]
    if spec.family == "sp":
        return 3 if n == 2 else n + 2
    if spec.family == "u":
        if source == "propositions":
            small = {1: 1, 2: 3, 3: 3}
        else:
            small = {1: 1, 2: 2, 3: 3}
        if n in small:
            return small[n]
        return n + 1 if n % 2 else n + 2
    if spec.family == "po3":
        if spec.mu == 1:
            if source == "propositions" and n <= 2:
                return {1: 1, 2: 2}[n]
            return n if n % 3 == 1 else n + 1
        if source == "propositions" and n <= 3:
            return {1: 2, 2: 2, 3: 2}[n]
        if n % 3 == 1:
            return n + 2
        if source == "propositions":
            return n + 1 if n % 3 == 2 else n
        return n + 1 if n % 3 == 0 else n
    # o2, even n; both sources print the same residue table
    if spec.eps == 1:
        if n <= 4:
            return {2: 2, 4: 3}[n]
        residues = {2: n, 6: n + 2}
    else:
        if n == 2:
            return 3
        residues = {6: n, 2: n + 2}
    return residues.get(n % 8, n + 1)


def path_type_f2(n: int) -> int:
    """Type of the n-dimensional GF(2) quadratic space every chain spans.

    A chain Gram over GF(2) is the path matrix with Q=1 on the diagonal;
    the type is +1 iff n = 0, 6 (mod 8).  Verified directly against
    orthogonal_type_f2 in the tests.
    """
    if n % 2:
        raise ValueError("quadratic types are defined in even dimension")
    return 1 if n % 8 in (0, 6) else -1


def phi_resolved(spec: GroupSpec) -> int:
    """The search-backed phi table.

    Follows the "propositions" source except in family o2 when 4 | n >= 8:
    an n-chain must span an isometric copy of the path space, so only the
    sign with eps = path_type_f2(n) reaches n+1; the other sign tops out at
    the n-1 chain through the (n-2)-path plus its dependent tail, giving n.
    Confirmed by exhaustive search at n = 8 and 12.
    """
    spec = _require_normalized(spec)
    n = spec.n
    if spec.family == "o2" and n >= 8 and n % 4 == 0 and spec.eps != path_type_f2(n):
        return n
    return phi_formula(spec, "propositions")


def phi_bruteforce(
    spec: GroupSpec,
    mode: str = "witt",
    node_budget: int = DEFAULT_BUDGET,
) -> int:
    """phi by exhaustive chain search over the explicit form space.

    Searches the realization of the spec as given (see realize_spec), so a
    raw spec and its normalization are two distinct searches that had better
    agree.  For family "sym" the longest chain is the n-1 adjacent
    transpositions, directly from the definition.  Fischer groups have no
    in-memory model and raise UnsupportedCase.
    """
    if spec.family == "sym":
        return spec.n
    if spec.family == "fischer":
        raise UnsupportedCase("fischer groups are beyond explicit search")
    space, cls = realize_spec(spec)
    return max_chain(space, cls, mode=mode, node_budget=node_budget).length + 1


@dataclass(frozen=True)
class Discrepancy:
    """One cell where the sources and the resolved table do not all agree."""

    spec: GroupSpec
    propositions: int
    conclusion: int
    resolved: int

    @property
    def kind(self) -> str:
        if self.resolved not in (self.propositions, self.conclusion):
            return "search-vs-both"
        return "source-vs-source"

    def describe(self) -> str:
        return (
            f"{self.spec.label()}: propositions={self.propositions} "
            f"conclusion={self.conclusion} resolved={self.resolved} ({self.kind})"
        )


def _classical_specs(max_dim: int):
    for n in range(2, max_dim + 1, 2):
        yield GroupSpec("sp", n)
    for n in range(1, max_dim + 1):
        yield GroupSpec("u", n)
    for n in range(2, max_dim + 1, 2):
        for eps in (1, -1):
            yield GroupSpec("o2", n, eps=eps)
    for n in range(1, max_dim + 1):
        for mu in (1, -1):
            yield GroupSpec("po3", n, mu=mu, pi=1)


def discrepancy_report(max_dim: int = 12) -> list[Discrepancy]:
    """All table conflicts among normalized classical specs up to max_dim.

    The resolved column is authoritative: it matches exhaustive search
    everywhere the search has been run (every classical family through
    dimension 12).
    """
    out = []
    for spec in _classical_specs(max_dim):
        p = phi_formula(spec, "propositions")
        c = phi_formula(spec, "conclusion")
        r = phi_resolved(spec)
        if not (p == c == r):
            out.append(Discrepancy(spec, p, c, r))
    return out


@dataclass(frozen=True)
class FilterReport:
    """Groups whose phi stays within the bound, per family."""

    bound: int
    source_cutoffs: dict
    resolved_cutoffs: dict
    deviations: tuple
    fischer: dict

    def describe(self) -> list[str]:
        lines = [f"groups with phi <= {self.bound}:"]
        for fam, cut in sorted(self.source_cutoffs.items()):
            line = f"  {fam}: n <= {cut}"
            if self.resolved_cutoffs[fam] != cut:
                line += f" (resolved table: n <= {self.resolved_cutoffs[fam]})"
            lines.append(line)
        for d in self.deviations:
            lines.append(f"  deviation: {d}")
        for n, phi in sorted(self.fischer.items()):
            note = "within bound" if phi <= self.bound else "excluded"
            lines.append(
                f"  M({n}): phi={phi} ({note}; recorded constant, beyond "
                "explicit search range)"
            )
        return lines


def _family_key(spec: GroupSpec) -> str:
    if spec.family == "o2":
        return f"o2{'+' if spec.eps == 1 else '-'}"
    if spec.family == "po3":
        return f"po3{'+' if spec.mu == 1 else '-'}"
    return spec.family


def _filter_specs(horizon: int):
    # unlike _classical_specs, keeps odd o2 dimensions (coinciding with the
    # symplectic group one dimension down) so family cutoffs read naturally;
    # an odd dimension counts toward both o2 signs
    for n in range(2, horizon + 1, 2):
        yield "sp", GroupSpec("sp", n)
    for n in range(1, horizon + 1):
        yield "u", GroupSpec("u", n)
    for n in range(2, horizon + 1):
        if n % 2:
            yield "o2+", GroupSpec("o2", n)
            yield "o2-", GroupSpec("o2", n)
        else:
            yield "o2+", GroupSpec("o2", n, eps=1)
            yield "o2-", GroupSpec("o2", n, eps=-1)
    for n in range(1, horizon + 1):
        for mu in (1, -1):
            yield f"po3{'+' if mu == 1 else '-'}", GroupSpec("po3", n, mu=mu, pi=1)


def fischer_filter(bound: int = 12, horizon: int = 40) -> FilterReport:
    """Classify which groups keep phi within the bound.

    Cutoffs are the largest dimension whose phi fits, computed from the
    "propositions" table and from the resolved table; both are reported and
    any difference is spelled out as a deviation.  phi grows with n within
    each family past the small cases, so a fixed horizon is enough.
    """
    source_cut: dict = {"sym": bound}
    resolved_cut: dict = {"sym": bound}
    deviations = []
    for key, raw in _filter_specs(horizon):
        spec = normalize_spec(raw)
        p = phi_formula(spec, "propositions")
        r = phi_resolved(spec)
        if p <= bound:
            source_cut[key] = max(source_cut.get(key, 0), raw.n)
        if r <= bound:
            resolved_cut[key] = max(resolved_cut.get(key, 0), raw.n)
        if (p <= bound) != (r <= bound):
            side = "joins" if r <= bound else "leaves"
            deviations.append(
                f"{raw.label()} {side} the list under the resolved table "
                f"(phi {p} -> {r})"
            )
    return FilterReport(
        bound=bound,
        source_cutoffs=source_cut,
        resolved_cutoffs=resolved_cut,
        deviations=tuple(deviations),
        fischer=dict(FISCHER_PHI),
    )
