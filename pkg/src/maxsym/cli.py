"""Command-line surface for phi tables, chain searches, witnesses,
symmetric-group embeddings, and product-order surveys.

Output modes: human-readable (default), --json (versioned envelope), --tsv
(tab-separated table; columns documented in docs/output_schema.md).  The
machine modes are byte-stable: timing is omitted and every collection is
emitted in a fixed order.  Exit codes: 0 success, 1 verification mismatch,
2 usage error, 3 budget exceeded or unsupported request.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .chains import DEFAULT_BUDGET, max_chain
from .embeddings import CONSTRUCTIONS, embed_symmetric, full_injectivity
from .errors import SearchBudgetExceeded, UnsupportedCase
from .norton import DEFAULT_PAIR_BUDGET, norton_check
from .phi import (
    FAMILIES,
    FISCHER_PHI,
    GroupSpec,
    normalize_spec,
    phi_bruteforce,
    phi_formula,
    phi_resolved,
    realize_spec,
)
from .witnesses import paper_witness_chain

__all__ = ["SCHEMA_VERSION", "run", "main"]

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3

_SOURCE_TAGS = {"props": "formula-props", "conclusion": "formula-conclusion"}
_SOURCE_NAMES = {"props": "propositions", "conclusion": "conclusion"}


def _sign(text: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    try:
        return table[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"expected + or -, got {text!r}") from None


def _global_flags(parser, suppress: bool) -> None:
    # the same flags are legal before and after the subcommand; the
    # subcommand copies suppress their defaults so they never clobber a
    # value given up front
    d = argparse.SUPPRESS if suppress else False
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=d, help="versioned JSON envelope")
    fmt.add_argument("--tsv", action="store_true", default=d, help="tab-separated table")
    parser.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS if suppress else 0,
        help="sampling seed (recorded)",
    )
    parser.add_argument(
        "--threads", type=int, default=argparse.SUPPRESS if suppress else 1,
        help="worker cap (recorded)",
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="maxsym",
        description="maximal symmetric subgroups of classical 3-transposition groups",
    )
    _global_flags(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    def spec_args(sp):
        sp.add_argument("--family", choices=FAMILIES, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--eps", type=_sign, help="orthogonal GF(2) type, + or -")
        sp.add_argument("--mu", type=_sign, help="GF(3) discriminant sign, + or -")
        sp.add_argument("--pi", type=_sign, help="GF(3) reflection class, + or -")

    cp = sub.add_parser("phi", parents=[common], help="closed-form and searched phi values")
    spec_args(cp)
    cp.add_argument("--mode", choices=("formula", "search", "both"), default="formula")
    cp.add_argument("--source", choices=("props", "conclusion"), default="props")

    cp = sub.add_parser("search", parents=[common], help="exhaustive chain search")
    spec_args(cp)
    cp.add_argument("--witness", action="store_true", help="include a maximal chain")
    cp.add_argument(
        "--no-symmetry-reduction",
        action="store_true",
        help="disable stabilizer certificates (slow; cross-check)",
    )
    cp.add_argument("--node-budget", type=int, default=DEFAULT_BUDGET)

    cp = sub.add_parser("verify-table", parents=[common], help="formulas vs search on every family")
    cp.add_argument("--max-dim", type=int, default=6)

    cp = sub.add_parser("witness", parents=[common], help="emit the cited chain and validate it")
    spec_args(cp)

    cp = sub.add_parser("embed", parents=[common], help="symmetric-group representation checks")
    cp.add_argument("--sn", type=int, required=True, help="degree of the source S_n")
    cp.add_argument("--target", choices=CONSTRUCTIONS, required=True)
    cp.add_argument("--full-injectivity", action="store_true")

    cp = sub.add_parser("norton", parents=[common], help="orders of products over commuting pairs")
    spec_args(cp)
    cp.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET)
    return p


def _spec_from(args) -> GroupSpec:
    kw = {}
    if args.eps is not None:
        if args.family != "o2":
            raise ValueError("--eps only applies to family o2")
        kw["eps"] = args.eps
    if args.family == "po3":
        if args.mu is None:
            raise ValueError("family po3 needs --mu")
        kw["mu"] = args.mu
        kw["pi"] = args.pi if args.pi is not None else 1
    elif args.mu is not None or args.pi is not None:
        raise ValueError("--mu and --pi only apply to family po3")
    return GroupSpec(args.family, args.n, **kw)


def _sgn_cell(v: int) -> str:
    return {1: "+", -1: "-", 0: ""}[v]


def _spec_dict(spec: GroupSpec) -> dict:
    d = {"family": spec.family, "label": spec.label(), "n": spec.n}
    if spec.family == "o2":
        d["eps"] = spec.eps
    if spec.family == "po3":
        d["mu"] = spec.mu
        d["pi"] = spec.pi
    return d


def _spec_cells(spec: GroupSpec) -> list:
    return [
        spec.family,
        spec.n,
        _sgn_cell(spec.eps),
        _sgn_cell(spec.mu),
        _sgn_cell(spec.pi),
    ]


def _tagged(value: int, source: str) -> dict:
    return {"source": source, "value": value}


def _vector_word(v) -> str:
    return "".join(str(int(c)) for c in v)


def _vector_tuple(v) -> str:
    return "(" + ", ".join(str(int(c)) for c in v) + ")"


def _field_note(space) -> str:
    order = space.field.order
    if order == 4:
        return "GF(4), codes 2 = a and 3 = a + 1"
    if order == 3:
        return "GF(3), code 2 = -1"
    return "GF(2)"


# --- subcommand handlers -----------------------------------------------------
# each returns (payload, (tsv_header, tsv_rows), human_lines, stats, exit_code)


def _cmd_phi(args):
    spec = _spec_from(args)
    norm = normalize_spec(spec)
    results = []
    human = []
    if args.mode in ("formula", "both"):
        value = phi_formula(norm, _SOURCE_NAMES[args.source])
        results.append(
            {"method": "formula", **_tagged(value, _SOURCE_TAGS[args.source])}
        )
        human.append(f"phi({norm.label()}) = {value}  [{_SOURCE_TAGS[args.source]}]")
    if args.mode in ("search", "both"):
        value = phi_bruteforce(spec)
        results.append({"method": "search", **_tagged(value, "search")})
        human.append(f"phi({spec.label()}) = {value}  [search]")
    agree = None
    code = EXIT_OK
    if args.mode == "both":
        agree = results[0]["value"] == results[1]["value"]
        human.append("formula and search agree" if agree else "MISMATCH")
        if not agree:
            code = EXIT_MISMATCH
    payload = {
        "agree": agree,
        "normalized": _spec_dict(norm) if norm != spec else None,
        "results": results,
        "spec": _spec_dict(spec),
    }
    rows = [
        _spec_cells(spec) + [r["method"], r["source"], r["value"]] for r in results
    ]
    header = ["family", "n", "eps", "mu", "pi", "method", "source", "value"]
    return payload, (header, rows), human, None, code


def _cmd_search(args):
    spec = _spec_from(args)
    if spec.family in ("sym", "fischer"):
        raise UnsupportedCase(f"no explicit form space for {spec.label()}")
    space, cls = realize_spec(spec)
    mode = "none" if args.no_symmetry_reduction else "witt"
    out = max_chain(space, cls, mode=mode, node_budget=args.node_budget)
    phi = out.length + 1
    witness = [_vector_word(v) for v in out.witness] if args.witness else None
    payload = {
        "chain_length": out.length,
        "phi": _tagged(phi, "search"),
        "spec": _spec_dict(spec),
        "witness": [list(map(int, v)) for v in out.witness] if args.witness else None,
    }
    stats = {
        "cert_failures": out.cert_failures,
        "collapsed": out.collapsed,
        "mode": out.mode,
        "nodes": out.nodes,
    }
    header = [
        "family", "n", "eps", "mu", "pi",
        "phi", "chain_length", "mode", "nodes", "collapsed", "cert_failures", "witness",
    ]
    rows = [
        _spec_cells(spec)
        + [phi, out.length, out.mode, out.nodes, out.collapsed, out.cert_failures,
           ";".join(witness) if witness else ""]
    ]
    human = [
        f"phi({spec.label()}) = {phi}  [search]",
        f"longest chain: {out.length} vectors "
        f"({out.nodes} nodes, {out.collapsed} collapsed, mode {out.mode})",
    ]
    if args.witness:
        human.append(f"witness chain over {_field_note(space)}:")
        human.extend(f"  {_vector_tuple(v)}" for v in out.witness)
    return payload, (header, rows), human, stats, EXIT_OK


def _table_specs(max_dim: int):
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


def _cmd_verify_table(args):
    rows_out = []
    tsv_rows = []
    human = []
    all_match = True
    for spec in _table_specs(args.max_dim):
        props = phi_formula(spec, "propositions")
        conc = phi_formula(spec, "conclusion")
        resolved = phi_resolved(spec)
        searched = phi_bruteforce(spec)
        flags = []
        if props != conc:
            flags.append("props-vs-conclusion")
        if searched != props:
            flags.append("search-vs-props")
        match = searched == resolved
        all_match = all_match and match
        rows_out.append(
            {
                "flags": flags,
                "phi": {
                    "formula_conclusion": _tagged(conc, "formula-conclusion"),
                    "formula_props": _tagged(props, "formula-props"),
                    "resolved": _tagged(resolved, "search"),
                    "search": _tagged(searched, "search"),
                },
                "search_matches_resolved": match,
                "spec": _spec_dict(spec),
            }
        )
        tsv_rows.append(
            _spec_cells(spec)
            + [props, conc, resolved, searched, match, ";".join(flags)]
        )
        mark = "ok" if match else "MISMATCH"
        note = f"  ({', '.join(flags)})" if flags else ""
        human.append(
            f"{spec.label():16s} props={props:2d} conclusion={conc:2d} "
            f"search={searched:2d} {mark}{note}"
        )
    fischer = []
    for n in sorted(FISCHER_PHI):
        spec = GroupSpec("fischer", n)
        fischer.append(
            {
                "note": "recorded constant, beyond explicit search range",
                "phi": _tagged(FISCHER_PHI[n], "formula-props"),
                "spec": _spec_dict(spec),
            }
        )
        tsv_rows.append(
            ["fischer", n, "", "", "", FISCHER_PHI[n], "", "", "", "", "recorded-constant"]
        )
        human.append(
            f"{spec.label():16s} props={FISCHER_PHI[n]:2d} (recorded constant, "
            "beyond explicit search range)"
        )
    human.append("all searches match the resolved table" if all_match else "table mismatch")
    payload = {
        "all_match": all_match,
        "fischer": fischer,
        "max_dim": args.max_dim,
        "rows": rows_out,
    }
    header = [
        "family", "n", "eps", "mu", "pi",
        "phi_props", "phi_conclusion", "phi_resolved", "phi_search",
        "search_matches_resolved", "flags",
    ]
    return payload, (header, tsv_rows), human, None, EXIT_OK if all_match else EXIT_MISMATCH


def _cmd_witness(args):
    spec = _spec_from(args)
    w = paper_witness_chain(spec)
    valid = w.verify()
    matches = w.length == w.claimed_length
    payload = {
        "claimed_length": _tagged(w.claimed_length, "formula-props"),
        "length": _tagged(w.length, "search"),
        "matches_claimed": matches,
        "normalized": _spec_dict(w.spec) if w.spec != spec else None,
        "reconstructed": w.reconstructed,
        "spec": _spec_dict(spec),
        "valid": valid,
        "vectors": [list(map(int, v)) for v in w.vectors],
    }
    header = [
        "family", "n", "eps", "mu", "pi",
        "claimed_length", "length", "valid", "matches_claimed", "reconstructed",
        "vector_index", "vector",
    ]
    base = _spec_cells(w.spec) + [w.claimed_length, w.length, valid, matches, w.reconstructed]
    rows = [base + [i, _vector_word(v)] for i, v in enumerate(w.vectors)] or [base + ["", ""]]
    human = [
        f"witness chain for {w.spec.label()}: length {w.length} "
        f"(claimed {w.claimed_length}), vectors over {_field_note(w.space)}",
    ]
    human.extend(f"  {_vector_tuple(v)}" for v in w.vectors)
    human.append(f"chain conditions: {'pass' if valid else 'FAIL'}")
    if not matches:
        human.append("claimed length NOT attained (table cell corrected by search)")
    if w.reconstructed:
        human.append("note: rebuilt from the forced path structure")
    code = EXIT_OK if valid and matches else EXIT_MISMATCH
    return payload, (header, rows), human, None, code


def _cmd_embed(args):
    n, cons = args.sn, args.target
    eps_list = (1, -1) if cons == "o2" and n % 4 == 2 else (None,)
    if args.full_injectivity and n > 8:
        raise UnsupportedCase("full injectivity enumeration is capped at n = 8")
    variants = []
    tsv_rows = []
    human = []
    ok = True
    for eps in eps_list:
        rep = embed_symmetric(n, cons, eps=eps)
        checks = dict(sorted(rep.checks.items()))
        if args.full_injectivity:
            checks["full_injectivity"] = full_injectivity(rep)
        passed = all(checks.values())
        ok = ok and passed
        variants.append(
            {
                "all_passed": passed,
                "ambient_dim": rep.ambient.dim,
                "checks": checks,
                "eps": eps,
                "induced_dim": rep.space.dim,
                "target": _spec_dict(rep.target),
            }
        )
        for name, val in checks.items():
            tsv_rows.append([n, cons, _sgn_cell(eps or 0), rep.target.label(), name, val])
        human.append(f"S_{n} -> {rep.target.label()}  (construction {cons})")
        human.extend(
            f"  {name}: {'pass' if val else 'FAIL'}" for name, val in checks.items()
        )
    payload = {"construction": cons, "sn": n, "variants": variants}
    header = ["sn", "construction", "eps", "target", "check", "passed"]
    return payload, (header, tsv_rows), human, None, EXIT_OK if ok else EXIT_MISMATCH


def _cmd_norton(args):
    spec = _spec_from(args)
    rep = norton_check(spec, budget=args.budget)
    payload = {
        "class_size": rep.class_size,
        "exhaustive": rep.exhaustive,
        "histogram": {str(k): v for k, v in sorted(rep.histogram.items())},
        "max_order_seen": rep.max_order_seen,
        "pairs_tested": rep.pairs_tested,
        "s_size": rep.s_size,
        "spec": _spec_dict(rep.spec),
        "violations": [list(v) for v in rep.violations],
    }
    header = [
        "family", "n", "eps", "mu", "pi",
        "class_size", "s_size", "pairs_tested", "max_order_seen",
        "exhaustive", "histogram", "violations",
    ]
    hist = ";".join(f"{k}:{v}" for k, v in sorted(rep.histogram.items()))
    viols = ";".join(f"{i},{j},{o}" for i, j, o in rep.violations)
    rows = [
        _spec_cells(rep.spec)
        + [rep.class_size, rep.s_size, rep.pairs_tested, rep.max_order_seen,
           rep.exhaustive, hist, viols]
    ]
    human = rep.describe().splitlines()
    code = EXIT_OK if not rep.violations else EXIT_MISMATCH
    return payload, (header, rows), human, None, code


_HANDLERS = {
    "phi": _cmd_phi,
    "search": _cmd_search,
    "verify-table": _cmd_verify_table,
    "witness": _cmd_witness,
    "embed": _cmd_embed,
    "norton": _cmd_norton,
}


def _echo_args(args) -> dict:
    skip = {"json", "tsv"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k not in skip:
            out[k] = v
    return out


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        payload, table, human, stats, code = _HANDLERS[args.command](args)
    except UnsupportedCase as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except SearchBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    elapsed = time.perf_counter() - start
    if args.json:
        envelope = {
            "arguments": _echo_args(args),
            "command": args.command,
            "payload": payload,
            "schema_version": SCHEMA_VERSION,
            "search_statistics": stats,
            "timing": None,
        }
        print(json.dumps(envelope, sort_keys=True, indent=2))
    elif args.tsv:
        header, rows = table
        print(f"# schema_version\t{SCHEMA_VERSION}")
        print(f"# command\t{args.command}")
        print("\t".join(header))
        for row in rows:
            print("\t".join(str(cell) for cell in row))
    else:
        for line in human:
            print(line)
        print(f"elapsed: {elapsed:.2f}s")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
