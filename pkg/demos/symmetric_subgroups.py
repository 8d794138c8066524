#!/usr/bin/env python3
"""Realize symmetric groups inside the form spaces and test tightness.

The coordinate swaps of S_n act on a permutation form space; restricting
to the hyperplane orthogonal to a fixed vector (and quotienting out the
radical) turns each swap into a transposition of the target group.  This
demo builds one representation per construction, shows that the swap
(1 2) really is a transvection, and then checks that phi is tight: a copy
of S_phi(G) sits inside G itself for a handful of groups.
"""

from maxsym import GroupSpec, embed_symmetric, phi_consistency_report

TIGHT = [
    GroupSpec("sp", 6),
    GroupSpec("u", 6),
    GroupSpec("o2", 8, eps=1),
    GroupSpec("o2", 8, eps=-1),
    GroupSpec("po3", 6, mu=1, pi=1),
    GroupSpec("po3", 4, mu=-1, pi=1),
]


def main():
    for n, cons, eps in [(8, "sp", None), (7, "po3a", None), (6, "o2", -1)]:
        report = embed_symmetric(n, cons, eps=eps)
        print(f"S_{n} -> {report.target.label()} via construction {cons!r}")
        print("  checks:", ", ".join(k for k, v in sorted(report.checks.items()) if v))
        print("  image of the swap (1 2):")
        for row in report.generator_images[0]:
            print("   ", " ".join(str(int(x)) for x in row))
        print("  acts as the transposition of", report.generator_vectors[0])
        print()

    print("tightness: phi(G) is realized by an S_phi subgroup")
    for spec in TIGHT:
        rep = phi_consistency_report(spec)
        status = "ok" if rep.realized else "NOT REALIZED"
        print(f"  {spec.label():<16} phi={rep.phi:>2}  {status}  ({rep.via})")


if __name__ == "__main__":
    main()
