#!/usr/bin/env python3
"""Tabulate dim L over a weight grid for one family: a small experiment driver.

Example:
    python3 scripts/dimension_table.py --family B --rank 2 --k 1 --l 3
prints dim L_{k,n}(lambda) for every lambda in Z_l^(n-k+1), together with the
certification verdict.  The Steinberg corner must reach the full space.
"""

import argparse
import itertools
import sys

sys.path.insert(0, "src")

from nilquant import analysis
from nilquant.build import ModuleSpec, build


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", required=True, choices=list("ABCDG"))
    ap.add_argument("--rank", "-n", type=int, required=True)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--l", type=int, default=3)
    ap.add_argument("--certify", action="store_true",
                    help="also run the full certification per weight")
    ns = ap.parse_args()

    span = ns.rank - ns.k + 1
    print("family %s rank %d k %d l %d" % (ns.family, ns.rank, ns.k, ns.l))
    for lam in itertools.product(range(ns.l), repeat=span):
        spec = ModuleSpec(ns.family, ns.rank, ns.k, lam, ns.l)
        gens = build(spec)
        dim, closure = analysis.submodule_closure(gens)
        line = "lambda=%-12s dim L = %5d / %d" % (list(lam), dim, gens.dim)
        if ns.certify:
            reps = analysis.certify_irreducible(gens, threads=1)
            line += "   certified" if all(r.passed for r in reps) else "   FAILED"
        print(line, flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
