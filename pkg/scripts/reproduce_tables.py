#!/usr/bin/env python3
"""Print the OCN(K_n) / crossing table, the OCN(K_n,m) grid and MOCN(K_n,m) checks.

Every searched value comes from an exhaustive scan of the shipped order-type
database (up to 8 points); constructions and closed forms are evaluated
exactly for larger parameters.

Usage:
    python scripts/reproduce_tables.py [--max-points 8] [--jobs N]
"""

import argparse
import os
from math import comb

from orchardcross import constructions as C
from orchardcross.graphs import complete, complete_bipartite
from orchardcross.orchard import Drawing, drawing_crossing_number, rectilinear_crossings
from orchardcross.explore.search import DbSource, mocn_cr_coincidence, search_ocn


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-points", type=int, default=8)
    ap.add_argument("--jobs", type=int, default=len(os.sched_getaffinity(0)))
    args = ap.parse_args()
    db = DbSource()

    print("n   OCN(K_n) convex  2C(n,4)  searched  crossings(convex)  MOCN  min crossings")
    for n in range(4, 13):
        d = Drawing.identity(C.convex_position(n))
        ocn = drawing_crossing_number(d, complete(n)).total
        cr_convex = rectilinear_crossings(d, complete(n))
        searched = mocn = crmin = "-"
        if n <= args.max_points:
            searched = search_ocn(complete(n), "min", db, require_exhaustive=True, jobs=args.jobs).value
            rep = mocn_cr_coincidence(n, db, require_exhaustive=True, jobs=args.jobs)
            mocn, crmin = rep.mocn, rep.crossing_min
        print(f"{n:<3} {ocn:<15} {2 * comb(n, 4):<8} {searched!s:<9} {cr_convex:<18} {mocn!s:<5} {crmin}")

    print("\nOCN(K_n,m), exhaustive (rows n, columns m)")
    print("     " + "".join(f"{m:>6}" for m in range(2, 7)))
    for n in range(2, 7):
        row = []
        for m in range(2, 7):
            if n + m > args.max_points:
                row.append("")
                continue
            g, _ = complete_bipartite(n, m)
            row.append(str(search_ocn(g, "min", db, require_exhaustive=True, jobs=args.jobs).value))
        print(f"{n:>4} " + "".join(f"{v:>6}" for v in row))

    print("\nMOCN(K_n,m): two arcs vs closed form vs exhaustive max-search")
    for n in range(1, 7):
        for m in range(n, 7):
            d, g = C.bipartite_drawing(C.two_arcs(n, m), n, m)
            built = drawing_crossing_number(d, g).total
            searched = "-"
            if n + m <= args.max_points:
                searched = search_ocn(g, "max", db, require_exhaustive=True, jobs=args.jobs).value
            print(f"  ({n},{m}) two-arcs={built} closed={C.mocn_bipartite(n, m)} searched={searched}")


if __name__ == "__main__":
    main()
