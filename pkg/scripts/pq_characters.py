"""List (p,q)-constant characters of a table and which of them rule out units of order p*q.

    python3 scripts/pq_characters.py U3_3.mod3 2 7 [--max-terms 3] [--all]
"""

import argparse

from pqverify.chartables import load_table_file
from pqverify.cyclotomic import dumps
from pqverify.filters import find_pq_constant, pq_eliminate


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("table")
    ap.add_argument("p", type=int)
    ap.add_argument("q", type=int)
    ap.add_argument("--max-terms", type=int, default=3)
    ap.add_argument("--max-coeff", type=int, default=2)
    ap.add_argument("--all", action="store_true", help="also list characters that do not eliminate")
    args = ap.parse_args()
    t = load_table_file(args.table)
    found = find_pq_constant(t, args.p, args.q, args.max_terms, args.max_coeff)
    hits = 0
    for xi in found:
        v = pq_eliminate(xi)
        hits += v.infeasible
        if v.infeasible or args.all:
            mark = "eliminates" if v.infeasible else v.note
            print(f"{xi.source:28s} deg {xi.degree:4d}  on {args.p}: {dumps(xi.value_on_p):6s} on {args.q}: {dumps(xi.value_on_q):6s} {mark}")
    print(f"{len(found)} constant combinations, {hits} eliminate order {args.p * args.q}")


if __name__ == "__main__":
    main()
