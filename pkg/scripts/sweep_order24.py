"""Case sweep for units of order 24 in Aut(U3(3)).

    python3 scripts/sweep_order24.py [--wagner off|prime-power|all]

Each proper power is given every admissible partial-augmentation vector of
its order independently; the script prints the per-order counts, the number
of cases and how many cases survive.
"""

import argparse
import json
import time

from pqverify.filters import case_sweep, make_solver
from pqverify.verify import fixture_tables


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--wagner", default="prime-power", choices=("off", "prime-power", "all"))
    ap.add_argument("--group", default="U3_3.2")
    ap.add_argument("--order", type=int, default=24)
    args = ap.parse_args()
    t0 = time.perf_counter()
    res = case_sweep(make_solver(fixture_tables(args.group), args.wagner), args.order)
    out = res.to_json()
    out["seconds"] = round(time.perf_counter() - t0, 1)
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
