"""Run verify-pq on every fixture group and compare with the expected landscape rows.

    python3 scripts/reproduce_landscape.py [SLUG ...]

Prints the markdown row per group followed by a line of mismatches, if any.
"""

import sys
import time

from pqverify.chartables import FIXTURES
from pqverify.verify import LANDSCAPE_HEADER, emit_report, expected_landscape, landscape_mismatches, verify_fixture


def main(slugs: list[str]) -> int:
    expected = expected_landscape()
    print(LANDSCAPE_HEADER)
    bad = 0
    for slug in slugs or list(FIXTURES):
        t0 = time.perf_counter()
        rep = verify_fixture(slug)
        print(emit_report(rep, "markdown").splitlines()[2], f"<!-- {time.perf_counter() - t0:.1f}s -->")
        problems = landscape_mismatches(rep.landscape_row(), expected[slug])
        if problems:
            bad += 1
            print(f"    mismatch {slug}: " + "; ".join(problems))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
