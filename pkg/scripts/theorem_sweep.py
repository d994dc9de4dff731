#!/usr/bin/env python3
"""Run the seeded property sweeps over random games and routing instances
and print a violation count per claim.  Non-zero counts are expected for
the three equivalences that concrete counterexamples falsify; see the
suite docstrings in tests/theorem_suites.py."""

import argparse
import pathlib
import sys
import time

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT))

from tests.theorem_suites import ALL_SUITES  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=1000,
                    help="number of random instances per sweep")
    ap.add_argument("--show", type=int, default=3,
                    help="how many violations to print per sweep")
    args = ap.parse_args()

    exit_code = 0
    for name, suite in ALL_SUITES:
        start = time.monotonic()
        violations = suite(range(args.seeds))
        took = time.monotonic() - start
        print(f"{name}: {len(violations)} violations "
              f"({args.seeds} seeds, {took:.1f}s)")
        for line in violations[: args.show]:
            print(f"  {line}")
        if violations:
            exit_code = 1
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
