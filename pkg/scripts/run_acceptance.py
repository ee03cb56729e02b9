"""Run every acceptance check and print one PASS/FAIL line each.

Usage: python3 scripts/run_acceptance.py [numbers...]
"""

import argparse
import sys

from dqc1ent.acceptance import CHECKS, run_check


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("numbers", nargs="*", type=int, help="subset of checks (default: all)")
    args = p.parse_args()
    numbers = args.numbers or [c[0] for c in CHECKS]
    failed = 0
    for i in numbers:
        r = run_check(i)
        print(r.line(), flush=True)
        failed += not r.passed
    print(f"{len(numbers) - failed}/{len(numbers)} passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
