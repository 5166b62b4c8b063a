"""Run the acceptance checks and print one verdict line per check.

Usage: python scripts/run_acceptance.py [A1 A8 ...]
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests"))

import test_acceptance  # noqa: E402


def main(argv):
    wanted = set(argv) or {key for key, _, _ in test_acceptance.CHECKS}
    failed = 0
    for key, title, check in test_acceptance.CHECKS:
        if key not in wanted:
            continue
        passed, detail = check()
        failed += not passed
        print(f"{key} {'PASS' if passed else 'FAIL'}  {title}: {detail}", flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
