#!/usr/bin/env python3
"""Run every invariant suite and write a plain-text report.

Exits non-zero if any check fails, so it can gate a CI job.
"""

import argparse
import sys
import time

from liesqueeze.verification import SUITES


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=None, help="report path (default: stdout only)")
    args = parser.parse_args()

    lines, failed = [], 0
    for name, suite in SUITES.items():
        start = time.perf_counter()
        checks = suite()
        lines.append(f"[{name}] {len(checks)} checks in {time.perf_counter() - start:.2f}s")
        for chk in checks:
            lines.append("  " + chk.line())
            failed += not chk.passed
    lines.append(f"{'all checks passed' if not failed else f'{failed} checks failed'}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
