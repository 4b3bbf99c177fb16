#!/usr/bin/env python3
"""Run every verification suite at the default bounds and print a summary.

Usage: python3 scripts/run_checks.py [REPORT.json]

Exit code 0 if every check passes, 1 otherwise.
"""

import sys

from hzlag.cli import main as cli_main


def main() -> int:
    argv = ["verify", "--suite", "all"]
    if len(sys.argv) > 1:
        argv += ["--out", sys.argv[1]]
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
