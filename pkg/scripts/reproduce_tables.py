#!/usr/bin/env python3
"""Run every reproduction table back to back and exit nonzero on mismatch.

Equivalent to `tonelab reproduce --table <name>` over all names.
"""

import sys

from tonelab.cli import main as cli_main

TABLES = ["tone3-stars", "tone4-stars", "prop73", "mols-square", "paths"]


def main() -> int:
    worst = 0
    for table in TABLES:
        print(f"== {table}")
        worst = max(worst, cli_main(["reproduce", "--table", table]))
    return worst


if __name__ == "__main__":
    sys.exit(main())
