#!/usr/bin/env python3
"""Regenerate the bundled decomposition tables under src/pfilt/data.

Each table is the Jantzen-sum-formula solver output for the full
restricted box of its (system, p), cross-checked here against dimension
conservation of the induced-character decomposition before being
written.  Run from the repository root:

    python3 scripts/build_tables.py
"""

import itertools
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pfilt import (SimpleCharacters, decompose, export_table, jantzen_solver,
                   root_system)

TARGETS = [("A2", 2), ("A2", 3), ("A2", 5), ("B2", 2), ("B2", 3), ("B2", 5), ("B2", 7)]

DATA_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "pfilt" / "data"


def cross_check(system, p, table):
    resolver = SimpleCharacters(system, p, use_bundled=False)
    resolver.table.merge(table)
    npos = len(system.positive_roots)
    for lam in itertools.product(range(p), repeat=system.rank):
        factors = decompose(system, lam, p, resolver).factors
        total = sum(f.mult * resolver.dimension(f.mu0) for f in factors)
        if total != p ** npos:
            raise SystemExit("dimension check failed at %s (%s, p=%d)" % (lam, system.key, p))


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    for name, p in TARGETS:
        system = root_system(name)
        table = jantzen_solver(system, p, p - 1)
        expected = p ** system.rank
        if len(table.rows) != expected:
            raise SystemExit("solver left %d/%d rows for %s p=%d"
                             % (len(table.rows), expected, name, p))
        cross_check(system, p, table)
        path = DATA_DIR / ("decomp_%s_p%d.json" % (name, p))
        export_table(table, path)
        print("wrote %s (%d rows)" % (path.name, len(table.rows)))


if __name__ == "__main__":
    main()
