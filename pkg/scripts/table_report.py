#!/usr/bin/env python3
"""Reproduce the classification table from the built-in catalog.

For every entry: the holonomy order, whether the group is torsion-free, the
normaliser closure size (or 'infinite'), the R-infinity verdict, and the
spectrum (computed exactly for finite normalisers, annotated otherwise).

Usage: python scripts/table_report.py [--cap N]
"""

from __future__ import annotations

import argparse
import time

from crysturn.catalog import builtin_catalog
from crysturn.groups import ClosureCapExceeded, matrix_group_closure
from crysturn.reidemeister import RinfStatus, decide_r_infinity, spectrum


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cap", type=int, default=10000)
    args = parser.parse_args()

    catalog = builtin_catalog()
    header = f"{'entry':<14} {'|F|':>4} {'tf':>3} {'|N_F|':>8} {'R-inf':>7}  spectrum"
    print(header)
    print("-" * len(header))
    t0 = time.time()
    for name in catalog.names():
        entry = catalog.entry(name)
        group = entry.group()
        try:
            closure_order = matrix_group_closure(
                list(group.normaliser_gens or ()), cap=args.cap
            ).order
        except (ClosureCapExceeded, ValueError):
            closure_order = None
        verdict = decide_r_infinity(group, cap=args.cap)
        if verdict.status is RinfStatus.FAILS:
            rinf = "no"
        elif verdict.status is RinfStatus.HOLDS:
            rinf = "yes"
        else:
            rinf = "?"
        if closure_order is not None:
            computed = spectrum(group, cap=args.cap)
            spec = "{" + ", ".join(map(str, computed.finite_values)) + "}"
            if computed.contains_infinity:
                spec += " + inf"
        else:
            spec = f"(annotated: {entry.expected.spectrum})" if entry.expected.spectrum else ""
        nf = str(closure_order) if closure_order is not None else "infinite"
        tf = "*" if group.is_bieberbach() else ""
        print(f"{name:<14} {group.order:>4} {tf:>3} {nf:>8} {rinf:>7}  {spec}")
    print(f"\n{len(catalog.names())} entries in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
