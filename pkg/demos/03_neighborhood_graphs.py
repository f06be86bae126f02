#!/usr/bin/env python3
"""Build the four vertex families and compare their sizes and chromatic
numbers at desk scale.

The chromatic number of the r-round realizable-view graph is exactly the
best palette any r-round algorithm can guarantee, which is why these
finite graphs decide colorability questions.
"""

import tempfile
from pathlib import Path

from colorreduce import (MULTISET, SET, build_local1, build_relaxed,
                         build_setlocal, build_typed, chi_exact,
                         export_dimacs)

print("one-round family at m=5, delta=3:")
for variant in (MULTISET, SET):
    g = build_local1(5, 3, variant)
    chi = chi_exact(g, budget=500_000)
    print(f"  {variant:>8}: {g.n_vertices:>4} vertices, {g.n_edges:>5} edges, "
          f"chi {'=' if chi.exact else '>='} {chi.lower}")

print("\nrecursive families at m=3, D=2:")
for r in (0, 1, 2):
    nt = build_relaxed(r, 3, 2)
    ntilde = build_typed(r, 3, 2)
    nsl = build_setlocal(r, 3, 2)
    print(f"  level {r}: relaxed {nt.n_vertices:>3}, typed {ntilde.n_vertices:>3}, "
          f"setlocal {nsl.n_vertices:>3} vertices")

print("\nchromatic numbers along the level-2 chain (m=3, D=2):")
for name, g in (("relaxed", build_relaxed(2, 3, 2)),
                ("typed", build_typed(2, 3, 2)),
                ("setlocal", build_setlocal(2, 3, 2))):
    chi = chi_exact(g)
    print(f"  {name:>8}: chi = {chi.lower} (exact={chi.exact})")

# bigger hosts go out to external solvers via DIMACS
big = build_local1(7, 4, MULTISET)
with tempfile.TemporaryDirectory() as tmp:
    col = Path(tmp) / "one_round_7_4.col"
    export_dimacs(big, col)
    lines = col.read_text().splitlines()
    print(f"\nexported {big.n_vertices}-vertex host: '{lines[0]}' "
          f"plus {len(lines) - 1} edge lines and a vertex-map sidecar")
