#!/usr/bin/env python3
"""Walk a random tree from a huge initial palette down to delta+1 colors.

Shows the two phases of the pipeline: iterated color-set reduction
(palette drops super fast, a couple of rounds) followed by one-round
merges (palette shrinks by a 1/(delta+2) factor per round).
"""

from colorreduce import (SET, delta_plus_one_program, linial_palette_schedule,
                         random_colored_tree, run, validate_proper)

M, DELTA, N = 10**6, 4, 60

g = random_colored_tree(N, DELTA, M, seed=2024)
print(f"instance: tree on {g.n} nodes, max degree {g.max_degree()}, "
      f"initial palette {g.m}")

prog = delta_plus_one_program(M, DELTA)
palettes = prog.meta["palettes"]
reduce_rounds = len(linial_palette_schedule(M, DELTA)) - 1
print(f"\nschedule ({len(palettes) - 1} rounds):")
for t, p in enumerate(palettes):
    phase = "start" if t == 0 else ("reduce" if t <= reduce_rounds else "merge")
    print(f"  round {t:>2}: palette {p:>7}  [{phase}]")

phi, trace = run(g, prog, SET, trace=True)
print(f"\nfinal coloring uses colors {sorted(set(phi.colors))}")
print(f"proper: {validate_proper(g, phi)}  (palette bound {DELTA + 1})")

print("\nper-round palette actually broadcast (from the trace):")
for t in range(1, len(trace.rounds) + 1):
    used = {int(trace.sent_at(t, v)) for v in range(g.n)}
    print(f"  round {t:>2}: {len(used):>3} distinct colors, max {max(used)}")
