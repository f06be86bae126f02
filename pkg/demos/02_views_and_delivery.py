#!/usr/bin/env python3
"""What a node can actually learn per round, under both delivery rules.

The star with identically colored leaves is the canonical separator:
under multiset delivery the center learns its degree, under set delivery
it only learns that at least one neighbor has that color.
"""

from colorreduce import (MULTISET, SET, ColoredGraph, canonical_encode,
                         erase_multiplicities, extract_view,
                         full_information_program, run, truncate)

star = ColoredGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)], [1, 2, 2, 2], 2, 3)
print("star: center color 1, three leaves color 2\n")

for kind in (SET, MULTISET):
    v = extract_view(star, 0, 1, kind)
    print(f"{kind:>8} 1-round view of center: {v}")
    print(f"{'':>8} encoding: {canonical_encode(v).decode()}")

print("\nset view == multiset view with multiplicities erased:",
      erase_multiplicities(extract_view(star, 0, 2, MULTISET))
      is extract_view(star, 0, 2, SET))

path = ColoredGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)],
                               [1, 2, 3, 1, 2], 3, 2)
deep = extract_view(path, 2, 3, SET)
print("\n3-round view of a path center, truncated level by level:")
for r in range(deep.depth, -1, -1):
    print(f"  depth {r}: {truncate(deep, r)}")

# the full-information program reconstructs exactly these views
phi, trace = run(path, full_information_program(3), SET, trace=True)
match = all(
    trace.state_digest_at(3, v) == extract_view(path, v, 3, SET).digest.hex()
    for v in range(path.n)
)
print(f"\nsimulated full-information states match extracted views: {match}")
