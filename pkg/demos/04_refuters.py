#!/usr/bin/env python3
"""Constructively refute too-small palettes.

Hand the refuter any family of independent (or bounded-defect) classes
with too few classes, and it builds a concrete vertex that none of them
contains: the witness that no such coloring, and hence no such one-round
or r-round algorithm, exists.
"""

from colorreduce import (MULTISET, build_local1, build_relaxed_levels,
                         class_defect, refute_relaxed,
                         uncovered_defective_node, uncovered_local1_node,
                         view_to_json)
from colorreduce.bounds import (random_defective_classes,
                                random_independent_sets, random_relaxed_class)

print("== one-round host, m=7, delta=4: 4 classes can never cover ==")
host = build_local1(7, 4, MULTISET)
classes = random_independent_sets(host, 4, seed=7)
print("greedy maximal class sizes:", [len(c) for c in classes],
      f"(host has {host.n_vertices} vertices)")
node = uncovered_local1_node(classes, 7, 4)
print("uncovered vertex:", view_to_json(node))
print("in any class:", any(node in c for c in classes))

print("\n== defect-1 classes, m=32, delta=4: one class is not enough ==")
(cls,) = random_defective_classes(32, 4, 1, count=1, seed=3)
print(f"class of {len(cls)} vertices, induced degree {class_defect(cls)}")
node = uncovered_defective_node([cls], 32, 4, 1)
print("uncovered vertex:", view_to_json(node))

print("\n== recursive host, two levels (m=5, D=4): 2 classes fail ==")
levels = build_relaxed_levels(1, 5, 4)
classes = [random_relaxed_class(levels, 40, seed=s, bound=4) for s in (1, 2)]
print("class sizes:", [len(c) for c in classes])
node = refute_relaxed(classes, 2, 5, 4, levels=levels)
print("uncovered level-2 vertex:", view_to_json(node))
print("its center sits one level down:", view_to_json(node.inner))
