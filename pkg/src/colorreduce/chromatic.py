"""Exact and heuristic chromatic numbers for desk-scale graphs.

The internal solver targets graphs up to roughly two thousand vertices;
anything larger should go through the DIMACS export and an external
solver.  Budgets are counted in node expansions (color assignments
tried) rather than wall time, so identical calls give identical results.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParameterError
from .graphs import ColoredGraph
from .nbhd import NbhdGraph
from .views import View, canonical_encode


def as_adjacency(g) -> list[set[int]]:
    """Adapt NbhdGraph, ColoredGraph, or a plain neighbor-list structure."""
    if isinstance(g, NbhdGraph):
        return [set(nbrs) for nbrs in g.adjacency]
    if isinstance(g, ColoredGraph):
        return [set(nbrs) for nbrs in g.adjacency]
    return [set(nbrs) for nbrs in g]


@dataclass(frozen=True)
class ChiResult:
    lower: int
    upper: int
    exact: bool
    witness: tuple[int, ...] | None
    expansions_used: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ParameterError("lower bound above upper bound")


def greedy_clique(adj: list[set[int]]) -> list[int]:
    """Best clique over greedy growth from every seed vertex."""
    n = len(adj)
    degree = [len(s) for s in adj]
    order_key = lambda v: (-degree[v], v)
    best: list[int] = []
    for seed in sorted(range(n), key=order_key):
        clique = [seed]
        candidates = set(adj[seed])
        while candidates:
            v = min(candidates, key=order_key)
            clique.append(v)
            candidates &= adj[v]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def embedded_clique(graph: NbhdGraph) -> list[int] | None:
    """The canonical (degree_param+1)-clique of level-1 families:
    {(x, [delta+1] minus {x})} for the first delta+1 colors; present in
    every level-1 family whenever m >= delta+1."""
    if graph.level != 1 or graph.m < graph.degree_param + 1:
        return None
    kind = graph.variant
    members = []
    for x in range(1, graph.degree_param + 2):
        others = (View.leaf(kind, y) for y in range(1, graph.degree_param + 2) if y != x)
        v = View.make(kind, View.leaf(kind, x), others)
        if not graph.has_vertex(v):
            return None
        members.append(graph.vertex_index(v))
    return sorted(members)


def dsatur(adj: list[set[int]]) -> tuple[list[int], int]:
    """Deterministic saturation-greedy coloring; returns (colors, count).

    Branching order: highest saturation, ties by degree then index.
    """
    n = len(adj)
    colors = [0] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]
    degree = [len(s) for s in adj]
    for _ in range(n):
        best, best_key = -1, None
        for v in range(n):
            if colors[v]:
                continue
            key = (len(neighbor_colors[v]), degree[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        c = 1
        while c in neighbor_colors[best]:
            c += 1
        colors[best] = c
        for u in adj[best]:
            neighbor_colors[u].add(c)
    return colors, max(colors, default=0)


def _bipartition(adj: list[set[int]]) -> list[int] | None:
    n = len(adj)
    colors = [0] * n
    for start in range(n):
        if colors[start]:
            continue
        colors[start] = 1
        queue = [start]
        while queue:
            v = queue.pop()
            for u in adj[v]:
                if colors[u] == 0:
                    colors[u] = 3 - colors[v]
                    queue.append(u)
                elif colors[u] == colors[v]:
                    return None
    return colors


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def _search_k_coloring(adj, k: int, budget: _Budget):
    """Iterative DSATUR-ordered backtracking; returns (status, colors)."""
    n = len(adj)
    colors = [0] * n
    neighbor_colors = [set() for _ in range(n)]
    degree = [len(s) for s in adj]

    def pick():
        best, best_key = -1, None
        for v in range(n):
            if colors[v]:
                continue
            key = (len(neighbor_colors[v]), degree[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def assign(v, c):
        colors[v] = c
        for u in adj[v]:
            neighbor_colors[u].add(c)

    def unassign(v, c):
        colors[v] = 0
        for u in adj[v]:
            if not any(colors[w] == c for w in adj[u]):
                neighbor_colors[u].discard(c)

    def first_free(v, after, upper):
        for cand in range(after + 1, upper + 1):
            if cand not in neighbor_colors[v]:
                return cand
        return None

    max_used = 0
    stack = []  # (vertex, color tried, max_used before)
    while True:
        if all(colors):
            return "yes", list(colors)
        v = pick()
        # symmetry break: allow at most one brand-new color
        c = first_free(v, 0, min(k, max_used + 1))
        if c is not None:
            if not budget.spend():
                return "unknown", None
            stack.append((v, c, max_used))
            assign(v, c)
            max_used = max(max_used, c)
            continue
        # backtrack
        while stack:
            v, c, prev_max = stack.pop()
            unassign(v, c)
            max_used = prev_max
            nxt = first_free(v, c, min(k, max_used + 1))
            if nxt is not None:
                if not budget.spend():
                    return "unknown", None
                stack.append((v, nxt, max_used))
                assign(v, nxt)
                max_used = max(max_used, nxt)
                break
        else:
            return "no", None


def is_k_colorable(g, k: int, budget: int = 1_000_000):
    """Three-valued: ("yes", witness) with a validating coloring, ("no",
    None) after exhaustive search, or ("unknown", None) on budget
    exhaustion."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    adj = as_adjacency(g)
    n = len(adj)
    if n == 0:
        return "yes", []
    if k == 1:
        if any(adj[v] for v in range(n)):
            return "no", None
        return "yes", [1] * n
    if k == 2:
        two = _bipartition(adj)
        return ("yes", two) if two is not None else ("no", None)
    if k >= n:
        return "yes", list(range(1, n + 1))
    status, witness = _search_k_coloring(adj, k, _Budget(budget))
    if status == "yes":
        _check_witness(adj, witness, k)
    return status, witness


def _check_witness(adj, colors, k):
    assert all(1 <= c <= k for c in colors)
    for v, nbrs in enumerate(adj):
        for u in nbrs:
            assert colors[u] != colors[v], "witness coloring is improper"


def chi_exact(g, budget: int = 1_000_000) -> ChiResult:
    """Exact chromatic number when the expansion budget suffices,
    otherwise the best (clique, saturation-greedy) bracket reached."""
    adj = as_adjacency(g)
    lower = len(greedy_clique(adj))
    if isinstance(g, NbhdGraph):
        planted = embedded_clique(g)
        if planted is not None:
            lower = max(lower, len(planted))
    witness, upper = dsatur(adj)
    if len(adj) == 0:
        return ChiResult(0, 0, True, tuple(), 0)
    lower = max(lower, 1)
    tracker = _Budget(budget)
    k = lower
    best_witness = tuple(witness)
    while k < upper:
        remaining = budget - tracker.used
        if remaining <= 0:
            return ChiResult(k, upper, False, best_witness, tracker.used)
        sub = _Budget(remaining)
        if k == 1 or k == 2:
            status, wit = is_k_colorable(adj, k, remaining)
        else:
            status, wit = _search_k_coloring(adj, k, sub)
            tracker.used += sub.used
        if status == "yes":
            _check_witness(adj, wit, k)
            return ChiResult(k, k, True, tuple(wit), tracker.used)
        if status == "no":
            k += 1
            continue
        return ChiResult(k, upper, False, best_witness, tracker.used)
    return ChiResult(upper, upper, True, best_witness, tracker.used)


def export_dimacs(g, path) -> None:
    """Standard DIMACS col format: `p edge n m` then one `e u v` line per
    undirected edge, 1-based.  For neighborhood graphs a sidecar JSON at
    <path>.map.json maps DIMACS indices to canonical vertex encodings."""
    adj = as_adjacency(g)
    edges = [(u, v) for u in range(len(adj)) for v in adj[u] if u < v]
    with open(path, "w") as fh:
        fh.write(f"p edge {len(adj)} {len(edges)}\n")
        for u, v in edges:
            fh.write(f"e {u + 1} {v + 1}\n")
    if isinstance(g, NbhdGraph):
        mapping = {
            str(i + 1): canonical_encode(v).decode("ascii")
            for i, v in enumerate(g.vertices)
        }
        with open(f"{path}.map.json", "w") as fh:
            json.dump(mapping, fh, sort_keys=True, indent=0)
            fh.write("\n")


def read_dimacs(path) -> tuple[int, list[tuple[int, int]]]:
    """Parse a col file back to (n, 0-based edge list)."""
    n = None
    edges = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0] == "c":
                continue
            if parts[0] == "p":
                n = int(parts[2])
            elif parts[0] == "e":
                edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
    if n is None:
        raise ParameterError(f"{path} has no problem line")
    return n, edges
