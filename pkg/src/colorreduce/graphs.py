"""Colored graphs, coloring validators, and seeded instance generators.

Graphs are immutable after construction and every operation here is pure,
so values can be shared freely between concurrent callers.  Colors are
1-based; palette bounds are explicit so that "color out of palette" and
"coloring not proper" stay distinguishable failures.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import CoverageError, GraphError, PaletteMismatchError, ParameterError


@dataclass(frozen=True)
class ColoredGraph:
    """Simple undirected graph with a proper initial coloring.

    Attributes
    ----------
    n : node count (nodes are 0..n-1)
    adjacency : one sorted neighbor tuple per node, symmetric, irreflexive
    psi : initial color per node, each in [1, m], proper
    m : initial palette size
    delta_cap : declared maximum degree (actual degrees may be smaller)
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    psi: tuple[int, ...]
    m: int
    delta_cap: int

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one node")
        if len(self.adjacency) != self.n or len(self.psi) != self.n:
            raise GraphError("adjacency/psi length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"duplicate neighbor at node {v}")
            if len(nbrs) > self.delta_cap:
                raise GraphError(f"node {v} exceeds declared max degree {self.delta_cap}")
            for u in nbrs:
                if u == v:
                    raise GraphError(f"loop at node {v}")
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbor {u} of node {v} out of range")
                if v not in self.adjacency[u]:
                    raise GraphError(f"asymmetric edge {v}-{u}")
        for v, c in enumerate(self.psi):
            if not 1 <= c <= self.m:
                raise GraphError(f"initial color {c} of node {v} outside [1, {self.m}]")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if self.psi[u] == self.psi[v]:
                    raise GraphError(f"initial coloring not proper on edge {v}-{u}")

    @staticmethod
    def from_edges(n, edges, psi, m, delta_cap=None):
        """Build a graph from an edge list, sorting neighbor lists."""
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        if delta_cap is None:
            delta_cap = max((len(s) for s in adjacency), default=0)
        return ColoredGraph(n, adjacency, tuple(psi), m, delta_cap)

    def degree(self, v):
        return len(self.adjacency[v])

    def max_degree(self):
        return max(len(nbrs) for nbrs in self.adjacency)

    def edges(self):
        """Yield each undirected edge once as (u, v) with u < v."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def n_edges(self):
        return sum(1 for _ in self.edges())


@dataclass(frozen=True)
class ColorAssignment:
    """Per-node positive colors with a declared palette upper bound."""

    colors: tuple[int, ...]
    palette: int

    def __getitem__(self, v):
        return self.colors[v]


def _check_coverage(g: ColoredGraph, phi: ColorAssignment):
    if len(phi.colors) != g.n:
        raise CoverageError(f"assignment covers {len(phi.colors)} nodes, graph has {g.n}")


def validate_proper(g: ColoredGraph, phi: ColorAssignment) -> bool:
    """True iff no edge of g is monochromatic under phi.

    Raises PaletteMismatchError when a color exceeds the declared palette
    (a different failure than an improper coloring) and CoverageError when
    phi does not cover every node.
    """
    _check_coverage(g, phi)
    for v, c in enumerate(phi.colors):
        if not 1 <= c <= phi.palette:
            raise PaletteMismatchError(f"color {c} of node {v} outside [1, {phi.palette}]")
    colors = phi.colors
    for u, nbrs in enumerate(g.adjacency):
        cu = colors[u]
        for v in nbrs:
            if v > u and colors[v] == cu:
                return False
    return True


def validate_defective(g: ColoredGraph, phi: ColorAssignment, d: int) -> bool:
    """True iff every color class induces a subgraph of maximum degree <= d."""
    _check_coverage(g, phi)
    colors = phi.colors
    for u, nbrs in enumerate(g.adjacency):
        cu = colors[u]
        defect = sum(1 for v in nbrs if colors[v] == cu)
        if defect > d:
            return False
    return True


def greedy_coloring(g: ColoredGraph) -> ColorAssignment:
    """Sequential greedy coloring; uses at most max_degree(g)+1 colors."""
    colors = [0] * g.n
    for v in range(g.n):
        used = {colors[u] for u in g.adjacency[v] if u < v}
        c = 1
        while c in used:
            c += 1
        colors[v] = c
    return ColorAssignment(tuple(colors), max(colors))


def random_colored_tree(n: int, delta_cap: int, m: int, seed: int) -> ColoredGraph:
    """Seeded random tree with max degree <= delta_cap and a proper m-coloring.

    Each new node attaches to a uniformly random earlier node that still
    has degree capacity, which caps the degree without rejection sampling.
    Identical arguments always produce the identical graph.
    """
    if m < 2:
        raise ParameterError("need m >= 2 to properly color any edge")
    if n < 1:
        raise ParameterError("need n >= 1")
    if delta_cap < 2:
        raise ParameterError("need delta_cap >= 2")
    rng = random.Random(seed)
    parents = [-1] * n
    deg = [0] * n
    for v in range(1, n):
        candidates = [u for u in range(v) if deg[u] < delta_cap]
        if not candidates:
            raise ParameterError("no attachment point with residual capacity")
        p = candidates[rng.randrange(len(candidates))]
        parents[v] = p
        deg[p] += 1
        deg[v] += 1
    psi = [0] * n
    psi[0] = rng.randrange(1, m + 1)
    for v in range(1, n):
        # uniform over [m] minus the parent color
        c = rng.randrange(1, m)
        if c >= psi[parents[v]]:
            c += 1
        psi[v] = c
    edges = [(parents[v], v) for v in range(1, n)]
    return ColoredGraph.from_edges(n, edges, psi, m, delta_cap)


def graph_to_json(g: ColoredGraph) -> dict:
    """Wire format: 0-based node indices, each edge listed once."""
    return {
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges()],
        "psi": list(g.psi),
        "m": g.m,
        "delta": g.delta_cap,
    }


def graph_from_json(data: dict) -> ColoredGraph:
    return ColoredGraph.from_edges(
        data["n"], [tuple(e) for e in data["edges"]], data["psi"], data["m"], data["delta"]
    )


def assignment_to_json(phi: ColorAssignment) -> dict:
    return {"colors": list(phi.colors), "palette": phi.palette}


def assignment_from_json(data: dict) -> ColorAssignment:
    return ColorAssignment(tuple(data["colors"]), data["palette"])


def load_graph(path) -> ColoredGraph:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def save_graph(g: ColoredGraph, path):
    with open(path, "w") as fh:
        json.dump(graph_to_json(g), fh, sort_keys=True)
        fh.write("\n")
