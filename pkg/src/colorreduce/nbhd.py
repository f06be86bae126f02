"""Explicit neighborhood-graph families and the homomorphisms between them.

Every vertex is a recursive (center, neighbor-collection) pair represented
as a View: level 0 is a bare color, level r+1 pairs a level-r vertex with
a collection of level-r vertices.  Four families share the same edge rule
-- {(x,A),(y,B)} is an edge iff x is in B and y is in A; level 0 is the
complete graph on the m colors:

* local1:   one-round full-information graph; (x, A) for every
            neighbor-color collection A over [m]\\{x} with |A| <= delta
            (multiset variant) or every subset (set variant).
* relaxed:  level i+1 takes any subset A of a vertex's level-i neighbors
            with |A| <= D, no further restriction.
* typed:    additionally requires the neighbor set to realize every type
            of the center: types(x) == {center(a) for a in A}.
* setlocal: the views actually realizable in properly m-colored trees of
            max degree <= delta under set delivery, with edges between
            views co-realizable at adjacent tree nodes; built by
            exhaustive enumeration of bounded-depth rooted colored trees.

The recursive families blow up exponentially; builders project their
vertex count first and refuse to exceed an explicit cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .errors import CapExceededError, ConstructionError, ParameterError
from .graphs import ColoredGraph
from .views import MULTISET, SET, View, canonical_encode, extract_all_views

DEFAULT_CAP = 2_000_000

LOCAL1 = "local1"
SETLOCAL = "setlocal"
RELAXED = "relaxed"
TYPED = "typed"


class _Bottom:
    """Sentinel center/type of level-0 vertices."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "<bottom>"


BOTTOM = _Bottom()


def center(v: View):
    """The first component of (x, A); BOTTOM for level-0 vertices."""
    return v.inner if v.depth >= 1 else BOTTOM


def types(v: View) -> frozenset:
    """The set of distinct neighbor entries of (x, A); {BOTTOM} at level 0."""
    if v.depth == 0:
        return frozenset({BOTTOM})
    return v.child_lookup


def centers_of(nodes) -> frozenset:
    return frozenset(center(a) for a in nodes)


def mutual_edge(u: View, v: View) -> bool:
    """Edge rule: mutual membership at level >= 1, distinctness at level 0."""
    if u.depth != v.depth:
        return False
    if u.depth == 0:
        return u is not v
    return u.inner in v.child_lookup and v.inner in u.child_lookup


@dataclass
class NbhdGraph:
    """A finite neighborhood graph with a canonical vertex order.

    Vertices are sorted by canonical encoding; adjacency holds sorted
    vertex indices.  degree_param is delta for local1/setlocal and the
    neighbor-set bound D for relaxed/typed.
    """

    family: str
    m: int
    degree_param: int
    level: int
    variant: str
    vertices: tuple[View, ...]
    adjacency: tuple[tuple[int, ...], ...]
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def vertex_index(self, v: View) -> int:
        return self._index[v]

    def has_vertex(self, v: View) -> bool:
        return v in self._index

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self.adjacency[i]

    def neighbor_views(self, v: View) -> tuple[View, ...]:
        return tuple(self.vertices[j] for j in self.adjacency[self._index[v]])

    def edges(self):
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                if i < j:
                    yield (i, j)

    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    def stats(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "degree_param": self.degree_param,
            "level": self.level,
            "variant": self.variant,
            "vertices": self.n_vertices,
            "edges": self.n_edges,
            "max_degree": self.max_degree(),
        }


def _finish(family, m, degree_param, level, variant, vertices) -> NbhdGraph:
    """Sort vertices canonically and wire edges by the mutual-membership rule."""
    ordered = tuple(sorted(set(vertices), key=canonical_encode))
    index = {v: i for i, v in enumerate(ordered)}
    nbrs = [set() for _ in ordered]
    if level == 0:
        for i in range(len(ordered)):
            nbrs[i] = set(range(len(ordered))) - {i}
    else:
        by_center: dict[View, list[int]] = {}
        for i, v in enumerate(ordered):
            by_center.setdefault(v.inner, []).append(i)
        for i, v in enumerate(ordered):
            x = v.inner
            for child in v.distinct_children():
                for j in by_center.get(child, ()):
                    if x in ordered[j].child_lookup:
                        nbrs[i].add(j)
                        nbrs[j].add(i)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    return NbhdGraph(family, m, degree_param, level, variant, ordered, adjacency, index)


def _clique_vertices(m, kind):
    return [View.leaf(kind, c) for c in range(1, m + 1)]


def _multiset_count(options: int, max_size: int) -> int:
    return sum(math.comb(options + k - 1, k) for k in range(max_size + 1))


def _subset_count(options: int, max_size: int) -> int:
    return sum(math.comb(options, k) for k in range(min(options, max_size) + 1))


def build_local1(m: int, delta: int, variant=MULTISET, cap: int = DEFAULT_CAP) -> NbhdGraph:
    """One-round graph: all (x, A) with A over [m]\\{x}, |A| <= delta,
    including the empty A; multiset or plain-subset neighbor collections."""
    if not (m > delta >= 2):
        raise ParameterError(f"need m > delta >= 2, got m={m}, delta={delta}")
    if variant == MULTISET:
        projected = m * _multiset_count(m - 1, delta)
    elif variant == SET:
        projected = m * _subset_count(m - 1, delta)
    else:
        raise ParameterError(f"unknown variant {variant!r}")
    if projected > cap:
        raise CapExceededError(projected, cap)
    leaves = {c: View.leaf(variant, c) for c in range(1, m + 1)}
    vertices = []
    for x in range(1, m + 1):
        others = [leaves[c] for c in range(1, m + 1) if c != x]
        chooser = combinations_with_replacement if variant == MULTISET else combinations
        for k in range(delta + 1):
            for combo in chooser(others, k):
                vertices.append(View.make(variant, leaves[x], combo))
    return _finish(LOCAL1, m, delta, 1, variant, vertices)


def _expand_level(prev: NbhdGraph, bound: int, typed: bool, cap: int) -> NbhdGraph:
    projected = sum(
        _subset_count(len(prev.adjacency[i]), bound) for i in range(prev.n_vertices)
    )
    if projected > cap:
        raise CapExceededError(projected, cap,
                               what=f"level-{prev.level + 1} vertices (upper bound)")
    vertices = []
    for i, x in enumerate(prev.vertices):
        nbr_views = [prev.vertices[j] for j in prev.adjacency[i]]
        required = types(x) if typed else None
        for k in range(min(bound, len(nbr_views)) + 1):
            for combo in combinations(nbr_views, k):
                if typed and centers_of(combo) != required:
                    continue
                vertices.append(View.make(SET, x, combo))
    family = TYPED if typed else RELAXED
    return _finish(family, prev.m, bound, prev.level + 1, SET, vertices)


def build_relaxed_levels(r: int, m: int, d: int, cap: int = DEFAULT_CAP) -> list[NbhdGraph]:
    """Levels 0..r of the unconstrained recursive family."""
    if r < 0 or m < 2 or d < 1:
        raise ParameterError("need r >= 0, m >= 2, d >= 1")
    levels = [_finish(RELAXED, m, d, 0, SET, _clique_vertices(m, SET))]
    for _ in range(r):
        levels.append(_expand_level(levels[-1], d, typed=False, cap=cap))
    return levels


def build_relaxed(r: int, m: int, d: int, cap: int = DEFAULT_CAP) -> NbhdGraph:
    return build_relaxed_levels(r, m, d, cap)[-1]


def build_typed_levels(r: int, m: int, d: int, cap: int = DEFAULT_CAP) -> list[NbhdGraph]:
    """Levels 0..r of the type-constrained family.

    The type condition forces nonempty neighbor sets from level 1 on
    (the level-0 type set is {BOTTOM}, never empty), unlike setlocal
    where isolated realizations keep empty collections legal.
    """
    if r < 0 or m < 2 or d < 1:
        raise ParameterError("need r >= 0, m >= 2, d >= 1")
    levels = [_finish(TYPED, m, d, 0, SET, _clique_vertices(m, SET))]
    for _ in range(r):
        levels.append(_expand_level(levels[-1], d, typed=True, cap=cap))
    return levels


def build_typed(r: int, m: int, d: int, cap: int = DEFAULT_CAP) -> NbhdGraph:
    return build_typed_levels(r, m, d, cap)[-1]


# --- setlocal: exhaustive enumeration of bounded-depth colored trees ----

def _tree_count(m, delta, depth, budget, forbidden, memo):
    """Number of canonical rooted colored trees the enumerator will emit."""
    key = (depth, budget, forbidden)
    got = memo.get(key)
    if got is not None:
        return got
    colors = m - (1 if forbidden else 0)
    if depth == 0:
        total = colors
    else:
        per_color_options = _tree_count(m, delta, depth - 1, delta - 1, True, memo)
        total = colors * _multiset_count(per_color_options, budget)
    memo[key] = total
    return total


def _rooted_trees(m, delta, depth, budget, forbidden, memo):
    """All rooted colored trees as nested (color, (children...)) tuples.

    depth bounds the distance from the root, budget the root's child
    count; non-root nodes keep one degree slot for their parent.  The
    forbidden color (the parent's) keeps colorings proper.
    """
    key = (depth, budget, forbidden)
    got = memo.get(key)
    if got is not None:
        return got
    colors = [c for c in range(1, m + 1) if c != forbidden]
    out = []
    if depth == 0:
        out = [(c, ()) for c in colors]
    else:
        for c in colors:
            subtrees = _rooted_trees(m, delta, depth - 1, delta - 1, c, memo)
            for k in range(budget + 1):
                for combo in combinations_with_replacement(subtrees, k):
                    out.append((c, combo))
    out = tuple(out)
    memo[key] = out
    return out


def _tree_to_graph(tree, m, delta):
    """Materialize nested tuples as a ColoredGraph rooted at node 0."""
    psi = []
    edges = []

    def add(node, parent):
        idx = len(psi)
        psi.append(node[0])
        if parent is not None:
            edges.append((parent, idx))
        for child in node[1]:
            add(child, idx)
        return idx

    add(tree, None)
    return ColoredGraph.from_edges(len(psi), edges, psi, m, delta)


def build_setlocal(r: int, m: int, delta: int, cap: int = DEFAULT_CAP) -> NbhdGraph:
    """Realizable r-views and their co-realizable adjacencies.

    Vertices come from all rooted trees of depth <= r (root degree <=
    delta); edges from all pairs of depth <= r trees joined by a fresh
    edge between their roots, so the joined tree has depth <= r+1.
    Deduplication is canonical on the extracted views.  Intended for
    r <= 2 at small (m, delta).
    """
    if r < 0 or m < 2 or delta < 1:
        raise ParameterError("need r >= 0, m >= 2, delta >= 1")
    if r == 0:
        return _finish(SETLOCAL, m, delta, 0, SET, _clique_vertices(m, SET))
    count_memo: dict = {}
    n_vertex_trees = _tree_count(m, delta, r, delta, False, count_memo)
    n_hang_trees = _tree_count(m, delta, r, delta - 1, False, count_memo)
    projected = n_vertex_trees + n_hang_trees * n_hang_trees
    if projected > cap:
        raise CapExceededError(projected, cap, what="enumerated trees")
    memo: dict = {}
    vertex_views = set()
    for tree in _rooted_trees(m, delta, r, delta, None, memo):
        g = _tree_to_graph(tree, m, delta)
        vertex_views.add(extract_all_views(g, r, SET)[0])
    edge_pairs = set()
    hangs = _rooted_trees(m, delta, r, delta - 1, None, memo)
    for tu in hangs:
        for tv in hangs:
            if tu[0] == tv[0]:
                continue
            psi = []
            edges = []

            def add(node, parent):
                idx = len(psi)
                psi.append(node[0])
                if parent is not None:
                    edges.append((parent, idx))
                for child in node[1]:
                    add(child, idx)
                return idx

            ru = add(tu, None)
            rv = add(tv, None)
            edges.append((ru, rv))
            g = ColoredGraph.from_edges(len(psi), edges, psi, m, delta)
            all_views = extract_all_views(g, r, SET)
            vu, vv = all_views[ru], all_views[rv]
            if vu not in vertex_views or vv not in vertex_views:
                raise ConstructionError("joined-tree view missing from vertex enumeration")
            edge_pairs.add((vu, vv))
            edge_pairs.add((vv, vu))
    graph = _finish(SETLOCAL, m, delta, r, SET, vertex_views)
    # replace rule-derived adjacency with the realizability relation
    nbrs = [set() for _ in graph.vertices]
    for vu, vv in edge_pairs:
        i, j = graph.vertex_index(vu), graph.vertex_index(vv)
        nbrs[i].add(j)
        nbrs[j].add(i)
    graph.adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    return graph


# --- homomorphisms -------------------------------------------------------

@dataclass
class HomMap:
    """A vertex mapping between two neighborhood graphs.

    `verified` is set only after every image was found in the codomain
    vertex set and every domain edge was checked to map to a codomain
    edge.
    """

    domain: NbhdGraph
    codomain: NbhdGraph
    mapping: dict
    name: str = "hom"
    verified: bool = False


@dataclass
class HomReport:
    missing_images: list
    broken_edges: list

    @property
    def ok(self) -> bool:
        return not self.missing_images and not self.broken_edges


def verify_homomorphism(hom: HomMap) -> HomReport:
    """List images outside the codomain and domain edges whose images are
    not codomain edges; an empty report flips the verified flag."""
    missing = []
    broken = []
    for v in hom.domain.vertices:
        img = hom.mapping[v]
        if not hom.codomain.has_vertex(img):
            missing.append(v)
    codomain_adj = {}
    for i, j in hom.codomain.edges():
        codomain_adj.setdefault(i, set()).add(j)
        codomain_adj.setdefault(j, set()).add(i)
    for i, j in hom.domain.edges():
        u, v = hom.domain.vertices[i], hom.domain.vertices[j]
        iu, iv = hom.mapping[u], hom.mapping[v]
        if not (hom.codomain.has_vertex(iu) and hom.codomain.has_vertex(iv)):
            broken.append((u, v))
            continue
        ku, kv = hom.codomain.vertex_index(iu), hom.codomain.vertex_index(iv)
        if kv not in codomain_adj.get(ku, ()):
            broken.append((u, v))
    report = HomReport(missing, broken)
    hom.verified = report.ok
    return report


def typed_to_setlocal_hom(r: int, m: int, d: int, cap: int = DEFAULT_CAP) -> HomMap:
    """Map the typed family into the realizable-view graph by recursively
    mapping centers and neighbor sets; verified before returning.

    Level 0 is the identity on colors, and the recursion preserves the
    nested structure exactly, so each vertex maps to its own view shape.
    """
    domain = build_typed(r, m, d, cap)
    codomain = build_setlocal(r, m, d, cap)

    memo: dict[View, View] = {}

    def h(v: View) -> View:
        got = memo.get(v)
        if got is not None:
            return got
        if v.depth == 0:
            out = View.leaf(SET, v.base_color)
        else:
            out = View.make(SET, h(v.inner), (h(a) for a in v.distinct_children()))
        memo[v] = out
        return out

    hom = HomMap(domain, codomain, {v: h(v) for v in domain.vertices},
                 name=f"typed->setlocal[{r},{m},{d}]")
    report = verify_homomorphism(hom)
    if not report.ok:
        raise ConstructionError(
            f"typed->setlocal verification failed: {len(report.missing_images)} "
            f"missing images, {len(report.broken_edges)} broken edges"
        )
    return hom


def relaxed_to_typed_hom(r: int, m: int, d: int, cap: int = DEFAULT_CAP) -> HomMap:
    """Map the unconstrained family with bound d into the typed family
    with bound (r+1)*d by filling in missing types.

    Each level maps the center recursively and tops up the neighbor set
    with the canonically smallest codomain neighbors realizing the types
    the mapped set misses; the result stays within the (level+1)*d bound.
    Verified before returning.
    """
    domain_levels = build_relaxed_levels(r, m, d, cap)
    typed_levels = [build_typed_levels(i, m, (i + 1) * d, cap)[-1] for i in range(r + 1)]

    maps: list[dict[View, View]] = [{v: v for v in domain_levels[0].vertices}]
    for i in range(r):
        fill_host = typed_levels[i]
        prev_map = maps[i]
        level_map: dict[View, View] = {}
        for v in domain_levels[i + 1].vertices:
            fx = prev_map[v.inner]
            mapped = [prev_map[a] for a in v.distinct_children()]
            have = centers_of(mapped)
            needed = types(fx) - have
            fill = []
            if needed:
                try:
                    nbr = fill_host.neighbor_views(fx)
                except KeyError as exc:
                    raise ConstructionError(
                        f"level-{i} image is not a typed-family vertex"
                    ) from exc
                for t in sorted(needed, key=_type_sort_key):
                    pick = next((w for w in nbr if center(w) == t), None)
                    if pick is None:
                        raise ConstructionError(
                            f"no codomain neighbor of center type {t!r} to fill up"
                        )
                    fill.append(pick)
            image = View.make(SET, fx, mapped + fill)
            if image.child_size > (i + 2) * d:
                raise ConstructionError("fill-up exceeded the (level+1)*d size bound")
            level_map[v] = image
        maps.append(level_map)

    hom = HomMap(domain_levels[r], typed_levels[r], maps[r],
                 name=f"relaxed->typed[{r},{m},{d}]")
    report = verify_homomorphism(hom)
    if not report.ok:
        raise ConstructionError(
            f"relaxed->typed verification failed: {len(report.missing_images)} "
            f"missing images, {len(report.broken_edges)} broken edges"
        )
    return hom


def _type_sort_key(t):
    return b"" if t is BOTTOM else canonical_encode(t)


def graph_to_json(graph: NbhdGraph) -> dict:
    from .views import view_to_json

    return {
        "family": graph.family,
        "m": graph.m,
        "degree_param": graph.degree_param,
        "level": graph.level,
        "variant": graph.variant,
        "vertices": [view_to_json(v) for v in graph.vertices],
        "edges": [[i, j] for i, j in graph.edges()],
    }
