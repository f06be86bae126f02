"""Neighborhood graph families, accessors, and homomorphisms."""

from itertools import combinations, combinations_with_replacement

import pytest

from colorreduce import (BOTTOM, CapExceededError, HomMap, MULTISET, SET,
                         View, build_local1, build_relaxed, build_setlocal,
                         build_typed, center, chi_exact, mutual_edge,
                         relaxed_to_typed_hom, typed_to_setlocal_hom, types,
                         verify_homomorphism)


def leaf(kind, c):
    return View.leaf(kind, c)


def node(kind, x, children):
    return View.make(kind, leaf(kind, x), [leaf(kind, c) for c in children])


def oracle_local1_count(m, delta, multiset):
    """Direct enumeration, independent of the builder."""
    total = 0
    for x in range(1, m + 1):
        others = [c for c in range(1, m + 1) if c != x]
        chooser = combinations_with_replacement if multiset else combinations
        for k in range(delta + 1):
            total += sum(1 for _ in chooser(others, k))
    return total


def test_local1_counts():
    assert oracle_local1_count(3, 2, True) == 18
    assert build_local1(3, 2, MULTISET).n_vertices == 18
    assert oracle_local1_count(3, 2, False) == 12
    assert build_local1(3, 2, SET).n_vertices == 12


def test_local1_triangle_edges():
    g = build_local1(3, 2, SET)
    tri = [node(SET, 1, [2, 3]), node(SET, 2, [1, 3]), node(SET, 3, [1, 2])]
    idx = [g.vertex_index(v) for v in tri]
    for i, a in enumerate(idx):
        for b in idx[i + 1 :]:
            assert b in g.adjacency[a]


def test_local1_cap_exceeded_names_projection():
    with pytest.raises(CapExceededError) as err:
        build_local1(50, 10, MULTISET, cap=1000)
    assert err.value.projected > 1000


def test_relaxed_and_typed_base_cases():
    for build in (build_relaxed, build_typed):
        g = build(0, 4, 2)
        assert g.n_vertices == 4
        assert g.n_edges == 6  # complete graph


def test_relaxed_level1_equals_local1_set():
    a = build_relaxed(1, 3, 2)
    b = build_local1(3, 2, SET)
    assert a.vertices == b.vertices
    assert a.adjacency == b.adjacency


def test_typed_level1_excludes_empty_sets():
    g = build_typed(1, 3, 2)
    assert g.n_vertices == 9
    assert all(v.child_size >= 1 for v in g.vertices)


def test_typed_vertices_subset_of_relaxed_with_induced_edges():
    nt = build_relaxed(2, 3, 2)
    ntilde = build_typed(2, 3, 2)
    assert set(ntilde.vertices) <= set(nt.vertices)
    nt_edges = {frozenset((nt.vertices[i], nt.vertices[j])) for i, j in nt.edges()}
    for i, j in ntilde.edges():
        assert frozenset((ntilde.vertices[i], ntilde.vertices[j])) in nt_edges
    # restriction is induced: any relaxed edge between typed vertices survives
    typed_set = set(ntilde.vertices)
    for i, j in nt.edges():
        u, v = nt.vertices[i], nt.vertices[j]
        if u in typed_set and v in typed_set:
            assert ntilde.vertex_index(v) in ntilde.adjacency[ntilde.vertex_index(u)]


def test_edge_rule_symmetry_and_same_center_non_adjacency():
    for g in (build_local1(4, 2, MULTISET), build_relaxed(2, 3, 2), build_setlocal(2, 3, 2)):
        for i, j in g.edges():
            u, v = g.vertices[i], g.vertices[j]
            assert mutual_edge(u, v) == mutual_edge(v, u)
            if g.level >= 1:
                assert center(u) is not center(v)


def test_setlocal_level_zero_is_clique():
    g = build_setlocal(0, 5, 3)
    assert g.n_vertices == 5 and g.n_edges == 10


def test_setlocal_level1_includes_empty_views():
    g = build_setlocal(1, 3, 2)
    assert g.n_vertices == 12
    empties = [v for v in g.vertices if v.child_size == 0]
    assert len(empties) == 3
    # isolated-node views are never co-realizable at an edge
    for v in empties:
        assert g.adjacency[g.vertex_index(v)] == ()


def test_setlocal_monotone_in_delta():
    small = build_setlocal(1, 4, 2)
    large = build_setlocal(1, 4, 3)
    assert set(small.vertices) <= set(large.vertices)


def oracle_setlocal_recursive(r, m, delta):
    """Level-by-level characterization: level 1 is unconstrained; level
    i+1 >= 2 keeps (x, A) iff the children of x are exactly the centers
    of A.  Edges by mutual membership.  Independent of tree enumeration."""
    vertices = [leaf(SET, c) for c in range(1, m + 1)]
    adj = {v: {u for u in vertices if u is not v} for v in vertices}
    for level in range(1, r + 1):
        nxt = []
        for x in vertices:
            nbrs = sorted(adj[x], key=lambda v: v.digest)
            for k in range(min(delta, len(nbrs)) + 1):
                for combo in combinations(nbrs, k):
                    if level >= 2 and x.child_lookup != frozenset(c.inner for c in combo):
                        continue
                    nxt.append(View.make(SET, x, combo))
        vertices = nxt
        adj = {
            v: {u for u in vertices if mutual_edge(u, v)}
            for v in vertices
        }
    edges = set()
    for v, nbrs in adj.items():
        for u in nbrs:
            edges.add(frozenset((u, v)))
    return set(vertices), edges


def test_setlocal_matches_recursive_oracle():
    for r, m, delta in ((1, 3, 2), (2, 3, 2), (1, 4, 2), (2, 4, 2)):
        built = build_setlocal(r, m, delta)
        vertices, edges = oracle_setlocal_recursive(r, m, delta)
        assert set(built.vertices) == vertices
        built_edges = {
            frozenset((built.vertices[i], built.vertices[j])) for i, j in built.edges()
        }
        assert built_edges == edges


def test_center_and_types_accessors():
    v = node(SET, 1, [2, 3])
    assert center(v) is leaf(SET, 1)
    assert types(leaf(SET, 1)) == frozenset({BOTTOM})
    assert center(leaf(SET, 5)) is BOTTOM
    a = {node(SET, 1, [2]), node(SET, 1, [3])}
    assert {center(x) for x in a} == {leaf(SET, 1)}


def test_hom_h_level_zero_identity():
    hom = typed_to_setlocal_hom(0, 3, 2)
    assert hom.verified
    assert all(hom.mapping[v] is v for v in hom.domain.vertices)


def test_hom_h_level1_bijection_onto_nonempty():
    hom = typed_to_setlocal_hom(1, 3, 2)
    assert hom.verified
    image = set(hom.mapping.values())
    assert len(image) == 9
    nonempty = {v for v in hom.codomain.vertices if v.child_size >= 1}
    assert image == nonempty


@pytest.mark.parametrize("r,m,d", [(1, 3, 2), (1, 4, 2), (2, 3, 2)])
def test_hom_h_verified(r, m, d):
    hom = typed_to_setlocal_hom(r, m, d)
    report = verify_homomorphism(hom)
    assert report.ok and hom.verified


def test_hom_f_level_zero_identity():
    hom = relaxed_to_typed_hom(0, 3, 1)
    assert hom.verified
    assert all(hom.mapping[v] is v for v in hom.domain.vertices)


def test_hom_f_no_fill_up_needed():
    hom = relaxed_to_typed_hom(1, 3, 1)
    v = node(SET, 1, [2])
    assert hom.mapping[v] is v  # (1,{2}) keeps its shape in the typed family


def test_hom_f_fills_empty_sets():
    hom = relaxed_to_typed_hom(1, 3, 1)
    v = View.make(SET, leaf(SET, 2), [])
    image = hom.mapping[v]
    assert image.child_size == 1  # one neighbor added to realize the bottom type
    assert image.inner is leaf(SET, 2)


@pytest.mark.parametrize("r,m,d", [(1, 3, 1), (1, 4, 2)])
def test_hom_f_verified(r, m, d):
    hom = relaxed_to_typed_hom(r, m, d)
    report = verify_homomorphism(hom)
    assert report.ok and hom.verified


def test_verify_reports_membership_violations():
    nt = build_relaxed(1, 3, 2)
    ntilde = build_typed(1, 3, 2)
    hom = HomMap(nt, ntilde, {v: v for v in nt.vertices}, name="identity")
    report = verify_homomorphism(hom)
    assert len(report.missing_images) == 3  # the empty-set vertices
    assert not hom.verified


def test_verify_reports_edge_violations():
    g = build_relaxed(1, 3, 2)
    target = build_relaxed(1, 3, 2)
    const = g.vertices[g.vertex_index(View.make(SET, leaf(SET, 1), [leaf(SET, 2)]))]
    hom = HomMap(g, target, {v: const for v in g.vertices}, name="constant")
    report = verify_homomorphism(hom)
    assert report.broken_edges  # a loop is not an edge
    assert not hom.verified


def test_chi_monotone_along_homomorphisms():
    pairs = [typed_to_setlocal_hom(1, 3, 2), relaxed_to_typed_hom(1, 3, 1)]
    for hom in pairs:
        lo = chi_exact(hom.domain)
        hi = chi_exact(hom.codomain)
        assert lo.exact and hi.exact
        assert lo.lower <= hi.lower
