"""Refuters and source machinery against the counting arguments."""

import pytest

from colorreduce import (MULTISET, SET, ParameterError, View, build_local1,
                         build_relaxed_levels, class_defect,
                         defective_sources, is_independent,
                         lower_bound_rounds, orientation_of, refute_relaxed,
                         source_chain, sources, uncovered_clique_step,
                         uncovered_defective_node, uncovered_local1_node)
from colorreduce.bounds import (random_defective_classes,
                                random_independent_sets, random_relaxed_class)


def leaf(kind, c):
    return View.leaf(kind, c)


def node(kind, x, children):
    return View.make(kind, leaf(kind, x), [leaf(kind, c) for c in children])


# --- orientations ----------------------------------------------------------

def test_orientation_demanded_and_default():
    o = orientation_of([node(MULTISET, 1, [2])], 3)
    assert o.oriented(1, 2) and not o.oriented(2, 1)
    # untouched pairs default low -> high
    assert o.oriented(1, 3) and o.oriented(2, 3)


def test_orientation_empty_class_all_defaults():
    o = orientation_of([], 3)
    assert o.oriented(1, 2) and o.oriented(1, 3) and o.oriented(2, 3)


def test_orientation_rejects_dependent_class():
    with pytest.raises(ParameterError):
        orientation_of([node(MULTISET, 1, [2]), node(MULTISET, 2, [1])], 3)


# --- sources ----------------------------------------------------------------

def test_sources_examples():
    levels = build_relaxed_levels(0, 3, 2)
    k3 = levels[0]
    I = [node(SET, 1, [2]), node(SET, 1, [3])]
    src = sources(I, k3)
    assert src == [leaf(SET, 1)]
    assert sources([node(SET, 1, [2])], k3) == []


def test_sources_vacuous_when_restricted_neighborhood_empty():
    levels = build_relaxed_levels(0, 3, 2)
    k3 = levels[0]
    x = leaf(SET, 2)
    src = sources([], k3, within={x})
    assert x in src  # no neighbors inside W: vacuously a source


def test_source_chain_single_step():
    levels = build_relaxed_levels(0, 3, 2)
    I = [node(SET, 1, [2]), node(SET, 1, [3])]
    chain = source_chain(I, levels[:1])
    assert chain[0] == frozenset(I)
    assert chain[1] == frozenset({leaf(SET, 1)})


def test_source_chain_empty_class():
    # Sources of the empty class are exactly the vacuous ones: vertices
    # with no neighbors at all.  Level 0 is a clique, so none survive
    # there; level 1 keeps its isolated empty-set vertices.
    levels = build_relaxed_levels(1, 3, 2)
    chain = source_chain([], levels[:2])
    assert chain[0] == frozenset()
    assert chain[1] == frozenset(v for v in levels[1].vertices if v.child_size == 0)
    assert chain[2] == frozenset()


def test_source_chain_rejects_dependent_class():
    levels = build_relaxed_levels(0, 3, 2)
    bad = [node(SET, 1, [2]), node(SET, 2, [1])]
    with pytest.raises(ParameterError):
        source_chain(bad, levels[:1])


def test_source_chains_on_random_maximal_sets():
    # Chains of 200 random maximal independent sets of the level-2 family
    # must pass the built-in independence verification at every level.
    levels = build_relaxed_levels(2, 3, 2)
    top = levels[2]
    for i, cls in enumerate(random_independent_sets(top, 200, seed=17)):
        chain = source_chain(cls, levels[:2])
        assert len(chain) == 3
        assert is_independent(chain[1]) and is_independent(chain[2])


# --- one-round refuter ------------------------------------------------------

def test_uncovered_node_small_example():
    cls = [node(MULTISET, 1, [2, 3])]
    out = uncovered_local1_node([cls], 3, 2)
    assert out.child_size < 2
    assert out not in set(cls)


def test_uncovered_node_respects_preconditions():
    with pytest.raises(ParameterError):
        uncovered_local1_node([[], [], [], [], []], 7, 4)  # c = 5 > 4
    with pytest.raises(ParameterError):
        uncovered_local1_node([[]], 2, 2)  # m too small


def test_uncovered_node_on_greedy_families(host_7_4):
    host = host_7_4
    for seed in range(30):
        classes = random_independent_sets(host, 4, seed=seed)
        out = uncovered_local1_node(classes, 7, 4)
        # valid vertex: center color, distinct neighbors, size < delta
        assert 1 <= out.inner.base_color <= 7
        assert out.child_size <= 3
        assert all(c.base_color != out.inner.base_color for c in out.distinct_children())
        for cls in classes:
            assert out not in cls


def test_uncovered_node_against_real_coloring_classes(host_7_4):
    # adversarial family: the largest color classes of an actual proper
    # coloring cover far more vertices than random greedy sets do
    from colorreduce import dsatur
    from colorreduce.chromatic import as_adjacency

    for m, delta in ((5, 3), (7, 4)):
        host = host_7_4 if (m, delta) == (7, 4) else build_local1(m, delta, MULTISET)
        colors, used = dsatur(as_adjacency(host))
        by_color = {}
        for i, c in enumerate(colors):
            by_color.setdefault(c, []).append(host.vertices[i])
        cap = delta * delta // 4
        classes = sorted(by_color.values(), key=len, reverse=True)[:cap]
        node = uncovered_local1_node(classes, m, delta)
        covered = sum(len(cl) for cl in classes)
        assert covered > host.n_vertices // 2  # genuinely adversarial
        for cls in classes:
            assert node not in set(cls)


# --- clique step and the recursive refuter ----------------------------------

def test_clique_step_empty_family():
    levels = build_relaxed_levels(0, 5, 3)
    T = [leaf(SET, 1), leaf(SET, 2)]
    out = uncovered_clique_step(T, [], levels[0], p=1, d=1, bound=3)
    assert len(out) == 1
    assert out[0].inner in set(T)


def test_clique_step_output_is_clique():
    levels = build_relaxed_levels(0, 7, 4)
    T = [leaf(SET, c) for c in (1, 2, 3, 4)]
    out = uncovered_clique_step(T, [], levels[0], p=2, d=2, bound=4)
    assert len(out) == 2
    from colorreduce import mutual_edge

    assert mutual_edge(out[0], out[1])


def test_clique_step_size_condition():
    levels = build_relaxed_levels(0, 7, 4)
    T = [leaf(SET, c) for c in (1, 2, 3)]
    with pytest.raises(ParameterError):
        uncovered_clique_step(T, [frozenset()] * 9, levels[0], p=2, d=1, bound=4)


def test_refute_relaxed_one_round():
    levels = build_relaxed_levels(0, 7, 4)
    for seed in range(20):
        classes = [random_relaxed_class(levels, 25, seed=seed * 10 + k, bound=4)
                   for k in range(4)]
        out = refute_relaxed(classes, 1, 7, 4, levels=levels)
        assert out.depth == 1 and out.child_size <= 4
        for cls in classes:
            assert out not in cls


def test_refute_relaxed_two_rounds():
    levels = build_relaxed_levels(1, 5, 4)
    for seed in range(10):
        classes = [random_relaxed_class(levels, 40, seed=seed * 7 + k, bound=4)
                   for k in range(2)]
        out = refute_relaxed(classes, 2, 5, 4, levels=levels)
        assert out.depth == 2
        for cls in classes:
            assert out not in cls


def test_refute_relaxed_divisibility_requirement():
    with pytest.raises(ParameterError):
        refute_relaxed([frozenset()], 2, 9, 5)  # 5 not divisible by 2r = 4


def test_refute_relaxed_class_count_precondition():
    levels = build_relaxed_levels(0, 7, 4)
    with pytest.raises(ParameterError):
        refute_relaxed([frozenset()] * 5, 1, 7, 4, levels=levels)


# --- defective machinery -----------------------------------------------------

def color_source_oracle(cls, m):
    """Definition-level check on colors: x is a source iff every other
    color appears in some member centered at x."""
    out = set()
    for x in range(1, m + 1):
        covered = set()
        for member in cls:
            if member.inner.base_color == x:
                covered.update(c.base_color for c in member.distinct_children())
        if covered >= set(range(1, m + 1)) - {x}:
            out.add(x)
    return out


def test_defective_sources_zero_defect_matches_plain_sources():
    host = build_local1(5, 3, SET)
    levels = build_relaxed_levels(0, 5, 3)
    for seed in range(20):
        (cls,) = random_independent_sets(host, 1, seed=seed)
        plain = {v.base_color for v in sources(cls, levels[0])}
        assert set(defective_sources(cls, 5, 0)) == plain == color_source_oracle(cls, 5)


def test_defective_sources_zero_defect_multiset_oracle():
    host = build_local1(5, 3, MULTISET)
    for seed in range(20):
        (cls,) = random_independent_sets(host, 1, seed=seed)
        assert set(defective_sources(cls, 5, 0)) == color_source_oracle(cls, 5)


def test_defective_sources_clique_bound():
    # induced degree <= d forces at most d+1 sources inside the color clique
    for seed in range(50):
        (cls,) = random_defective_classes(5, 3, 1, count=1, seed=seed)
        assert class_defect(cls) <= 1
        assert len(defective_sources(cls, 5, 1)) <= 2


def test_uncovered_defective_single_class():
    for seed in range(20):
        (cls,) = random_defective_classes(32, 4, 1, count=1, seed=seed)
        out = uncovered_defective_node([cls], 32, 4, 1)
        assert out.child_size <= 3
        assert all(out is not member for member in cls)


def test_uncovered_defective_rejects_overdefective_class():
    bad = [node(MULTISET, 1, [2, 3]), node(MULTISET, 2, [1, 3]), node(MULTISET, 3, [1, 2])]
    with pytest.raises(ParameterError):
        uncovered_defective_node([bad], 32, 4, 0)


def test_uncovered_defective_preconditions():
    with pytest.raises(ParameterError):
        uncovered_defective_node([[]], 10, 4, 1)  # m below 2*delta^2


# --- headline arithmetic ------------------------------------------------------

def test_lower_bound_examples():
    rep = lower_bound_rounds(1024, 1, 0)
    assert rep.rounds == 4
    assert abs(rep.neighbor_bound - 128.0) < 1e-9
    assert rep.threshold_ok
    assert lower_bound_rounds(16, 1, 0).rounds == 1


def test_lower_bound_monotonicity():
    rounds = [lower_bound_rounds(d, 1, 0).rounds for d in range(16, 8000, 400)]
    assert all(a <= b for a, b in zip(rounds, rounds[1:]))
    etas = [lower_bound_rounds(4096, 1, e).rounds for e in
            [i / 20 for i in range(20)]]
    assert all(a >= b for a, b in zip(etas, etas[1:]))


def test_lower_bound_parameter_errors():
    with pytest.raises(ParameterError):
        lower_bound_rounds(16, 1, 1.0)
    with pytest.raises(ParameterError):
        lower_bound_rounds(16, 0, 0.5)
