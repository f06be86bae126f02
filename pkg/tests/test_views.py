"""View engine: extraction, canonical encoding, truncation, erasure."""

import random

import pytest

from colorreduce import (MULTISET, SET, ColoredGraph, View, canonical_decode,
                         canonical_encode, erase_multiplicities, extract_view,
                         random_colored_tree, truncate, view_from_json,
                         view_to_json)


def path3():
    return ColoredGraph.from_edges(3, [(0, 1), (1, 2)], [1, 2, 3], 3, 2)


def star3():
    # center color 1, three leaves all color 2
    return ColoredGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)], [1, 2, 2, 2], 2, 3)


def leaf(kind, c):
    return View.leaf(kind, c)


def test_extract_path_center():
    v = extract_view(path3(), 1, 1, SET)
    expected = View.make(SET, leaf(SET, 2), [leaf(SET, 1), leaf(SET, 3)])
    assert v is expected


def test_extract_star_set_collapses_duplicates():
    v_set = extract_view(star3(), 0, 1, SET)
    assert v_set is View.make(SET, leaf(SET, 1), [leaf(SET, 2)])
    v_multi = extract_view(star3(), 0, 1, MULTISET)
    assert v_multi is View.make(MULTISET, leaf(MULTISET, 1), [(leaf(MULTISET, 2), 3)])


def test_extract_round_zero_is_own_color():
    for node in range(3):
        v = extract_view(path3(), node, 0, SET)
        assert v.depth == 0 and v.base_color == path3().psi[node]


def test_encoding_set_order_independent():
    a = View.make(SET, leaf(SET, 1), [leaf(SET, 2), leaf(SET, 3)])
    b = View.make(SET, leaf(SET, 1), [leaf(SET, 3), leaf(SET, 2)])
    assert canonical_encode(a) == canonical_encode(b)
    assert a is b


def test_encoding_multiplicity_distinguishes():
    one = View.make(MULTISET, leaf(MULTISET, 1), [leaf(MULTISET, 2)])
    two = View.make(MULTISET, leaf(MULTISET, 1), [(leaf(MULTISET, 2), 2)])
    assert canonical_encode(one) != canonical_encode(two)


def test_encoding_kind_distinguishes():
    s = View.make(SET, leaf(SET, 1), [leaf(SET, 2)])
    m = View.make(MULTISET, leaf(MULTISET, 1), [leaf(MULTISET, 2)])
    assert canonical_encode(s) != canonical_encode(m)


def test_encode_decode_roundtrip_random():
    rng = random.Random(0)
    for _ in range(200):
        g = random_colored_tree(rng.randrange(1, 12), 3, 5, seed=rng.randrange(10**6))
        kind = rng.choice([SET, MULTISET])
        v = extract_view(g, rng.randrange(g.n), rng.randrange(0, 4), kind)
        assert canonical_decode(canonical_encode(v)) is v


def test_truncate_examples():
    v = View.make(SET, leaf(SET, 2), [leaf(SET, 1), leaf(SET, 3)])
    assert truncate(v, 0) is leaf(SET, 2)
    assert truncate(v, v.depth) is v
    with pytest.raises(ValueError):
        truncate(v, 2)


def test_truncation_commutes_with_extraction():
    rng = random.Random(1)
    checked = 0
    while checked < 1000:
        g = random_colored_tree(rng.randrange(2, 14), 3, 5, seed=rng.randrange(10**6))
        kind = rng.choice([SET, MULTISET])
        node = rng.randrange(g.n)
        r = rng.randrange(0, 4)
        rp = rng.randrange(0, r + 1)
        full = extract_view(g, node, r, kind)
        assert truncate(full, rp) is extract_view(g, node, rp, kind)
        checked += 1


def test_inner_is_truncation():
    g = random_colored_tree(10, 3, 4, seed=3)
    v = extract_view(g, 4, 3, SET)
    assert v.inner is truncate(v, 2)
    assert all(c.depth == v.depth - 1 for c in v.distinct_children())


def test_erasure_matches_set_extraction():
    rng = random.Random(2)
    for _ in range(300):
        g = random_colored_tree(rng.randrange(2, 12), 4, 4, seed=rng.randrange(10**6))
        node = rng.randrange(g.n)
        r = rng.randrange(0, 4)
        multi = extract_view(g, node, r, MULTISET)
        assert erase_multiplicities(multi) is extract_view(g, node, r, SET)


def test_empty_children_are_legal():
    g = ColoredGraph.from_edges(1, [], [2], 3, 2)
    v = extract_view(g, 0, 3, SET)
    assert v.depth == 3 and not v.children
    assert v.inner.depth == 2 and not v.inner.children


def test_json_roundtrip_both_kinds():
    g = star3()
    for kind in (SET, MULTISET):
        v = extract_view(g, 0, 2, kind)
        data = view_to_json(v)
        assert view_from_json(data, kind) is v
    # depth-0 views serialize as bare integers
    assert view_to_json(leaf(SET, 7)) == 7
    # multiset children carry [view, count] pairs
    data = view_to_json(extract_view(g, 0, 1, MULTISET))
    assert data["children"] == [[2, 3]]
