import itertools
import random

import pytest
from hypothesis import given, settings

from geodecomp.errors import GraphError
from geodecomp.graph import build_graph, connected_components, induced_subgraph
from geodecomp.instances import gen_layered
from geodecomp.oracle import brute_pathwidth, exact_pathwidth
from geodecomp.width import (
    PathDecomposition,
    TreeDecomposition,
    decomposition_from_json,
    glue,
    layering_pathdecomp,
    layering_to_order,
    normalize,
    order_to_pathdecomp,
    pad_with,
    validate_layering,
    validate_pathdecomp,
    validate_treedecomp,
    vertex_separation,
)

from conftest import cycle, graphs, path_graph, random_graph

C6 = cycle(6)
C6_LAYERS = [[0], [1, 5], [2, 4], [3]]


def test_validate_layering_examples():
    assert validate_layering(C6, C6_LAYERS, 2).ok
    rep = validate_layering(C6, C6_LAYERS, 1)
    assert not rep.ok and rep.violations[0].startswith("boundary")
    rep = validate_layering(C6, [[0, 1], [5, 2, 4], [3]], 6)
    assert any(v.startswith("independence") for v in rep.violations)
    rep = validate_layering(C6, [[0], [1, 5], [2, 4]], 6)
    assert any(v.startswith("partition") for v in rep.violations)
    rep = validate_layering(path_graph(3), [[0], [2], [1]])
    assert not rep.ok


def test_layering_to_order_examples():
    order = layering_to_order(C6, C6_LAYERS)
    assert order == [0, 1, 5, 2, 4, 3]
    assert vertex_separation(C6, order) == 2
    assert layering_to_order(path_graph(2), [[0], [1]]) == [0, 1]
    assert layering_to_order(path_graph(3), [[0], [1], [2]]) == [0, 1, 2]
    assert vertex_separation(path_graph(3), [0, 1, 2]) == 1
    with pytest.raises(GraphError):
        layering_to_order(C6, [[0, 1], [2, 3, 4, 5]])


def test_three_groups_inside_a_layer():
    # layer 1 holds 3 (left only), 2 (both sides) and 1 (right only)
    g = build_graph(6, [(0, 3), (0, 2), (2, 4), (1, 5)])
    assert layering_to_order(g, [[0], [1, 2, 3], [4, 5]]) == [0, 3, 2, 1, 4, 5]


def test_isolated_vertices_trail():
    g = build_graph(4, [(0, 1)])
    order = layering_to_order(g, [[0, 2], [1, 3]])
    assert order == [0, 1, 2, 3]
    d = order_to_pathdecomp(g, order)
    assert d.bags[-2:] == (frozenset({2}), frozenset({3}))


def test_vertex_separation_examples():
    assert vertex_separation(path_graph(5), range(5)) == 1
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert vertex_separation(star, [0, 1, 2, 3]) == 1
    k3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert all(vertex_separation(k3, o) == 2 for o in itertools.permutations(range(3)))


def test_order_to_pathdecomp_examples():
    d = order_to_pathdecomp(path_graph(3), [0, 1, 2])
    assert list(map(set, d.bags)) == [{0, 1}, {1, 2}] and d.width == 1
    k3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert list(map(set, order_to_pathdecomp(k3, [0, 1, 2]).bags)) == [{0, 1, 2}]
    d = order_to_pathdecomp(build_graph(1, []), [0])
    assert d.bags == (frozenset({0}),) and d.width == 0


def test_validator_examples():
    p = path_graph(3)
    assert validate_pathdecomp(p, PathDecomposition([{0, 1}, {1, 2}])).ok
    rep = validate_pathdecomp(p, PathDecomposition([{0, 1}, {2}]))
    assert any(v.startswith("edge uncovered") for v in rep.violations)
    rep = validate_pathdecomp(p, PathDecomposition([{0, 1}, {1, 2}, {0, 2}]))
    assert any(v.startswith("connectivity") for v in rep.violations)
    rep = validate_pathdecomp(p, PathDecomposition([{0, 1}]))
    assert any(v.startswith("vertex coverage") for v in rep.violations)
    td = TreeDecomposition([{0, 1}, {1, 2}, {1, 3}], [(0, 1), (0, 2)])
    star = build_graph(4, [(0, 1), (1, 2), (1, 3)])
    assert validate_treedecomp(star, td).ok
    bad = TreeDecomposition([{0, 1}, {2}, {1, 2}], [(0, 1), (1, 2)])
    assert any(v.startswith("connectivity") for v in validate_treedecomp(p, bad).violations)
    cyc = TreeDecomposition([{0, 1}, {1, 2}, {0, 2}], [(0, 1), (1, 2), (2, 0)])
    assert any(v.startswith("tree") for v in validate_treedecomp(build_graph(3, [(0, 1), (1, 2)]), cyc).violations)


def test_pad_and_glue_examples():
    d = PathDecomposition([{0}])
    assert pad_with(d, {1}).bags == (frozenset({0, 1}),)
    assert pad_with(d, set()) == d
    d1 = PathDecomposition([{0}, {0, 1}])
    d2 = PathDecomposition([{0, 1}, {1, 2}])
    assert glue(d1, d2, {0, 1}).bags == (frozenset({0}), frozenset({0, 1}), frozenset({1, 2}))
    assert glue(d1, PathDecomposition([{0, 1}]), {0, 1}) == d1
    with pytest.raises(GraphError):
        glue(d1, d2, {1, 2})


def test_json_round_trip():
    d = PathDecomposition([{0, 1}, {1, 2}])
    assert decomposition_from_json(d.to_json()) == d
    t = d.as_tree()
    assert "tree_edges" in t.to_json() and "tree_edges" not in d.to_json()
    assert decomposition_from_json(t.to_json()) == t


def _k_layered(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 5)
    return (k,) + gen_layered(k, rng.randint(2, 40), seed)


@pytest.mark.parametrize("seed", range(200))
def test_layering_gives_width_at_most_k(seed):
    k, g, layers = _k_layered(seed)
    assert validate_layering(g, layers, k).ok
    assert len(connected_components(g)) == 1
    order = layering_to_order(g, layers)
    assert vertex_separation(g, order) <= k
    d = order_to_pathdecomp(g, order)
    assert validate_pathdecomp(g, d).ok and d.width == vertex_separation(g, order)
    pinned = layering_pathdecomp(g, layers)
    assert validate_pathdecomp(g, pinned).ok and pinned.width <= k
    if len(layers) > 1:
        assert pinned.bags[0] == frozenset(layers[0])
        assert pinned.bags[-1] == frozenset(layers[-1])


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=9))
def test_order_decomposition_width_matches_separation(g):
    rng = random.Random(g.n * 31 + g.m)
    order = list(range(g.n))
    rng.shuffle(order)
    d = order_to_pathdecomp(g, order, normalized=False)
    assert validate_pathdecomp(g, d).ok
    assert d.width == max(vertex_separation(g, order), 0 if g.n else -1)
    assert validate_pathdecomp(g, PathDecomposition(normalize(d.bags))).ok


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_pad_with_preserves_validity(g):
    X = set(range(0, g.n, 3))
    rest = [v for v in range(g.n) if v not in X]
    h, _, back = induced_subgraph(g, rest)
    d = exact_pathwidth(h).witness
    dh = order_to_pathdecomp(h, d)
    lifted = PathDecomposition([[back[v] for v in b] for b in dh.bags])
    padded = pad_with(lifted, X)
    assert validate_pathdecomp(g, padded).ok
    assert padded.width <= max(dh.width, 0) + len(X)


def test_min_order_separation_is_pathwidth_small():
    rng = random.Random(3)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 7), rng.uniform(0.2, 0.7))
        best = min(vertex_separation(g, o) for o in itertools.permutations(range(g.n)))
        assert best == brute_pathwidth(g).value == exact_pathwidth(g).value
