import random

import networkx as nx
import pytest

from geodecomp.cover import verify_cover
from geodecomp.errors import CapExceeded
from geodecomp.graph import build_graph
from geodecomp.oracle import (
    brute_pathwidth,
    brute_treewidth,
    elimination_to_treedecomp,
    elimination_width,
    enumerate_geodesics,
    exact_pathwidth,
    exact_treewidth,
    min_cover_search,
    parallel_oracle,
)
from geodecomp.width import validate_treedecomp, vertex_separation

from conftest import cycle, path_graph, random_graph


def complete(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(h):
    return build_graph(h + 1, [(0, i) for i in range(1, h + 1)])


@pytest.mark.parametrize("h", [1, 3, 6])
def test_star_pathwidth_one(h):
    assert exact_pathwidth(star(h)).value == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graphs(n):
    g = complete(n)
    assert exact_pathwidth(g).value == n - 1 == brute_pathwidth(g).value
    assert exact_treewidth(g).value == n - 1 == brute_treewidth(g).value


def test_cycle_widths():
    assert exact_pathwidth(cycle(6)).value == 2
    assert exact_treewidth(cycle(6)).value == 2


def test_tree_treewidth_one():
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(2, 15)
        g = build_graph(n, [(rng.randrange(i), i) for i in range(1, n)])
        assert exact_treewidth(g).value == 1


def test_caps():
    with pytest.raises(CapExceeded):
        exact_pathwidth(path_graph(5), cap=4)
    with pytest.raises(CapExceeded):
        exact_treewidth(path_graph(5), cap=4)
    with pytest.raises(CapExceeded):
        min_cover_search(path_graph(5), 2, cap=4)


def test_witnesses_reproduce_values():
    rng = random.Random(2)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 12), rng.uniform(0.15, 0.6))
        pw = exact_pathwidth(g)
        assert vertex_separation(g, pw.witness) == pw.value
        tw = exact_treewidth(g)
        assert elimination_width(g, tw.witness) == tw.value
        td = elimination_to_treedecomp(g, tw.witness)
        rep = validate_treedecomp(g, td)
        assert rep.ok and td.width == max(tw.value, 0)
        assert pw.value >= tw.value


def test_treewidth_matches_networkx_upper_bounds():
    from networkx.algorithms.approximation import treewidth_min_degree, treewidth_min_fill_in

    rng = random.Random(4)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 13), 0.4)
        h = nx.Graph(list(g.edges()))
        h.add_nodes_from(range(g.n))
        tw = exact_treewidth(g).value
        assert tw <= treewidth_min_degree(h)[0]
        assert tw <= treewidth_min_fill_in(h)[0]


def test_random_eight_vertex_graphs_match_brute_force():
    rng = random.Random(8)
    for _ in range(30):
        g = random_graph(rng, 8, rng.uniform(0.2, 0.6))
        assert exact_pathwidth(g).value == brute_pathwidth(g).value
        assert exact_treewidth(g).value == brute_treewidth(g).value


def test_geodesic_enumeration_examples():
    assert len(enumerate_geodesics(cycle(6), 0, 3)[0]) == 2
    assert len(enumerate_geodesics(cycle(4), 0, 2)[0]) == 2
    tree = build_graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    assert enumerate_geodesics(tree, 2, 5) == ([[2, 1, 3, 5]], False)


def test_geodesic_enumeration_truncates():
    grid = nx.grid_2d_graph(4, 4)
    idx = {v: i for i, v in enumerate(sorted(grid))}
    g = build_graph(16, [(idx[a], idx[b]) for a, b in grid.edges()])
    paths, cut = enumerate_geodesics(g, 0, 15)
    assert len(paths) == 20 and not cut
    paths, cut = enumerate_geodesics(g, 0, 15, cap=5)
    assert len(paths) == 5 and cut
    assert parallel_oracle(g, (0, 15), [idx[(3, 3)], idx[(3, 2)]], cap=1) is None


def test_parallel_oracle_examples():
    c6 = cycle(6)
    assert parallel_oracle(c6, (0, 3), [1, 2])
    assert parallel_oracle(c6, (0, 3), [0, 5, 4, 3])
    assert parallel_oracle(c6, (0, 3), [5, 0, 1]) is False


def test_min_cover_examples():
    assert min_cover_search(path_graph(5), 3) == [[0, 1, 2, 3, 4]]
    cover = min_cover_search(cycle(6), 4)
    assert len(cover) == 2
    verify_cover(cycle(6), cover, "edge")
    assert min_cover_search(complete(4), 4) is None
    assert len(min_cover_search(complete(4), 4, mode="vertex")) == 2


def test_min_cover_is_minimum():
    rng = random.Random(9)
    for _ in range(30):
        g = random_graph(rng, rng.randint(3, 8), 0.45)
        cover = min_cover_search(g, 4)
        if cover is None:
            continue
        verify_cover(g, cover, "edge")
        if len(cover) > 1:
            assert min_cover_search(g, len(cover) - 1) is None
