import json
import random

import pytest

from geodecomp.cover import verify_cover
from geodecomp.errors import GraphError
from geodecomp.instances import gen_host_geodesics, gen_mirror
from geodecomp.io import (
    SCHEMA_VERSION,
    bundle_paths,
    certificate_from_json,
    decomposition_to_dot,
    dumps,
    format_graph,
    parse_graph,
    read_decomposition,
    read_graph,
    read_json,
    to_dot,
    write_bundle,
    write_graph,
    write_json,
)
from geodecomp.trees import verify_tree_cover
from geodecomp.width import PathDecomposition, TreeDecomposition

from conftest import cycle, random_graph


def test_graph_text_round_trip(tmp_path):
    rng = random.Random(2)
    for i in range(30):
        g = random_graph(rng, rng.randint(0, 15), 0.3)
        assert parse_graph(format_graph(g, ["note"])).edge_set() == g.edge_set()
        path = tmp_path / f"g{i}.graph"
        write_graph(path, g)
        h = read_graph(path)
        assert h.n == g.n and h.edge_set() == g.edge_set()


def test_parse_graph_comments_and_blank_lines():
    g = parse_graph("# c6\n\n6 6\n0 1\n1 2\n2 3\n# mid\n3 4\n4 5\n5 0\n")
    assert g.edge_set() == cycle(6).edge_set()


@pytest.mark.parametrize("text", [
    "",
    "# only a comment\n",
    "3 2\n0 1\n",
    "3 1\n0 x\n",
    "3 1\n0 1 2\n",
    "-1 0\n",
    "3 1\n0 5\n",
    "3 1\n1 1\n",
])
def test_parse_graph_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_json_carries_schema_version(tmp_path):
    text = dumps({"b": 1, "a": [1, 2]})
    obj = json.loads(text)
    assert obj["schema_version"] == SCHEMA_VERSION
    assert list(obj) == sorted(obj)
    write_json(tmp_path / "x.json", {"k": 3})
    assert read_json(tmp_path / "x.json") == {"k": 3, "schema_version": SCHEMA_VERSION}


def test_read_json_errors(tmp_path):
    (tmp_path / "bad.json").write_text("{nope")
    (tmp_path / "list.json").write_text("[1]")
    with pytest.raises(GraphError):
        read_json(tmp_path / "bad.json")
    with pytest.raises(GraphError):
        read_json(tmp_path / "list.json")
    with pytest.raises(GraphError):
        certificate_from_json({"mode": "edge"})


def test_bundle_files_round_trip(tmp_path):
    for b in (gen_host_geodesics("grid:5,5", 3, 1), gen_mirror("random:8", 4)):
        files = write_bundle(b, tmp_path)
        assert files == bundle_paths(tmp_path, b.slug)
        assert files["graph"].name == f"{b.slug}.graph"
        g = read_graph(files["graph"])
        kind, mode, items = certificate_from_json(read_json(files["certificate"]))
        assert kind == b.kind and mode == "edge"
        if kind == "paths":
            verify_cover(g, items, mode)
        else:
            assert verify_tree_cover(g, *items).ok
        prov = read_json(files["provenance"])
        assert prov["generator"] == b.name and prov["seed"] == b.seed


def test_decomposition_file_round_trip(tmp_path):
    pd = PathDecomposition([frozenset({0, 1}), frozenset({1, 2})])
    td = TreeDecomposition([frozenset({0, 1}), frozenset({1, 2}), frozenset({1, 3})], [(0, 1), (0, 2)])
    write_json(tmp_path / "p.json", {"decomposition": pd.to_json()})
    write_json(tmp_path / "t.json", td.to_json())
    p = read_decomposition(tmp_path / "p.json")
    t = read_decomposition(tmp_path / "t.json")
    assert isinstance(p, PathDecomposition) and p.bags == pd.bags
    assert isinstance(t, TreeDecomposition) and t.bags == td.bags and sorted(t.edges) == sorted(td.edges)


def test_dot_output():
    g = cycle(4)
    plain = to_dot(g)
    assert plain.startswith("graph G {") and plain.count(" -- ") == 4
    ranked = to_dot(g, [[0], [1, 3], [2]])
    assert "{ rank=same; 1 3 }" in ranked
    d = decomposition_to_dot(PathDecomposition([frozenset({0, 1, 3}), frozenset({1, 2, 3})]))
    assert 'label="0,1,3"' in d and "b0 -- b1;" in d
