"""Seeded instance generators; each one returns a graph and a certificate it verifies.

Certificates are checked before a bundle is returned, so a bundle that comes
out of here always passes ``verify_cover`` or ``verify_tree_cover``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .cover import verify_cover
from .errors import GraphError
from .graph import INF, Graph, bfs_distances, build_graph, connected_components
from .metric import is_isometric_subgraph
from .trees import Tree, graph_of_trees, tree_from_spec, verify_tree_cover, verify_trees

MAX_ATTEMPTS = 200
REDRAWS = 32


@dataclass
class InstanceBundle:
    name: str
    graph: Graph
    kind: str  # "paths" or "trees"
    mode: str
    paths: list[list[int]] = field(default_factory=list)
    trees: list[Tree] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def slug(self) -> str:
        return f"gen-{self.name}-{self.seed if self.seed is not None else 0}"

    def certificate(self) -> dict:
        if self.kind == "paths":
            return {"mode": self.mode, "paths": [list(p) for p in self.paths]}
        return {"mode": self.mode, "trees": [t.to_json() for t in self.trees]}

    def provenance(self) -> dict:
        out = {"generator": self.name, "params": self.params, "seed": self.seed}
        out.update(self.extra)
        return out


# -- hosts -------------------------------------------------------------------

def _grid(w, h):
    edges = []
    for x in range(w):
        for y in range(h):
            v = x * h + y
            if x + 1 < w:
                edges.append((v, v + h))
            if y + 1 < h:
                edges.append((v, v + 1))
    return build_graph(w * h, edges)


def _cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def _gnp(n, p, rng):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def parse_host(host) -> tuple[str, tuple]:
    """``"grid:4,4"``, ``"gnp:20,0.2"``, ``"cycle:6"`` or an already split tuple."""
    if isinstance(host, str):
        kind, _, arg = host.partition(":")
        vals = tuple(float(x) if "." in x else int(x) for x in arg.split(",") if x)
        return kind, vals
    return host[0], tuple(host[1:])


def make_host(host, rng: random.Random) -> tuple[Graph, int]:
    kind, args = parse_host(host)
    if kind == "grid":
        return _grid(int(args[0]), int(args[1])), 1
    if kind == "cycle":
        return _cycle(int(args[0])), 1
    if kind == "gnp":
        n, p = int(args[0]), float(args[1])
        for attempt in range(1, MAX_ATTEMPTS + 1):
            g = _gnp(n, p, rng)
            if len(connected_components(g)) == 1:
                return g, attempt
        raise GraphError(f"no connected gnp({n}, {p}) sample in {MAX_ATTEMPTS} attempts")
    raise GraphError(f"unknown host {host!r}")


def random_geodesic(g: Graph, s: int, t: int, rng: random.Random) -> list[int]:
    dt = bfs_distances(g, t)
    if dt[s] == INF:
        raise GraphError(f"{s} and {t} are disconnected")
    path = [s]
    while path[-1] != t:
        x = path[-1]
        path.append(rng.choice([w for w in g.adj[x] if dt[w] == dt[x] - 1]))
    return path


def _compact(paths: Sequence[Sequence[int]]) -> tuple[Graph, list[list[int]]]:
    verts = sorted({v for p in paths for v in p})
    idx = {v: i for i, v in enumerate(verts)}
    edges = {tuple(sorted((idx[a], idx[b]))) for p in paths for a, b in zip(p, p[1:])}
    return build_graph(len(verts), sorted(edges)), [[idx[v] for v in p] for p in paths]


def gen_host_geodesics(host, k: int, seed: int, pairs: Sequence[tuple[int, int]] | None = None) -> InstanceBundle:
    """Union of ``k`` random host geodesics; the geodesics stay shortest in the union."""
    rng = random.Random(seed)
    h, attempts = make_host(host, rng)
    paths = []
    for i in range(k):
        if pairs is not None:
            s, t = pairs[i]
        else:
            while True:
                s, t = rng.randrange(h.n), rng.randrange(h.n)
                if s != t:
                    break
        path = random_geodesic(h, s, t, rng)
        # a repeated pair should yield a different geodesic when there is one
        for _ in range(REDRAWS):
            if path not in paths:
                break
            path = random_geodesic(h, s, t, rng)
        paths.append(path)
    g, cert = _compact(paths)
    verify_cover(g, cert, "edge")
    kind, args = parse_host(host)
    return InstanceBundle("host", g, "paths", "edge", cert, params={"host": [kind, *args], "k": k},
                          seed=seed, extra={"attempts": attempts})


def gen_skewer(spine_len: int, piece_lens: Sequence[int] | None = None, end_lens=None, seed: int = 0) -> InstanceBundle:
    """Skewer with ``spine_len`` shared vertices.

    ``piece_lens`` gives the common side length of each of the ``spine_len - 1``
    gaps (1 means a shared edge); ``end_lens`` the two pairs of dangling
    lengths ``((q0, r0), (ql, rl))``, zero meaning absent.  Missing values are
    drawn from ``seed``.
    """
    rng = random.Random(seed)
    if spine_len < 1:
        raise GraphError("spine needs at least one vertex")
    if piece_lens is None:
        piece_lens = [rng.choice([1, 2, 2, 3, 4]) for _ in range(spine_len - 1)]
        if end_lens is None:
            lo = 1 if spine_len == 1 else 0
            end_lens = (tuple(rng.randint(lo, 3) for _ in range(2)), tuple(rng.randint(0, 3) for _ in range(2)))
    if end_lens is None:
        end_lens = ((0, 0), (0, 0))
    piece_lens = list(piece_lens)
    if len(piece_lens) != spine_len - 1 or any(x < 1 for x in piece_lens):
        raise GraphError("need spine_len - 1 piece lengths, each at least 1")
    if any(x < 0 for pair in end_lens for x in pair):
        raise GraphError("end lengths must be non-negative")
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0] - 1

    spine = [new() for _ in range(spine_len)]
    q: list[int] = []
    r: list[int] = []
    (hq, hr), (tq, tr) = end_lens
    q.extend(new() for _ in range(hq))
    r.extend(new() for _ in range(hr))
    for i, length in enumerate(piece_lens):
        q.append(spine[i])
        r.append(spine[i])
        inner_q = [new() for _ in range(length - 1)]
        inner_r = [new() for _ in range(length - 1)]
        q.extend(inner_q)
        r.extend(inner_r)
    q.append(spine[-1])
    r.append(spine[-1])
    q.extend(new() for _ in range(tq))
    r.extend(new() for _ in range(tr))
    if len(q) == 1 or len(r) == 1:
        raise GraphError("each covering path needs at least one edge")
    n = counter[0]
    edges = {tuple(sorted(e)) for p in (q, r) for e in zip(p, p[1:])}
    g = build_graph(n, sorted(edges))
    verify_cover(g, [q, r], "edge")
    return InstanceBundle("skewer", g, "paths", "edge", [q, r],
                          params={"spine_len": spine_len, "piece_lens": piece_lens, "end_lens": [list(e) for e in end_lens]},
                          seed=seed)


def gen_biclique_trees(t: int) -> InstanceBundle:
    """``K_{t,t}`` plus two apexes, each joined to one side; vertex-covered by the two stars."""
    if t < 1:
        raise GraphError("t must be at least 1")
    a, b = 0, 1
    left = list(range(2, t + 2))
    right = list(range(t + 2, 2 * t + 2))
    edges = [(a, x) for x in left] + [(b, y) for y in right] + [(x, y) for x in left for y in right]
    g = build_graph(2 * t + 2, edges)
    stars = [Tree([a] + left, [(a, x) for x in left]), Tree([b] + right, [(b, y) for y in right])]
    for s in stars:
        if not is_isometric_subgraph(g, s.vertices, s.edges):
            raise GraphError("star is not isometric")
    if {v for s in stars for v in s.vertices} != set(range(g.n)):
        raise GraphError("stars do not cover every vertex")
    return InstanceBundle("biclique", g, "trees", "vertex", trees=stars, params={"t": t}, seed=0)


def _glue_copies(base: Tree, k: int, rng: random.Random | None = None) -> tuple[list[Tree], list[dict[int, int]]]:
    leaves = set(base.leaves)
    nxt = max(base.vertices) + 1
    trees = [base]
    maps = [{v: v for v in base.vertices}]
    for _ in range(k - 1):
        inner = [v for v in base.vertices if v not in leaves]
        labels = list(range(nxt, nxt + len(inner)))
        if rng is not None:
            rng.shuffle(labels)
        nxt += len(inner)
        m = {v: v for v in leaves}
        m.update(zip(inner, labels))
        trees.append(Tree([m[v] for v in base.vertices], [(m[x], m[y]) for x, y in base.edges]))
        maps.append(m)
    return trees, maps


def gen_glued_trees(tree_spec: str | Tree, k: int, seed: int = 0) -> InstanceBundle:
    """``k`` copies of a tree with every leaf identified across copies."""
    base = tree_from_spec(tree_spec, seed) if isinstance(tree_spec, str) else tree_spec
    if k < 2:
        raise GraphError("need at least two copies")
    if len(base.leaves) < max(2, k):
        raise GraphError(f"tree needs at least {max(2, k)} leaves")
    base = _dense(base)
    trees, _ = _glue_copies(base, k)
    g = graph_of_trees(trees)
    rep = verify_trees(g, trees)
    if not rep.ok:
        raise GraphError("glued copies do not verify: " + "; ".join(rep.violations))
    return InstanceBundle("glued", g, "trees", "edge", trees=trees,
                          params={"tree": tree_spec if isinstance(tree_spec, str) else "custom", "k": k}, seed=seed)


def _dense(t: Tree) -> Tree:
    idx = {v: i for i, v in enumerate(t.vertices)}
    return Tree(list(range(len(idx))), [(idx[a], idx[b]) for a, b in t.edges])


def gen_mirror(tree_spec: str | Tree, seed: int = 0) -> InstanceBundle:
    """A tree and a copy on fresh internal vertices sharing its leaves; records the isomorphism."""
    rng = random.Random(seed)
    for attempt in range(1, MAX_ATTEMPTS + 1):
        base = tree_from_spec(tree_spec, rng.randrange(1 << 30)) if isinstance(tree_spec, str) else tree_spec
        base = _dense(base)
        if len(base.leaves) < 2:
            if isinstance(tree_spec, str) and tree_spec.startswith("random"):
                continue
            raise GraphError("tree needs at least two leaves")
        trees, maps = _glue_copies(base, 2, rng)
        g = graph_of_trees(trees)
        if verify_tree_cover(g, *trees).ok:
            iota = {str(v): maps[1][v] for v in base.vertices}
            return InstanceBundle("mirror", g, "trees", "edge", trees=trees,
                                  params={"tree": tree_spec if isinstance(tree_spec, str) else "custom"},
                                  seed=seed, extra={"iota": iota, "attempts": attempt})
    raise GraphError(f"no isometric mirror found in {MAX_ATTEMPTS} attempts")


def glue_at_vertex(first: InstanceBundle, second: InstanceBundle, u: int, v: int) -> InstanceBundle:
    """Identify vertex ``u`` of ``first`` with vertex ``v`` of ``second`` (two-tree bundles).

    Gluing at a vertex shared by both trees of each side keeps both unions
    trees and keeps them isometric, since the glue vertex is a cutvertex.
    """
    n1 = first.graph.n
    m = {}
    nxt = n1
    for x in range(second.graph.n):
        if x == v:
            m[x] = u
        else:
            m[x] = nxt
            nxt += 1
    trees = []
    for t1, t2 in zip(first.trees, second.trees):
        trees.append(Tree(t1.vertices + [m[x] for x in t2.vertices], t1.edges + [(m[a], m[b]) for a, b in t2.edges]))
    g = graph_of_trees(trees, nxt)
    rep = verify_tree_cover(g, *trees)
    if not rep.ok:
        raise GraphError("glued compound does not verify: " + "; ".join(rep.violations))
    return InstanceBundle("compound", g, "trees", "edge", trees=trees,
                          params={"parts": [first.slug, second.slug], "glue": [u, v]}, seed=first.seed)


def gen_block_compound(parts: int, seed: int = 0) -> InstanceBundle:
    """Chain of mirror instances glued at shared leaves."""
    rng = random.Random(seed)
    specs = ["random:%d" % rng.randint(3, 7) for _ in range(parts)]
    cur = gen_mirror(specs[0], rng.randrange(1 << 30))
    for spec in specs[1:]:
        nxt = gen_mirror(spec, rng.randrange(1 << 30))
        shared_cur = sorted(set(cur.trees[0].vertices) & set(cur.trees[1].vertices))
        shared_nxt = sorted(set(nxt.trees[0].vertices) & set(nxt.trees[1].vertices))
        cur = glue_at_vertex(cur, nxt, rng.choice(shared_cur), rng.choice(shared_nxt))
    cur.name = "compound"
    cur.params = {"parts": parts, "specs": specs}
    cur.seed = seed
    return cur


def gen_layered(k: int, n: int, seed: int, connected: bool = True) -> tuple[Graph, list[list[int]]]:
    """Random graph with a layering of at most ``k`` edges per boundary.

    With ``connected``, the first layer is a single root, layer sizes stay
    within ``k`` and every later vertex gets a parent in the previous layer.
    """
    rng = random.Random(seed)
    layers: list[list[int]] = []
    v = 0
    cap = k if connected else max(k, 3)
    while v < n:
        size = 1 if connected and not layers else min(rng.randint(1, cap), n - v)
        layers.append(list(range(v, v + size)))
        v += size
    edges = set()
    for a, b in zip(layers, layers[1:]):
        here = set()
        if connected:
            for y in b:
                here.add((rng.choice(a), y))
        budget = rng.randint(len(here), k)
        pool = [(x, y) for x in a for y in b if (x, y) not in here]
        rng.shuffle(pool)
        for e in pool[:max(0, budget - len(here))]:
            here.add(e)
        edges |= here
    return build_graph(n, sorted(edges)), layers
