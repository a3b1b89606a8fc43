"""Metric predicates: shortest, vertical and parallel paths, isometric subgraphs.

Paths are plain sequences of vertex ids.  "Parallel" is always relative to a
fixed base geodesic, captured by a :class:`BaseAnchor` that holds the BFS
distance tables from both of its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import PathError
from .graph import INF, Graph, bfs_distances, bfs_tree, tree_path

Path = Sequence[int]


def check_path(g: Graph, p: Path) -> None:
    """Raise :class:`PathError` unless ``p`` is a non-empty simple path of ``g``."""
    if len(p) == 0:
        raise PathError("empty path")
    for v in p:
        if not 0 <= v < g.n:
            raise PathError(f"vertex {v} outside the graph")
    if len(set(p)) != len(p):
        raise PathError(f"path repeats a vertex: {list(p)}")
    for u, v in zip(p, p[1:]):
        if not g.has_edge(u, v):
            raise PathError(f"non-adjacent consecutive vertices {u}, {v}")


def is_path(g: Graph, p: Path) -> bool:
    try:
        check_path(g, p)
    except PathError:
        return False
    return True


def path_edges(p: Path) -> list[tuple[int, int]]:
    return [(u, v) if u < v else (v, u) for u, v in zip(p, p[1:])]


def is_shortest_path(g: Graph, p: Path, dist_from_first: Sequence[int] | None = None) -> bool:
    check_path(g, p)
    if dist_from_first is None:
        dist_from_first = bfs_distances(g, p[0])
    return dist_from_first[p[-1]] == len(p) - 1


def is_vertical(g: Graph, p: Path, u: int, dist_from_u: Sequence[int] | None = None) -> bool:
    """True iff the vertices of ``p`` have pairwise distinct distances from ``u``."""
    check_path(g, p)
    if dist_from_u is None:
        dist_from_u = bfs_distances(g, u)
    levels = [dist_from_u[v] for v in p]
    if INF in levels:
        return False
    return len(set(levels)) == len(levels)


@dataclass(frozen=True)
class BaseAnchor:
    """Endpoints ``a1``, ``b1`` of the base geodesic and the distance tables from each."""

    a1: int
    b1: int
    dist_a1: tuple[int, ...] = field(repr=False)
    dist_b1: tuple[int, ...] = field(repr=False)
    parent_a1: tuple[int, ...] = field(repr=False)
    parent_b1: tuple[int, ...] = field(repr=False)

    @property
    def base_len(self) -> int:
        return self.dist_a1[self.b1]

    def on_geodesic(self, v: int) -> bool:
        """True iff ``v`` lies on some shortest ``a1``-``b1`` path."""
        da = self.dist_a1[v]
        return da != INF and da + self.dist_b1[v] == self.base_len

    def path_from_a1(self, v: int) -> list[int]:
        return tree_path(self.parent_a1, self.a1, v)

    def path_to_b1(self, v: int) -> list[int]:
        return tree_path(self.parent_b1, self.b1, v)[::-1]


def make_anchor(g: Graph, a1: int, b1: int) -> BaseAnchor:
    da, pa = bfs_tree(g, a1)
    db, pb = bfs_tree(g, b1)
    if da[b1] == INF:
        raise PathError(f"base endpoints {a1}, {b1} are disconnected")
    return BaseAnchor(a1, b1, tuple(da), tuple(db), tuple(pa), tuple(pb))


def anchor_for_path(g: Graph, p: Path) -> BaseAnchor:
    return make_anchor(g, p[0], p[-1])


def _parallel_identity(anchor: BaseAnchor, p: Path) -> bool:
    # A walk a1 -> u -> (p) -> v -> b1 of total length d(a1, b1) is a geodesic,
    # so the identity alone already makes p a shortest path on an a1b1-geodesic.
    da, db = anchor.dist_a1, anchor.dist_b1
    u, v = p[0], p[-1]
    if da[u] > da[v]:
        u, v = v, u
    if da[u] == INF or db[v] == INF:
        return False
    return da[u] + (len(p) - 1) + db[v] == anchor.base_len


def is_parallel(anchor: BaseAnchor, g: Graph, q: Path, check: bool = True) -> bool:
    """True iff ``q`` is a subpath of some shortest ``a1``-``b1`` path."""
    if check:
        check_path(g, q)
    return _parallel_identity(anchor, q)


def leq1(anchor: BaseAnchor, u: int, v: int) -> int:
    """Three-way comparison of ``u`` and ``v`` by distance from ``a1`` (-1, 0, 1)."""
    du, dv = anchor.dist_a1[u], anchor.dist_a1[v]
    if du == INF or dv == INF:
        bad = u if du == INF else v
        raise PathError(f"vertex {bad} is unreachable from a1={anchor.a1}")
    return (du > dv) - (du < dv)


def concat_parallel(anchor: BaseAnchor, g: Graph, p: Path, q: Path) -> list[int]:
    """Concatenate two parallel paths ``a..b`` and ``b..c`` with ``a <=1 b <=1 c``."""
    check_path(g, p)
    check_path(g, q)
    if p[-1] != q[0]:
        raise PathError(f"last vertex {p[-1]} of the first path is not the first vertex {q[0]} of the second")
    if not _parallel_identity(anchor, p):
        raise PathError("first path is not parallel to the base")
    if not _parallel_identity(anchor, q):
        raise PathError("second path is not parallel to the base")
    a, b, c = p[0], p[-1], q[-1]
    if not (leq1(anchor, a, b) <= 0 and leq1(anchor, b, c) <= 0):
        raise PathError(f"endpoints {a}, {b}, {c} are not ordered a <=1 b <=1 c")
    out = list(p) + list(q[1:])
    if not is_parallel(anchor, g, out):
        raise PathError("concatenation is not parallel to the base")
    return out


def all_pairs_distances(g: Graph) -> list[list[int]]:
    return [bfs_distances(g, s) for s in range(g.n)]


def is_isometric_subgraph(g: Graph, h_vertices: Sequence[int], h_edges: Sequence[Sequence[int]]) -> bool:
    """True iff the subgraph ``(h_vertices, h_edges)`` of ``g`` preserves all distances.

    The embedding is given directly in host ids; it must be injective and use
    only host edges.
    """
    verts = list(h_vertices)
    if len(set(verts)) != len(verts):
        raise PathError("subgraph vertex list is not injective")
    index = {v: i for i, v in enumerate(verts)}
    for v in verts:
        if not 0 <= v < g.n:
            raise PathError(f"vertex {v} outside the host graph")
    adj: list[list[int]] = [[] for _ in verts]
    for e in h_edges:
        u, v = e
        if u not in index or v not in index:
            raise PathError(f"edge ({u}, {v}) leaves the subgraph vertex set")
        if not g.has_edge(u, v):
            raise PathError(f"edge ({u}, {v}) is not a host edge")
        adj[index[u]].append(index[v])
        adj[index[v]].append(index[u])
    h = Graph(len(verts), [sorted(set(a)) for a in adj])
    for i, s in enumerate(verts):
        dg = bfs_distances(g, s)
        dh = bfs_distances(h, i)
        for j, t in enumerate(verts):
            if dh[j] != dg[t]:
                return False
    return True

