"""Simple undirected graphs over dense integer vertex ids.

Vertices are ``0 .. n-1``.  A :class:`Graph` is immutable once built; every
function in this module is pure.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from typing import Iterable, Iterator, Sequence

from .errors import GraphError

# Sentinel distance for unreachable vertices.  Hop counts never get near it.
INF = (1 << 62)


class Graph:
    """Undirected simple graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        self.n = n
        self.adj = tuple(tuple(a) for a in adj)
        self.m = sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def build_graph(n: int, edges: Iterable[Sequence[int]], strict: bool = True) -> Graph:
    """Build a graph on ``n`` vertices.

    Self-loops and out-of-range ids are always rejected.  Duplicate edges
    (in either orientation) are rejected when ``strict`` and silently merged
    otherwise.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} does not have two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            if strict:
                raise GraphError(f"duplicate edge ({u}, {v})")
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [sorted(s) for s in nbrs])


def bfs_distances(g: Graph, s: int) -> list[int]:
    """Hop distances from ``s``; unreachable vertices get :data:`INF`."""
    dist = [INF] * g.n
    dist[s] = 0
    queue = deque([s])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] == INF:
                dist[w] = du
                queue.append(w)
    return dist


def bfs_tree(g: Graph, s: int) -> tuple[list[int], list[int]]:
    """Return ``(dist, parent)`` of a BFS from ``s`` (parent of roots/unreached is -1).

    Neighbors are scanned in ascending order, so the tree is deterministic.
    """
    dist = [INF] * g.n
    parent = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    adj = g.adj
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def tree_path(parent: Sequence[int], s: int, t: int) -> list[int]:
    """Path from BFS root ``s`` to ``t`` read off a parent array."""
    path = [t]
    while path[-1] != s:
        p = parent[path[-1]]
        if p < 0:
            raise GraphError(f"vertex {t} not reachable from {s}")
        path.append(p)
    path.reverse()
    return path


def shortest_path(g: Graph, s: int, t: int) -> list[int]:
    """One shortest ``s``-``t`` path (deterministic)."""
    _, parent = bfs_tree(g, s)
    return tree_path(parent, s, t)


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Vertex classes of the components of ``g - removed``, each sorted.

    Classes are listed by their smallest vertex.
    """
    seen = [False] * g.n
    for x in removed:
        seen[x] = True
    comps = []
    adj = g.adj
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_separator(g: Graph, X: Iterable[int], A: Iterable[int], B: Iterable[int]) -> bool:
    """True iff no component of ``g - X`` meets both ``A - X`` and ``B - X``."""
    X = set(X)
    targets = set(B) - X
    if not targets:
        return True
    starts = [a for a in set(A) if a not in X]
    seen = [False] * g.n
    for x in X:
        seen[x] = True
    adj = g.adj
    for s in starts:
        if seen[s]:
            continue
        seen[s] = True
        if s in targets:
            return False
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    if w in targets:
                        return False
                    seen[w] = True
                    stack.append(w)
    return True


def blocks(g: Graph) -> tuple[list[list[int]], list[int]]:
    """Blocks (maximal connected subgraphs without a cutvertex) and cutvertices.

    Bridges give two-vertex blocks and isolated vertices singleton blocks, so
    every vertex lies in some block and every edge in exactly one.
    Iterative Hopcroft-Tarjan over an edge stack.
    """
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    out: list[list[int]] = []
    cut = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not adj[root]:
            disc[root] = timer
            timer += 1
            out.append([root])
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        # frames: (vertex, parent, next neighbor index)
        stack = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            u, parent, i = frame
            if i < len(adj[u]):
                frame[2] += 1
                w = adj[u][i]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((u, w))
                    stack.append([w, u, 0])
                    if u == root:
                        root_children += 1
                elif w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cut.add(parent)
                comp = set()
                while True:
                    e = edge_stack.pop()
                    comp.update(e)
                    if e == (parent, u):
                        break
                out.append(sorted(comp))
        if root_children > 1:
            cut.add(root)
    out.sort()
    return out, sorted(cut)


def induced_subgraph(g: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int], list[int]]:
    """``g[S]`` re-indexed in ascending order of the original ids.

    Returns ``(h, forward, backward)`` where ``forward`` maps old -> new ids and
    ``backward[new] = old``.
    """
    backward = sorted(set(S))
    forward = {v: i for i, v in enumerate(backward)}
    adj = []
    for v in backward:
        adj.append(sorted(forward[w] for w in g.adj[v] if w in forward))
    return Graph(len(backward), adj), forward, backward


def subgraph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Graph on the same vertex ids keeping only ``edges`` (duplicates merged)."""
    return build_graph(n, edges, strict=False)
