"""Exact small-instance solvers and brute-force enumerators.

These are deliberately independent of the constructive pipelines: they
share only the graph type and BFS, so agreement between the two is evidence
rather than tautology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapExceeded, PathError
from .graph import INF, Graph, bfs_distances, edge_key
from .metric import BaseAnchor, check_path, path_edges
from .width import TreeDecomposition

PW_CAP = 22
TW_CAP = 18
COVER_CAP = 14


@dataclass
class ExactResult:
    value: int
    witness: list[int] = field(default_factory=list)
    explored: int = 0

    def to_json(self):
        return {"value": self.value, "witness": list(self.witness), "explored": self.explored}


def _nbr_masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


# -- pathwidth ---------------------------------------------------------------

def exact_pathwidth(g: Graph, cap: int = PW_CAP) -> ExactResult:
    """Pathwidth as the minimum vertex separation over all orders.

    ``f[S] = max(|boundary(S)|, min_{v in S} f[S - v])`` where the boundary of
    ``S`` is the set of vertices of ``S`` with a neighbour outside ``S``.  The
    table is filled one popcount level at a time with numpy.
    """
    n = g.n
    if n > cap:
        raise CapExceeded(f"exact_pathwidth: n={n} exceeds cap {cap}")
    if n == 0:
        return ExactResult(0, [], 1)
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    masks = _nbr_masks(g)
    boundary = np.zeros(size, dtype=np.int8)
    for v in range(n):
        inside = ((idx >> v) & 1).astype(bool)
        leaks = (idx & masks[v]) != masks[v]
        boundary += (inside & leaks).astype(np.int8)
    pop = np.zeros(size, dtype=np.int8)
    for v in range(n):
        pop += ((idx >> v) & 1).astype(np.int8)
    by_level = np.argsort(pop, kind="stable")
    starts = np.searchsorted(pop[by_level], np.arange(n + 2))
    f = np.zeros(size, dtype=np.int8)
    big = np.int8(127)
    for level in range(1, n + 1):
        S = by_level[starts[level]:starts[level + 1]]
        best = np.full(S.shape, big, dtype=np.int8)
        for v in range(n):
            bit = 1 << v
            has = (S & bit) != 0
            sub = S[has]
            best[has] = np.minimum(best[has], f[sub ^ bit])
        f[S] = np.maximum(best, boundary[S])
    # backtrack: peel the last vertex off while staying within the optimum
    order = []
    S = size - 1
    while S:
        for v in range(n):
            bit = 1 << v
            if S & bit and f[S ^ bit] <= f[S]:
                order.append(v)
                S ^= bit
                break
    order.reverse()
    return ExactResult(int(f[size - 1]), order, size)


def brute_pathwidth(g: Graph) -> ExactResult:
    """Minimum vertex separation by depth-first search over all orders.

    Prefixes are extended one vertex at a time; a branch is cut once its
    running maximum reaches the best complete order found so far.
    """
    n = g.n
    if n == 0:
        return ExactResult(0, [], 1)
    masks = _nbr_masks(g)
    full = (1 << n) - 1

    def boundary(S):
        c = 0
        for v in range(n):
            if S >> v & 1 and masks[v] & ~S & full:
                c += 1
        return c

    best = [n, list(range(n))]
    explored = 0
    prefix: list[int] = []

    def dfs(S, cost):
        nonlocal explored
        explored += 1
        if cost >= best[0]:
            return
        if S == full:
            best[0] = cost
            best[1] = list(prefix)
            return
        for v in range(n):
            if not S >> v & 1:
                T = S | (1 << v)
                prefix.append(v)
                dfs(T, max(cost, boundary(T)))
                prefix.pop()

    dfs(0, 0)
    return ExactResult(best[0], best[1], explored)


# -- treewidth ---------------------------------------------------------------

def _reach_outside(masks: Sequence[int], S: int, v: int) -> int:
    """Vertices outside ``S + v`` adjacent to the component of ``v`` in ``G[S + v]``."""
    seen = 1 << v
    frontier = seen
    out = 0
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            u = low.bit_length() - 1
            f ^= low
            nxt |= masks[u]
        out |= nxt & ~S
        frontier = nxt & S & ~seen
        seen |= frontier
    return out & ~(1 << v)


def _degeneracy(g: Graph) -> int:
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return best


def _min_degree_order(g: Graph) -> tuple[int, list[int]]:
    adj = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order = []
    width = 0
    while alive:
        v = min(alive, key=lambda x: (len(adj[x]), x))
        nb = adj[v]
        width = max(width, len(nb))
        for a in nb:
            adj[a] |= nb
            adj[a].discard(a)
            adj[a].discard(v)
        alive.discard(v)
        order.append(v)
    return width, order


def exact_treewidth(g: Graph, cap: int = TW_CAP) -> ExactResult:
    """Treewidth via the subset recurrence over elimination orders.

    For a candidate width ``k`` the search explores sets ``S`` of already
    eliminated vertices, adding ``v`` only when ``|Q(S, v)| <= k``; ``k`` rises
    from a degeneracy lower bound until the whole vertex set is reachable.
    The witness is the elimination order.
    """
    n = g.n
    if n > cap:
        raise CapExceeded(f"exact_treewidth: n={n} exceeds cap {cap}")
    if n == 0:
        return ExactResult(-1, [], 1)
    masks = _nbr_masks(g)
    full = (1 << n) - 1
    ub, ub_order = _min_degree_order(g)
    lb = _degeneracy(g)
    explored = 0
    for k in range(lb, ub):
        parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
        layer = [0]
        found = None
        while layer and found is None:
            nxt = []
            for S in layer:
                explored += 1
                rest = full & ~S
                if bin(rest).count("1") <= k + 1:
                    found = S
                    break
                r = rest
                while r:
                    low = r & -r
                    v = low.bit_length() - 1
                    r ^= low
                    T = S | low
                    if T in parent:
                        continue
                    if bin(_reach_outside(masks, S, v)).count("1") <= k:
                        parent[T] = (S, v)
                        nxt.append(T)
            layer = nxt
        if found is not None:
            order = []
            S = found
            while S:
                S, v = parent[S]
                order.append(v)
            order.reverse()
            order.extend(v for v in range(n) if not found >> v & 1)
            return ExactResult(k, order, explored)
    return ExactResult(ub, ub_order, explored)


def elimination_width(g: Graph, order: Sequence[int]) -> int:
    return elimination_to_treedecomp(g, order).width


def elimination_to_treedecomp(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree-decomposition whose bags are ``{v} + later fill-neighbours of v``."""
    n = g.n
    if sorted(order) != list(range(n)):
        raise PathError("elimination order is not a permutation")
    if n == 0:
        return TreeDecomposition([], [])
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in g.adj]
    bags = []
    later_nbrs = []
    for v in order:
        nb = {w for w in adj[v] if pos[w] > pos[v]}
        later_nbrs.append(nb)
        bags.append(nb | {v})
        for a in nb:
            adj[a] |= nb - {a}
    edges = []
    for i, nb in enumerate(later_nbrs):
        if nb:
            j = min(pos[w] for w in nb)
            edges.append((i, j))
        elif i < n - 1:
            # last vertex of its component: hook onto the next bag to stay a tree
            edges.append((i, i + 1))
    return TreeDecomposition(bags, edges)


def brute_treewidth(g: Graph) -> ExactResult:
    """Minimum elimination width by depth-first search over all orders."""
    n = g.n
    if n == 0:
        return ExactResult(-1, [], 1)
    masks = _nbr_masks(g)
    full = (1 << n) - 1
    best = [n - 1, list(range(n))]
    explored = 0
    prefix: list[int] = []

    def dfs(S, cost):
        nonlocal explored
        explored += 1
        if cost >= best[0]:
            return
        if S == full:
            best[0] = cost
            best[1] = list(prefix)
            return
        for v in range(n):
            if not S >> v & 1:
                q = bin(_reach_outside(masks, S, v)).count("1")
                prefix.append(v)
                dfs(S | (1 << v), max(cost, q))
                prefix.pop()

    dfs(0, 0)
    return ExactResult(best[0], best[1], explored)


# -- geodesics ---------------------------------------------------------------

def enumerate_geodesics(g: Graph, u: int, v: int, cap: int = 10000) -> tuple[list[list[int]], bool]:
    """All shortest ``u``-``v`` paths, at most ``cap`` of them; the flag says whether output was cut."""
    du = bfs_distances(g, u)
    if du[v] == INF:
        raise PathError(f"{u} and {v} are disconnected")
    dv = bfs_distances(g, v)
    d = du[v]
    out: list[list[int]] = []
    path = [u]
    truncated = False

    def walk(x):
        nonlocal truncated
        if truncated:
            return
        if x == v:
            if len(out) >= cap:
                truncated = True
                return
            out.append(list(path))
            return
        for w in g.adj[x]:
            if du[w] == du[x] + 1 and du[w] + dv[w] == d:
                path.append(w)
                walk(w)
                path.pop()

    walk(u)
    return out, truncated


def parallel_oracle(g: Graph, base: BaseAnchor | tuple[int, int], q: Sequence[int], cap: int = 10000):
    """Whether ``q`` (or its reverse) occurs inside some shortest ``a1``-``b1`` path.

    Returns ``True``/``False``, or ``None`` when enumeration was truncated
    before a match was found (inconclusive).
    """
    check_path(g, q)
    a1, b1 = (base.a1, base.b1) if isinstance(base, BaseAnchor) else base
    geos, truncated = enumerate_geodesics(g, a1, b1, cap)
    q = list(q)
    rq = q[::-1]
    m = len(q)
    for p in geos:
        for i in range(len(p) - m + 1):
            window = p[i:i + m]
            if window == q or window == rq:
                return True
    return None if truncated else False


# -- minimum covers ----------------------------------------------------------

def maximal_geodesics(g: Graph, cap: int = 100000) -> list[list[int]]:
    """Shortest paths that cannot be extended at either end, canonicalised and sorted."""
    dist = [bfs_distances(g, s) for s in range(g.n)]
    out = set()
    for s in range(g.n):
        for t in range(s + 1, g.n):
            d = dist[s][t]
            if d == INF or d == 0:
                continue
            if any(dist[s][w] == d + 1 for w in g.adj[t]):
                continue
            if any(dist[t][w] == d + 1 for w in g.adj[s]):
                continue
            paths, truncated = enumerate_geodesics(g, s, t, cap)
            if truncated:
                raise CapExceeded(f"too many geodesics between {s} and {t}")
            for p in paths:
                out.add(min(tuple(p), tuple(reversed(p))))
    # isolated-edge components and single vertices are caught by the pair loop;
    # isolated vertices need their own trivial path in vertex mode
    for v in range(g.n):
        if not g.adj[v]:
            out.add((v,))
    return [list(p) for p in sorted(out)]


def min_cover_search(g: Graph, kmax: int, mode: str = "edge", cap: int = COVER_CAP):
    """A minimum family of at most ``kmax`` shortest paths covering every edge (or vertex).

    Returns the list of paths, or ``None`` when no such family exists.
    Only maximal geodesics are candidates: any shortest path extends to one,
    and extending never uncovers anything.
    """
    if g.n > cap:
        raise CapExceeded(f"min_cover_search: n={g.n} exceeds cap {cap}")
    if mode not in ("edge", "vertex"):
        raise ValueError(f"unknown mode {mode!r}")
    cands = maximal_geodesics(g)
    if mode == "edge":
        universe = sorted(g.edges())
        elems_of = [set(path_edges(p)) for p in cands]
    else:
        universe = list(range(g.n))
        elems_of = [set(p) for p in cands]
    if not universe:
        return []
    index = {e: i for i, e in enumerate(universe)}
    cmask = [sum(1 << index[e] for e in s) for s in elems_of]
    full = (1 << len(universe)) - 1
    covering = [[c for c in range(len(cands)) if cmask[c] >> i & 1] for i in range(len(universe))]
    for i, cs in enumerate(covering):
        cs.sort(key=lambda c: -bin(cmask[c]).count("1"))
        if not cs:
            return None
    biggest = max(bin(m).count("1") for m in cmask)

    def search(covered, left, chosen):
        if covered == full:
            return list(chosen)
        if left == 0:
            return None
        missing = bin(full & ~covered).count("1")
        if missing > left * biggest:
            return None
        low = (full & ~covered) & -(full & ~covered)
        i = low.bit_length() - 1
        for c in covering[i]:
            chosen.append(c)
            got = search(covered | cmask[c], left - 1, chosen)
            chosen.pop()
            if got is not None:
                return got
        return None

    for k in range(1, kmax + 1):
        got = search(0, k, [])
        if got is not None:
            return [cands[c] for c in got]
    return None


def edge_cover_gaps(g: Graph, paths: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    covered = set()
    for p in paths:
        covered.update(path_edges(p))
    return [e for e in g.edges() if edge_key(*e) not in covered]
