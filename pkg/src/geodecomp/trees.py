"""Tree-decompositions of width 2 for graphs edge-covered by two isometric trees.

Per block: trim shared leaf edges until the two trees meet only in their
common leaves, rebuild both trees from the distances between leaves and
leaf-triple medians, match their internal vertices, and decompose the
resulting mirror pair by cutting at ``{u, iota(u)}`` recursively.  Blocks are
glued back along the block-cut tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CertificateError, GraphError
from .graph import Graph, bfs_distances, blocks, build_graph, connected_components, edge_key, induced_subgraph
from .metric import is_isometric_subgraph
from .width import Report, TreeDecomposition, validate_treedecomp


@dataclass
class Tree:
    """A tree given by host-graph vertex ids and edges."""

    vertices: list[int]
    edges: list[tuple[int, int]]
    adj: dict[int, list[int]] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        self.vertices = sorted(set(self.vertices) | {x for e in self.edges for x in e})
        self.edges = sorted({edge_key(u, v) for u, v in self.edges})
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        self.adj = adj

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()):
        return cls(list(vertices), [tuple(e) for e in edges])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def leaves(self) -> list[int]:
        if len(self.vertices) == 1:
            return []
        return [v for v in self.vertices if len(self.adj[v]) == 1]

    def is_tree(self) -> bool:
        if not self.vertices or len(self.edges) != len(self.vertices) - 1:
            return False
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    def distances(self, s: int) -> dict[int, int]:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def path(self, s: int, t: int) -> list[int]:
        parent = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if x == t:
                break
            for y in self.adj[x]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            raise GraphError(f"{t} not reachable from {s} in the tree")
        out = [t]
        while out[-1] != s:
            out.append(parent[out[-1]])
        return out[::-1]

    def restrict(self, keep: set[int]) -> "Tree":
        return Tree([v for v in self.vertices if v in keep], [e for e in self.edges if e[0] in keep and e[1] in keep])

    def to_json(self):
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def verify_tree_cover(g: Graph, T1: Tree, T2: Tree) -> Report:
    """Both are isometric subtrees of ``g`` and together they contain every edge."""
    return verify_trees(g, [T1, T2])


def verify_trees(g: Graph, trees: Sequence[Tree]) -> Report:
    violations = []
    covered = set()
    for i, t in enumerate(trees):
        if not t.is_tree():
            violations.append(f"tree {i}: not a tree")
            continue
        bad = [e for e in t.edges if not (0 <= e[0] < g.n and 0 <= e[1] < g.n and g.has_edge(*e))]
        if bad:
            violations.append(f"tree {i}: non-host edges {bad[:5]}")
            continue
        if not is_isometric_subgraph(g, t.vertices, t.edges):
            violations.append(f"tree {i}: not isometric")
        covered.update(t.edges)
    missing = [e for e in g.edges() if e not in covered]
    if missing:
        violations.append(f"edge uncovered: {missing[:10]}")
    return Report(not violations, -1, violations)


def trim_shared_leaf_edges(T1: Tree, T2: Tree) -> tuple[Tree, Tree]:
    """Drop leaf edges of one tree that the other tree also has, until none remain."""
    while True:
        e2 = set(T2.edges)
        drop1 = [edge_key(v, T1.adj[v][0]) for v in T1.leaves if edge_key(v, T1.adj[v][0]) in e2]
        if drop1:
            T1 = _without_edges(T1, drop1)
            continue
        e1 = set(T1.edges)
        drop2 = [edge_key(v, T2.adj[v][0]) for v in T2.leaves if edge_key(v, T2.adj[v][0]) in e1]
        if drop2:
            T2 = _without_edges(T2, drop2)
            continue
        return T1, T2


def _without_edges(t: Tree, drop: Sequence[tuple[int, int]]) -> Tree:
    ds = set(drop)
    edges = [e for e in t.edges if e not in ds]
    verts = {x for e in edges for x in e}
    if not verts:
        verts = {min(t.vertices)}
    return Tree(sorted(verts), edges)


def check_all_edges_vertical(g: Graph, u: int):
    """``(True, None)`` if every edge joins consecutive BFS levels from ``u``, else ``(False, edge)``."""
    dist = bfs_distances(g, u)
    for x, y in g.edges():
        if abs(dist[x] - dist[y]) != 1:
            return False, (x, y)
    return True, None


# -- medians and reconstruction -------------------------------------------------

def tree_median(T: Tree, a: int, b: int, c: int) -> int:
    for v in (a, b, c):
        if v not in T.adj:
            raise GraphError(f"vertex {v} is not in the tree")
    da, db, dc = T.distances(a), T.distances(b), T.distances(c)
    for v in T.path(a, b):
        if da[v] + dc[v] == da[c] and db[v] + dc[v] == db[c]:
            return v
    raise CertificateError("no median found; input is not a tree")


def leaf_median_profile(T: Tree) -> dict[tuple[int, int, int], tuple[int, int, int]]:
    """For each sorted leaf triple, the distances from its median to the three leaves."""
    L = T.leaves
    if len(L) < 3:
        raise GraphError(f"median profile needs at least 3 leaves, tree has {len(L)}")
    dist = {x: T.distances(x) for x in L}
    prof = {}
    for a, b, c in combinations(L, 3):
        dab, dac, dbc = dist[a][b], dist[a][c], dist[b][c]
        prof[(a, b, c)] = ((dab + dac - dbc) // 2, (dab + dbc - dac) // 2, (dac + dbc - dab) // 2)
    return prof


def _phi(prof, a, b, c):
    """Profile entry for an arbitrary triple order, reordered to match ``(a, b, c)``."""
    key = tuple(sorted((a, b, c)))
    vals = dict(zip(key, prof[key]))
    return vals[a], vals[b], vals[c]


def reconstruct_from_profile(L: Sequence[int], prof: dict) -> Tree:
    """The unique tree with leaf set ``L`` realising ``prof`` (internal labels above ``max(L)``).

    Start from the star on the three largest leaves; attach the others in
    descending order, each at the point of the current tree closest to it.
    """
    L = sorted(L)
    if len(L) < 3:
        raise GraphError("reconstruction needs at least 3 leaves")
    for key in combinations(L, 3):
        if key not in prof:
            raise CertificateError(f"profile misses triple {key}", certificate=key)
        if any(x < 0 for x in prof[key]):
            raise CertificateError(f"negative distance at triple {key}", certificate=key)
    label = [max(L)]

    def fresh():
        label[0] += 1
        return label[0]

    adj: dict[int, set[int]] = {}

    def link(x, y):
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)

    def hang(x, leaf, length):
        cur = x
        for _ in range(length - 1):
            nxt = fresh()
            link(cur, nxt)
            cur = nxt
        link(cur, leaf)

    a, b, c = L[-3:]
    da, db, dc = _phi(prof, a, b, c)
    if min(da, db, dc) < 1:
        raise CertificateError(f"triple {(a, b, c)} puts a leaf on the median", certificate=(a, b, c))
    centre = fresh()
    adj[centre] = set()
    for leaf, d in ((a, da), (b, db), (c, dc)):
        hang(centre, leaf, d)
    placed = [a, b, c]
    for x in reversed(L[:-3]):
        best = None
        for p, q in combinations(sorted(placed), 2):
            dx, dp, dq = _phi(prof, x, p, q)
            if best is None or dx < best[0]:
                best = (dx, p, q, dp, dq)
        dx, p, q, dp, dq = best
        t = Tree(list(adj), [(u, w) for u in adj for w in adj[u] if u < w])
        route = t.path(p, q)
        if dp + dq != len(route) - 1:
            raise CertificateError(f"triple {tuple(sorted((x, p, q)))} is inconsistent with the tree so far", certificate=(x, p, q))
        if dx < 1:
            raise CertificateError(f"triple {tuple(sorted((x, p, q)))} puts leaf {x} inside the tree", certificate=(x, p, q))
        hang(route[dp], x, dx)
        placed.append(x)
    tree = Tree(list(adj), [(u, w) for u in adj for w in adj[u] if u < w])
    if tree.leaves != L:
        raise CertificateError(f"reconstructed leaves {tree.leaves} differ from {L}")
    got = leaf_median_profile(tree)
    for key in combinations(L, 3):
        if got[key] != tuple(prof[key]):
            raise CertificateError(f"profile not realised at triple {key}", certificate=key)
    return tree


def _canonical_map(T: Tree, canon: Tree, L: Sequence[int]) -> dict[int, int]:
    """Map each vertex of ``T`` to ``canon`` by its position on the lowest leaf pair path through it."""
    pairs = list(combinations(sorted(L), 2))
    dist_t = {x: T.distances(x) for x in L}
    out = {}
    paths_c = {}
    for v in T.vertices:
        for a, b in pairs:
            if dist_t[a][v] + dist_t[b][v] == dist_t[a][b]:
                if (a, b) not in paths_c:
                    paths_c[(a, b)] = canon.path(a, b)
                route = paths_c[(a, b)]
                out[v] = route[dist_t[a][v]]
                break
        else:
            raise CertificateError(f"vertex {v} lies on no leaf-to-leaf path")
    return out


def trees_isomorphic_fixing(T: Tree, U: Tree, iota: dict[int, int], fixed: Iterable[int]) -> bool:
    """``iota`` is a bijection ``V(T) -> V(U)`` mapping edges onto edges and fixing ``fixed``."""
    if set(iota) != set(T.vertices) or sorted(iota.values()) != U.vertices:
        return False
    if any(iota[v] != v for v in fixed):
        return False
    return sorted(edge_key(iota[x], iota[y]) for x, y in T.edges) == U.edges


@dataclass
class MirrorDecomposition:
    T: Tree
    U: Tree
    iota: dict[int, int]

    @property
    def shared(self) -> list[int]:
        return sorted(set(self.T.vertices) & set(self.U.vertices))

    def graph_edges(self) -> set[tuple[int, int]]:
        return set(self.T.edges) | set(self.U.edges)


def extract_mirror(g: Graph, T1: Tree, T2: Tree) -> MirrorDecomposition:
    """Leaf-fixing isomorphism between two trees meeting exactly at their common leaves."""
    L1, L2 = T1.leaves, T2.leaves
    shared = sorted(set(T1.vertices) & set(T2.vertices))
    if not (L1 == L2 == shared):
        raise CertificateError("trees do not meet exactly at their leaves", claim="leaf-only")
    if len(L1) <= 2:
        if len(L1) < 2:
            raise CertificateError("mirror trees need at least two leaves")
        a, b = L1
        p1, p2 = T1.path(a, b), T2.path(a, b)
        if len(p1) != len(p2):
            raise CertificateError("the two leaf-to-leaf paths differ in length", claim="reconstruction")
        iota = dict(zip(p1, p2))
    else:
        prof1, prof2 = leaf_median_profile(T1), leaf_median_profile(T2)
        if prof1 != prof2:
            bad = next(k for k in prof1 if prof1[k] != prof2[k])
            raise CertificateError(f"median profiles differ at triple {bad}", certificate=bad, claim="reconstruction")
        canon = reconstruct_from_profile(L1, prof1)
        f1 = _canonical_map(T1, canon, L1)
        f2 = _canonical_map(T2, canon, L1)
        inv2 = {c: v for v, c in f2.items()}
        if len(inv2) != len(f2) or len(set(f1.values())) != len(f1):
            raise CertificateError("canonical map is not injective", claim="reconstruction")
        iota = {v: inv2[f1[v]] for v in T1.vertices}
    if not trees_isomorphic_fixing(T1, T2, iota, L1):
        raise CertificateError("recovered map is not a leaf-fixing isomorphism", claim="reconstruction")
    return MirrorDecomposition(T1, T2, iota)


# -- width-2 decomposition of a mirror pair ----------------------------------------

def mirror_treedecomp(m: MirrorDecomposition) -> TreeDecomposition:
    """Width-2 tree-decomposition of ``T + U`` with ``{v, iota(v)}`` in some bag for every ``v``."""
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []

    def build(T: Tree, iota: dict[int, int], H_edges: set[tuple[int, int]]) -> None:
        """Append bags for this sub-mirror; its first bag is connected to nothing yet."""
        verts = T.vertices
        if len(verts) == 1:
            v = verts[0]
            bags.append(frozenset({v, iota[v]}))
            return
        if len(verts) == 2:
            a, b = verts
            allv = {a, b, iota[a], iota[b]}
            if len(allv) <= 3:
                bags.append(frozenset(allv))
            else:
                first = len(bags)
                bags.append(frozenset({a, b, iota[a]}))
                bags.append(frozenset({b, iota[a], iota[b]}))
                edges.append((first, first + 1))
            return
        u = next(v for v in verts if T.degree(v) >= 2)
        iu = iota[u]
        comps = connected_components_tree(T, u)
        # {u, iota(u)} must split H into the parts induced by the components of T - u
        owner = {}
        for ci, C in enumerate(comps):
            for v in C:
                owner[v] = ci
                owner[iota[v]] = ci
        for x, y in H_edges:
            if x in (u, iu) or y in (u, iu):
                continue
            if owner.get(x) != owner.get(y):
                raise CertificateError(f"{{{u}, {iu}}} does not separate the mirror pair", certificate=(x, y))
        hub = len(bags)
        bags.append(frozenset({u, iu}))
        for C in comps:
            keep = set(C) | {u}
            sub_T = T.restrict(keep)
            sub_iota = {v: iota[v] for v in keep}
            image = {iota[v] for v in keep}
            sub_H = {e for e in H_edges if (e[0] in keep or e[0] in image) and (e[1] in keep or e[1] in image)}
            start = len(bags)
            build(sub_T, sub_iota, sub_H)
            node = next(i for i in range(start, len(bags)) if {u, iu} <= bags[i])
            edges.append((hub, node))

    build(m.T, dict(m.iota), m.graph_edges())
    return TreeDecomposition(bags, edges)


def connected_components_tree(T: Tree, removed: int) -> list[list[int]]:
    seen = {removed}
    comps = []
    for s in T.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in T.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


# -- full pipeline -------------------------------------------------------------

@dataclass
class BlockAudit:
    block: int
    vertices: list[int]
    kind: str
    width: int
    root_leaf: int | None = None


def _block_decomposition(h: Graph, T1: Tree, T2: Tree, block_id: int) -> tuple[TreeDecomposition, BlockAudit]:
    """Decompose one block ``h`` (local ids) covered by the restricted trees."""
    if h.n <= 2:
        bag = list(range(h.n))
        return TreeDecomposition([bag], []), BlockAudit(block_id, [], "edge", h.n - 1)
    T1, T2 = trim_shared_leaf_edges(T1, T2)
    covered = set(T1.edges) | set(T2.edges)
    if covered != h.edge_set():
        raise CertificateError("trimming broke the cover", block=block_id, claim="trim")
    if not T1.leaves:
        raise CertificateError("first tree lost all its edges", block=block_id, claim="trim")
    u = T1.leaves[0]
    if u not in T2.adj:
        raise CertificateError(f"leaf {u} of the first tree is not in the second", block=block_id, claim="leaf-in-both")
    ok, bad = check_all_edges_vertical(h, u)
    if not ok:
        raise CertificateError(f"edge {bad} is not vertical from {u}", block=block_id, claim="verticality")
    shared = sorted(set(T1.vertices) & set(T2.vertices))
    if not (shared == T1.leaves == T2.leaves):
        raise CertificateError("trees share an internal vertex", block=block_id, claim="leaf-only")
    mirror = extract_mirror(h, T1, T2)
    td = mirror_treedecomp(mirror)
    return td, BlockAudit(block_id, [], "mirror", td.width, u)


def decompose_two_trees(g: Graph, T1: Tree, T2: Tree, verify: bool = True) -> tuple[TreeDecomposition, list[BlockAudit]]:
    """Width-2 tree-decomposition of ``g`` from an edge cover by two isometric trees."""
    if verify:
        rep = verify_tree_cover(g, T1, T2)
        if not rep.ok:
            raise CertificateError("tree cover does not verify: " + "; ".join(rep.violations), claim="cover")
    blist, _ = blocks(g)
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    audits = []
    first_node = []
    for bi, B in enumerate(blist):
        h, fwd, back = induced_subgraph(g, B)
        keep = set(B)
        local = []
        for T in (T1, T2):
            r = T.restrict(keep)
            local.append(Tree([fwd[v] for v in r.vertices], [(fwd[x], fwd[y]) for x, y in r.edges]))
        td, audit = _block_decomposition(h, local[0], local[1], bi)
        audit.vertices = list(B)
        audits.append(audit)
        offset = len(bags)
        first_node.append(offset)
        bags.extend(frozenset(back[v] for v in bag) for bag in td.bags)
        edges.extend((offset + i, offset + j) for i, j in td.edges)
    _link_blocks(g, blist, bags, edges, first_node)
    td = TreeDecomposition(bags, edges)
    rep = validate_treedecomp(g, td)
    if not rep.ok:
        raise CertificateError("assembled tree-decomposition is invalid", certificate=rep.violations)
    if td.width > 2:
        raise CertificateError(f"assembled width {td.width} exceeds 2")
    return td, audits


def _link_blocks(g, blist, bags, edges, first_node):
    """Join block decompositions along the block-cut forest; components are chained arbitrarily."""
    nb = len(blist)
    ends = first_node[1:] + [len(bags)]
    node_range = [range(first_node[i], ends[i]) for i in range(nb)]
    blocks_of: dict[int, list[int]] = {}
    for bi, B in enumerate(blist):
        for v in B:
            blocks_of.setdefault(v, []).append(bi)
    done = [False] * nb
    roots = []
    for start in range(nb):
        if done[start]:
            continue
        roots.append(start)
        done[start] = True
        queue = deque([start])
        while queue:
            bi = queue.popleft()
            for v in blist[bi]:
                for bj in blocks_of[v]:
                    if done[bj]:
                        continue
                    done[bj] = True
                    src = next(i for i in node_range[bi] if v in bags[i])
                    dst = next(i for i in node_range[bj] if v in bags[i])
                    edges.append((src, dst))
                    queue.append(bj)
    for a, b in zip(roots, roots[1:]):
        edges.append((first_node[a], first_node[b]))


def tree_from_spec(spec: str, seed: int | None = None) -> Tree:
    """Trees named like ``star:3``, ``path:4`` (edges), ``spider:1,2,3``, ``random:8``, or ``edges:0-1,1-2``."""
    import random

    kind, _, arg = spec.partition(":")
    if kind == "star":
        t = int(arg)
        return Tree(list(range(t + 1)), [(0, i) for i in range(1, t + 1)])
    if kind == "path":
        n = int(arg)
        return Tree(list(range(n + 1)), [(i, i + 1) for i in range(n)])
    if kind == "spider":
        legs = [int(x) for x in arg.split(",") if x]
        edges = []
        nxt = 1
        for length in legs:
            prev = 0
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return Tree(list(range(nxt)), edges)
    if kind == "random":
        n = int(arg)
        rng = random.Random(seed)
        return Tree(list(range(n)), [(rng.randrange(i), i) for i in range(1, n)])
    if kind == "edges":
        pairs = [tuple(int(x) for x in e.split("-")) for e in arg.split(",") if e]
        return Tree([], pairs)
    raise GraphError(f"unknown tree spec {spec!r}")


def graph_of_trees(trees: Sequence[Tree], n: int | None = None) -> Graph:
    verts = {v for t in trees for v in t.vertices}
    n = max(verts) + 1 if n is None else n
    return build_graph(n, sorted({e for t in trees for e in t.edges}))
