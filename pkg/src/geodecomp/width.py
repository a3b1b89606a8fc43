"""Layerings, vertex-separation orders, and path/tree decompositions.

The central route is layering -> linear order -> path-decomposition: a
layering with at most ``k`` edges between consecutive layers yields an order
of vertex separation at most ``k``, and an order of vertex separation ``w``
yields a path-decomposition of width ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphError
from .graph import Graph, connected_components


@dataclass
class Report:
    """Outcome of a validator: ``ok`` plus human-readable violations."""

    ok: bool
    width: int = -1
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "width": self.width, "violations": list(self.violations)}


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __init__(self, bags: Iterable[Iterable[int]]):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self):
        return len(self.bags)

    def to_json(self) -> dict:
        return {"kind": "path", "bags": [sorted(b) for b in self.bags]}

    def as_tree(self) -> "TreeDecomposition":
        return TreeDecomposition(self.bags, [(i, i + 1) for i in range(len(self.bags) - 1)])


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    def __init__(self, bags: Iterable[Iterable[int]], edges: Iterable[Sequence[int]]):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_json(self) -> dict:
        return {
            "kind": "tree",
            "bags": [sorted(b) for b in self.bags],
            "tree_edges": [list(e) for e in self.edges],
        }


def decomposition_from_json(obj: dict):
    kind = obj.get("kind")
    if kind == "path":
        return PathDecomposition(obj["bags"])
    if kind == "tree":
        return TreeDecomposition(obj["bags"], obj.get("tree_edges", []))
    raise GraphError(f"unknown decomposition kind {kind!r}")


# -- layerings ---------------------------------------------------------------

def layer_index(g: Graph, layers: Sequence[Iterable[int]]) -> dict[int, int]:
    where = {}
    for i, layer in enumerate(layers):
        for v in layer:
            where[v] = i
    return where


def validate_layering(g: Graph, layers: Sequence[Iterable[int]], k: int | None = None) -> Report:
    """Check that ``layers`` is a layering of ``g`` with boundaries of at most ``k`` edges.

    Reported width is the largest number of edges between two consecutive layers.
    """
    layers = [list(layer) for layer in layers]
    violations = []
    where: dict[int, int] = {}
    for i, layer in enumerate(layers):
        for v in layer:
            if not 0 <= v < g.n:
                violations.append(f"partition: vertex {v} is not in the graph")
            elif v in where:
                violations.append(f"partition: vertex {v} is in layers {where[v]} and {i}")
            else:
                where[v] = i
    missing = [v for v in range(g.n) if v not in where]
    if missing:
        violations.append(f"partition: vertices {missing} are in no layer")
    boundary = [0] * max(len(layers) - 1, 0)
    for u, v in g.edges():
        if u not in where or v not in where:
            continue
        i, j = where[u], where[v]
        if i == j:
            violations.append(f"independence: edge ({u}, {v}) inside layer {i}")
        elif abs(i - j) > 1:
            violations.append(f"consecutive: edge ({u}, {v}) joins layers {i} and {j}")
        else:
            boundary[min(i, j)] += 1
    width = max(boundary, default=0)
    if k is not None:
        for i, c in enumerate(boundary):
            if c > k:
                violations.append(f"boundary: {c} edges between layers {i} and {i + 1} (k={k})")
    return Report(not violations, width, violations)


def layering_to_order(g: Graph, layers: Sequence[Iterable[int]]) -> list[int]:
    """Linear order of vertex separation at most the layering's boundary size.

    Inside each layer, vertices touching only the previous layer come first,
    then those touching both neighbouring layers, then those touching only the
    next; each group is sorted by id.  Isolated vertices go last.
    """
    rep = validate_layering(g, layers)
    if not rep.ok:
        raise GraphError("invalid layering: " + "; ".join(rep.violations[:5]))
    where = layer_index(g, layers)
    order = []
    isolated = []
    for i, layer in enumerate(layers):
        groups: tuple[list[int], list[int], list[int]] = ([], [], [])
        for v in sorted(layer):
            if not g.adj[v]:
                isolated.append(v)
                continue
            left = any(where[w] == i - 1 for w in g.adj[v])
            right = any(where[w] == i + 1 for w in g.adj[v])
            if left and not right:
                groups[0].append(v)
            elif left and right:
                groups[1].append(v)
            else:
                groups[2].append(v)
        for grp in groups:
            order.extend(grp)
    order.extend(sorted(isolated))
    return order


def _check_order(g: Graph, order: Sequence[int]) -> list[int]:
    if sorted(order) != list(range(g.n)):
        raise GraphError("order is not a permutation of the vertex set")
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def _open_until(g: Graph, order: Sequence[int], pos: Sequence[int]) -> list[int]:
    # last position at which each vertex still has to be in the bag
    return [max([pos[v]] + [pos[w] for w in g.adj[v]]) for v in range(g.n)]


def vertex_separation(g: Graph, order: Sequence[int]) -> int:
    """max over ``w`` of ``|{u < w : u has a neighbour at or after w}|``."""
    pos = _check_order(g, order)
    last = _open_until(g, order, pos)
    delta = [0] * (g.n + 1)
    for u in range(g.n):
        # u counts for every w with pos[u] < pos[w] <= last[u]
        if last[u] > pos[u]:
            delta[pos[u] + 1] += 1
            delta[last[u] + 1] -= 1
    best = cur = 0
    for i in range(g.n):
        cur += delta[i]
        best = max(best, cur)
    return best


def normalize(bags: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    """Drop every bag contained in an adjacent bag (this keeps a decomposition valid)."""
    out: list[frozenset[int]] = []
    for b in bags:
        b = frozenset(b)
        if out and b <= out[-1]:
            continue
        while out and out[-1] <= b:
            out.pop()
        out.append(b)
    return out


def order_to_pathdecomp(g: Graph, order: Sequence[int], normalized: bool = True) -> PathDecomposition:
    """Bag ``i`` is ``{order[i]}`` plus the earlier vertices with a neighbour at or after it."""
    pos = _check_order(g, order)
    last = _open_until(g, order, pos)
    return PathDecomposition(_interval_bags(g.n, order, pos, last, normalized))


def _interval_bags(n, order, pos, last, normalized):
    starts: list[list[int]] = [[] for _ in range(n)]
    ends: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        starts[pos[v]].append(v)
        ends[last[v]].append(v)
    bags = []
    cur: set[int] = set()
    for i in range(n):
        cur.update(starts[i])
        bags.append(frozenset(cur))
        cur.difference_update(ends[i])
    return normalize(bags) if normalized else bags


def layering_pathdecomp(g: Graph, layers: Sequence[Iterable[int]], pin_extremities: bool = True) -> PathDecomposition:
    """Path-decomposition of width at most the layering's boundary size.

    With ``pin_extremities`` and ``g`` connected, the leftmost bag is exactly the
    first layer and the rightmost exactly the last.  Vertices of the last layer
    stay open to the end; each of them has an edge into the previous layer, so
    the bag-size count still charges at most one boundary edge per vertex.
    """
    layers = [sorted(layer) for layer in layers if len(layer)]
    order = layering_to_order(g, layers)
    if g.n == 0:
        return PathDecomposition([])
    pos = _check_order(g, order)
    last = _open_until(g, order, pos)
    connected = len(connected_components(g)) == 1
    if pin_extremities and connected and len(layers) > 1:
        for v in layers[-1]:
            last[v] = g.n - 1
    bags = _interval_bags(g.n, order, pos, last, normalized=True)
    if pin_extremities and connected and len(layers) > 1:
        first, final = frozenset(layers[0]), frozenset(layers[-1])
        if bags[0] != first:
            assert first <= bags[0]
            bags.insert(0, first)
        if bags[-1] != final:
            assert final <= bags[-1]
            bags.append(final)
    return PathDecomposition(bags)


# -- validators --------------------------------------------------------------

def validate_pathdecomp(g: Graph, d: PathDecomposition) -> Report:
    violations = []
    seen_in: dict[int, list[int]] = {}
    for i, bag in enumerate(d.bags):
        for v in bag:
            if not 0 <= v < g.n:
                violations.append(f"range: bag {i} holds non-vertex {v}")
            else:
                seen_in.setdefault(v, []).append(i)
    for v in range(g.n):
        if v not in seen_in:
            violations.append(f"vertex coverage: vertex {v} in no bag")
    for v, idx in seen_in.items():
        if idx[-1] - idx[0] + 1 != len(idx):
            violations.append(f"connectivity: vertex {v} occurs in bags {idx}, not contiguous")
    for u, v in g.edges():
        iu, iv = seen_in.get(u), seen_in.get(v)
        if not iu or not iv or max(iu[0], iv[0]) > min(iu[-1], iv[-1]):
            violations.append(f"edge uncovered: ({u}, {v})")
    return Report(not violations, d.width, violations)


def validate_treedecomp(g: Graph, t: TreeDecomposition) -> Report:
    violations = []
    k = len(t.bags)
    tadj: list[list[int]] = [[] for _ in range(k)]
    for i, j in t.edges:
        if not (0 <= i < k and 0 <= j < k) or i == j:
            violations.append(f"tree: bad decomposition edge ({i}, {j})")
            continue
        tadj[i].append(j)
        tadj[j].append(i)
    if k and not violations:
        if len(t.edges) != k - 1:
            violations.append(f"tree: {len(t.edges)} edges on {k} nodes")
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in tadj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != k:
            violations.append("tree: decomposition tree is disconnected")
    holders: dict[int, set[int]] = {}
    for i, bag in enumerate(t.bags):
        for v in bag:
            if not 0 <= v < g.n:
                violations.append(f"range: bag {i} holds non-vertex {v}")
            else:
                holders.setdefault(v, set()).add(i)
    for v in range(g.n):
        if v not in holders:
            violations.append(f"vertex coverage: vertex {v} in no bag")
    for v, nodes in holders.items():
        inner = sum(1 for i, j in t.edges if i in nodes and j in nodes)
        if inner != len(nodes) - 1:
            violations.append(f"connectivity: bags holding vertex {v} do not form a subtree")
    for u, v in g.edges():
        if not (holders.get(u, set()) & holders.get(v, set())):
            violations.append(f"edge uncovered: ({u}, {v})")
    return Report(not violations, t.width, violations)


# -- combinators -------------------------------------------------------------

def pad_with(d: PathDecomposition, X: Iterable[int]) -> PathDecomposition:
    X = frozenset(X)
    if not d.bags:
        return PathDecomposition([X] if X else [])
    return PathDecomposition([b | X for b in d.bags])


def glue(d1: PathDecomposition, d2: PathDecomposition, Z: Iterable[int]) -> PathDecomposition:
    """Concatenate ``d1`` and ``d2`` whose facing extremities both equal ``Z``."""
    Z = frozenset(Z)
    if not d1.bags or not d2.bags:
        raise GraphError("cannot glue an empty decomposition")
    if d1.bags[-1] != Z:
        raise GraphError(f"rightmost bag {sorted(d1.bags[-1])} differs from {sorted(Z)}")
    if d2.bags[0] != Z:
        raise GraphError(f"leftmost bag {sorted(d2.bags[0])} differs from {sorted(Z)}")
    return PathDecomposition(d1.bags + d2.bags[1:])


def concat(decomps: Iterable[PathDecomposition]) -> PathDecomposition:
    """Concatenation of decompositions of vertex-disjoint graphs."""
    bags: list[frozenset[int]] = []
    for d in decomps:
        bags.extend(d.bags)
    return PathDecomposition(bags)


def relabel(d: PathDecomposition, mapping: Sequence[int] | dict) -> PathDecomposition:
    return PathDecomposition([[mapping[v] for v in b] for b in d.bags])
