"""Graphs edge-covered by two shortest paths.

Such a graph is a chain of shared vertices ``x_1 .. x_l`` with two
equal-length internally disjoint paths between consecutive ones and a pair of
dangling paths at either end, which gives a width-2 path-decomposition by
sweeping both paths in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import CertificateError, CoverError, GraphError, PathError
from .graph import Graph, bfs_distances, connected_components
from .metric import check_path
from .width import PathDecomposition, normalize


def check_no_crossing(g: Graph, P: Sequence[int], Q: Sequence[int], require_shortest: bool = True):
    """Look for ``a, b, c`` common to both paths with ``b`` inside ``P[a,c]`` and ``c`` inside ``Q[a,b]``.

    Returns ``(True, None)`` when no such triple exists, else ``(False, (a, b, c))``.
    Two shortest paths never admit one; ``require_shortest=False`` lets the
    combinatorial test run on arbitrary paths.
    """
    check_path(g, P)
    check_path(g, Q)
    if require_shortest:
        for name, p in (("P", P), ("Q", Q)):
            if bfs_distances(g, p[0])[p[-1]] != len(p) - 1:
                raise PathError(f"{name} is not a shortest path")
    pp = {v: i for i, v in enumerate(P)}
    pq = {v: i for i, v in enumerate(Q)}
    common = [v for v in P if v in pq]

    def inside(pos, x, lo, hi):
        return min(pos[lo], pos[hi]) < pos[x] < max(pos[lo], pos[hi])

    for a, b, c in _ordered_triples(common):
        if inside(pp, b, a, c) and inside(pq, c, a, b):
            return False, (a, b, c)
    return True, None


def _ordered_triples(items):
    for a, b, c in combinations(items, 3):
        yield from ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a))


@dataclass
class Skewer:
    spine: list[int]
    pieces: list[dict]  # {"q": [...], "r": [...]}, left to right, len(spine) + 1 entries

    def to_json(self):
        return {"spine": list(self.spine), "pieces": [{"q": list(p["q"]), "r": list(p["r"])} for p in self.pieces]}

    @classmethod
    def from_json(cls, obj):
        return cls(list(obj["spine"]), [{"q": list(p["q"]), "r": list(p["r"])} for p in obj["pieces"]])

    @property
    def vertices(self) -> set[int]:
        return {v for p in self.pieces for side in ("q", "r") for v in p[side]}


def skewer_recognize(g: Graph, P1: Sequence[int], P2: Sequence[int]) -> Skewer:
    """Skewer structure of a connected graph edge-covered by shortest paths ``P1``, ``P2``."""
    from .cover import verify_cover

    verify_cover(g, [P1, P2], "edge")
    if len(connected_components(g)) != 1:
        raise GraphError("skewer recognition needs a connected graph")
    P1, P2 = list(P1), list(P2)
    on2 = {v: i for i, v in enumerate(P2)}
    spine = [v for v in P1 if v in on2]
    if not spine:
        raise CoverError("the two paths are disjoint")
    if len(spine) > 1 and on2[spine[0]] > on2[spine[-1]]:
        P2.reverse()
        on2 = {v: i for i, v in enumerate(P2)}
    idx2 = [on2[v] for v in spine]
    if idx2 != sorted(idx2):
        raise CertificateError("shared vertices appear in different orders", certificate=spine)
    on1 = {v: i for i, v in enumerate(P1)}
    pieces = [{"q": P1[:on1[spine[0]] + 1], "r": P2[:on2[spine[0]] + 1]}]
    for x, y in zip(spine, spine[1:]):
        q = P1[on1[x]:on1[y] + 1]
        r = P2[on2[x]:on2[y] + 1]
        if len(q) != len(r):
            raise CertificateError(f"sides between {x} and {y} differ in length", certificate=(q, r))
        pieces.append({"q": q, "r": r})
    pieces.append({"q": P1[on1[spine[-1]]:], "r": P2[on2[spine[-1]]:]})
    return Skewer(spine, pieces)


def _sweep_piece(q, r, pin=None):
    """Bags covering one piece by moving a front along each side."""
    bags = []
    i = j = 0
    target_i, target_j = (len(q) - 1, len(r) - 1) if pin is None else pin
    # advance along q first, then along r; with a pin, stop both at the pin first
    for stop_i, stop_j in ((target_i, 0), (target_i, target_j), (len(q) - 1, target_j), (len(q) - 1, len(r) - 1)):
        while i < stop_i:
            bags.append({q[i], q[i + 1], r[j]})
            i += 1
        while j < stop_j:
            bags.append({q[i], r[j], r[j + 1]})
            j += 1
        if pin is not None and (i, j) == pin:
            bags.append({q[i], r[j]})
    if not bags:
        bags.append({q[0], r[0]})
    return bags


def skewer_pathdecomp(s: Skewer, pin: tuple[int, int] | None = None) -> PathDecomposition:
    """Width-2 path-decomposition; with ``pin=(a, b)`` some bag is exactly ``{a, b}``.

    ``a`` and ``b`` must lie on the two sides of one piece (either order).
    Unpinned output drops bags contained in a neighbour; pinned output only
    merges consecutive duplicates so the pinned bag survives.
    """
    where = None
    if pin is not None:
        a, b = pin
        for k, p in enumerate(s.pieces):
            if a in p["q"] and b in p["r"]:
                where = (k, p["q"].index(a), p["r"].index(b))
                break
            if b in p["q"] and a in p["r"]:
                where = (k, p["q"].index(b), p["r"].index(a))
                break
        if where is None:
            raise PathError(f"pin {pin} is not on opposite sides of one piece")
    bags = []
    for k, p in enumerate(s.pieces):
        q, r = p["q"], p["r"]
        local_pin = (where[1], where[2]) if where is not None and where[0] == k else None
        bags.extend(_sweep_piece(q, r, local_pin))
    if pin is None:
        return PathDecomposition(normalize(bags))
    out = []
    for bag in bags:
        if not out or out[-1] != bag:
            out.append(frozenset(bag))
    return PathDecomposition(out)
