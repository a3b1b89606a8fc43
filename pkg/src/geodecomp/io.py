"""Graph text files, JSON artifacts and DOT rendering.

Graph files have a first line ``n m`` followed by ``m`` lines ``u v``;
lines starting with ``#`` are comments.  JSON artifacts are written with
sorted keys and carry ``schema_version``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GraphError
from .graph import Graph, build_graph
from .trees import Tree
from .width import PathDecomposition, TreeDecomposition, decomposition_from_json

SCHEMA_VERSION = 1


def parse_graph(text: str, strict: bool = True) -> Graph:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}") from None
    if not rows:
        raise GraphError("missing 'n m' header")
    (n, m), edges = rows[0], rows[1:]
    if n < 0 or m < 0:
        raise GraphError("negative header values")
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, file has {len(edges)}")
    return build_graph(n, edges, strict=strict)


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    edges = list(g.edges())
    lines.append(f"{g.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_graph(path, strict: bool = True) -> Graph:
    return parse_graph(Path(path).read_text(), strict=strict)


def write_graph(path, g: Graph, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments), newline="\n")


def dumps(obj: dict) -> str:
    out = {"schema_version": SCHEMA_VERSION}
    out.update(obj)
    return json.dumps(out, sort_keys=True, indent=1) + "\n"


def write_json(path, obj: dict) -> None:
    Path(path).write_text(dumps(obj), newline="\n")


def read_json(path) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise GraphError(f"{path}: expected a JSON object")
    return obj


def certificate_from_json(obj: dict) -> tuple[str, str, list]:
    """``(kind, mode, items)`` where kind is ``paths`` or ``trees``."""
    mode = obj.get("mode", "edge")
    if "paths" in obj:
        return "paths", mode, [[int(v) for v in p] for p in obj["paths"]]
    if "trees" in obj:
        trees = [Tree([int(v) for v in t.get("vertices", [])], [(int(a), int(b)) for a, b in t["edges"]]) for t in obj["trees"]]
        return "trees", mode, trees
    raise GraphError("certificate needs 'paths' or 'trees'")


def read_decomposition(path) -> PathDecomposition | TreeDecomposition:
    obj = read_json(path)
    return decomposition_from_json(obj.get("decomposition", obj))


def bundle_paths(directory, slug: str) -> dict[str, Path]:
    d = Path(directory)
    return {"graph": d / f"{slug}.graph", "certificate": d / f"{slug}.cert.json", "provenance": d / f"{slug}.prov.json"}


def write_bundle(bundle, directory) -> dict[str, Path]:
    """Write graph, certificate and provenance files named after the bundle slug."""
    Path(directory).mkdir(parents=True, exist_ok=True)
    files = bundle_paths(directory, bundle.slug)
    write_graph(files["graph"], bundle.graph, [bundle.slug])
    write_json(files["certificate"], bundle.certificate())
    write_json(files["provenance"], bundle.provenance())
    return files


def to_dot(g: Graph, layers: Sequence[Iterable[int]] | None = None, name: str = "G") -> str:
    """DOT text; with ``layers``, each layer is drawn as one rank."""
    lines = [f"graph {name} {{", "  rankdir=LR;"]
    if layers is not None:
        for i, layer in enumerate(layers):
            members = " ".join(str(v) for v in sorted(layer))
            lines.append(f"  {{ rank=same; {members} }}  // layer {i}")
    else:
        lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_to_dot(d: PathDecomposition | TreeDecomposition, name: str = "D") -> str:
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for i, bag in enumerate(d.bags):
        label = ",".join(str(v) for v in sorted(bag))
        lines.append(f'  b{i} [label="{label}"];')
    edges = d.edges if isinstance(d, TreeDecomposition) else [(i, i + 1) for i in range(len(d.bags) - 1)]
    lines.extend(f"  b{i} -- b{j};" for i, j in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
