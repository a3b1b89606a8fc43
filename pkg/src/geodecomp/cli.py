"""Command-line entry point: ``geodecomp <command> ...``.

Every command prints one JSON object (or DOT text with ``--format dot``) and
exits 0 only when every requested check passed.  Failures print
``{"error": ..., "schema_version": ...}`` and exit 1.
"""

from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import instances
from .cover import decompose_by_cover, verify_cover, width_bound
from .errors import CapExceeded, CoverError, GeodecompError
from .graph import connected_components
from .io import (
    certificate_from_json,
    decomposition_to_dot,
    dumps,
    read_decomposition,
    read_graph,
    read_json,
    to_dot,
    write_bundle,
    write_json,
)
from .metric import is_isometric_subgraph
from .oracle import PW_CAP, TW_CAP, exact_pathwidth, exact_treewidth
from .skewer import skewer_pathdecomp, skewer_recognize
from .trees import decompose_two_trees, verify_trees
from .width import PathDecomposition, Report, validate_pathdecomp, validate_treedecomp

log = logging.getLogger("geodecomp")


class CommandFailed(Exception):
    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


@dataclass
class RunReport:
    command: str
    inputs: dict
    seed: int | None = None
    timings: dict = field(default_factory=dict)
    outcome: str = "ok"
    outputs: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "timings_ms": self.timings,
            "outcome": self.outcome,
            "outputs": self.outputs,
            **self.result,
        }


class _Timer:
    def __init__(self, report: RunReport, stage: str):
        self.report, self.stage = report, stage

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.stage] = round((time.perf_counter() - self.t0) * 1000, 3)


def _load(graph_path, cert_path, mode_flag=None):
    g = read_graph(graph_path)
    kind, mode, items = certificate_from_json(read_json(cert_path))
    return g, kind, mode_flag or mode, items


# -- commands ----------------------------------------------------------------

def _make_bundle(args) -> instances.InstanceBundle:
    name = args.generator
    if name == "host":
        pairs = None
        if args.pairs:
            pairs = [tuple(int(x) for x in p.split("-")) for p in args.pairs.split(",")]
        return instances.gen_host_geodesics(args.host, args.k, args.seed, pairs)
    if name == "skewer":
        lens = [int(x) for x in args.pieces.split(",")] if args.pieces else None
        spine = args.spine_len if lens is None else len(lens) + 1
        return instances.gen_skewer(spine, lens, seed=args.seed)
    if name == "biclique":
        return instances.gen_biclique_trees(args.t)
    if name == "glued":
        return instances.gen_glued_trees(args.tree, args.k, args.seed)
    if name == "mirror":
        return instances.gen_mirror(args.tree, args.seed)
    if name == "compound":
        return instances.gen_block_compound(args.parts, args.seed)
    raise CommandFailed(f"unknown generator {name!r}")


def cmd_gen(args, report: RunReport):
    with _Timer(report, "generate"):
        bundle = _make_bundle(args)
    files = write_bundle(bundle, args.out)
    report.outputs = {k: str(v) for k, v in files.items()}
    report.result = {"slug": bundle.slug, "n": bundle.graph.n, "m": sum(1 for _ in bundle.graph.edges())}


def cmd_verify(args, report: RunReport):
    g, kind, mode, items = _load(args.graph, args.certificate, args.mode)
    with _Timer(report, "verify"):
        if kind == "paths":
            try:
                verify_cover(g, items, mode)
            except CoverError as exc:
                raise CommandFailed(str(exc), uncovered=[list(e) if isinstance(e, tuple) else e for e in exc.uncovered],
                                    non_shortest=exc.non_shortest) from None
        else:
            rep = verify_trees(g, items) if mode == "edge" else _verify_trees_vertex_mode(g, items)
            if not rep.ok:
                raise CommandFailed("tree cover does not verify", violations=rep.violations)
    report.result = {"kind": kind, "mode": mode, "verified": True}


def _verify_trees_vertex_mode(g, trees):
    bad = [f"tree {i} is not an isometric subtree" for i, t in enumerate(trees)
           if not (t.is_tree() and is_isometric_subgraph(g, t.vertices, t.edges))]
    seen = {v for t in trees for v in t.vertices}
    bad += [f"vertex {v} uncovered" for v in range(g.n) if v not in seen]
    return Report(not bad, -1, bad)


def decompose_certificate(g, kind, items):
    """Route a certificate to the matching pipeline; returns ``(route, decomposition, audit)``."""
    if kind == "trees":
        if len(items) != 2:
            raise CommandFailed(f"tree pipeline needs exactly two trees, got {len(items)}")
        td, audits = decompose_two_trees(g, items[0], items[1])
        return "tree-cover", td, {"blocks": [vars(a) for a in audits], "width": td.width, "bound": 2}
    fam = verify_cover(g, items, "edge")
    paths = fam.paths
    if len(paths) == 2 and set(paths[0]) & set(paths[1]) and len(connected_components(g)) == 1:
        s = skewer_recognize(g, paths[0], paths[1])
        d = skewer_pathdecomp(s)
        return "skewer", d, {"skewer": s.to_json(), "width": d.width, "bound": 2}
    d, audit = decompose_by_cover(g, fam)
    return "cover", d, audit


def cmd_decompose(args, report: RunReport):
    g, kind, mode, items = _load(args.graph, args.certificate)
    if kind == "paths" and mode != "edge":
        raise CommandFailed("decomposition needs an edge cover")
    with _Timer(report, "decompose"):
        route, d, audit = decompose_certificate(g, kind, items)
    with _Timer(report, "validate"):
        rep = validate_pathdecomp(g, d) if isinstance(d, PathDecomposition) else validate_treedecomp(g, d)
    if not rep.ok:
        raise CommandFailed("constructed decomposition is invalid", violations=rep.violations)
    report.result = {"route": route, "width": d.width, "decomposition": d.to_json(), "audit": audit}
    if args.output:
        write_json(args.output, {"decomposition": d.to_json(), "audit": audit, "route": route})
        report.outputs["decomposition"] = args.output
    if args.format == "dot":
        return decomposition_to_dot(d)


def cmd_exact(args, report: RunReport):
    g = read_graph(args.graph)
    try:
        with _Timer(report, "pathwidth"):
            pw = exact_pathwidth(g, args.cap_exact or PW_CAP)
        with _Timer(report, "treewidth"):
            tw = exact_treewidth(g, args.cap_exact or TW_CAP)
    except CapExceeded as exc:
        raise CommandFailed(str(exc)) from None
    report.result = {"pw": pw.value, "tw": tw.value, "witness_order": pw.witness, "elimination_order": tw.witness}
    if args.format == "dot":
        return to_dot(g)


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def _bench_host(kind: str, rng: random.Random) -> str:
    if kind == "grid":
        return f"grid:{rng.randint(3, 6)},{rng.randint(3, 6)}"
    if kind == "gnp":
        return f"gnp:{rng.randint(10, 24)},0.2"
    if kind == "cycle":
        return f"cycle:{rng.randint(4, 20)}"
    return kind


def bench_rows(ks, host: str, reps: int, seed: int, cap: int) -> list[dict]:
    rows = []
    for k in ks:
        for rep in range(reps):
            s = seed * 100003 + k * 1009 + rep
            hspec = _bench_host(host, random.Random(s))
            bundle = instances.gen_host_geodesics(hspec, k, s)
            d, audit = decompose_by_cover(bundle.graph, bundle.paths)
            exact = exact_pathwidth(bundle.graph).value if bundle.graph.n <= cap else None
            if exact is not None and exact > d.width:
                raise CommandFailed(f"{bundle.slug}: exact width {exact} above constructed {d.width}")
            rows.append({
                "slug": f"{bundle.slug}-k{k}",
                "host": hspec,
                "k": k,
                "n": bundle.graph.n,
                "width_constructed": d.width,
                "width_exact": "" if exact is None else exact,
                "bound": width_bound(k),
                "exact_gt_k": "" if exact is None else int(exact > k),
            })
    rows.sort(key=lambda r: (r["k"], r["slug"]))
    return rows


def bench_summary(rows) -> dict:
    out = {}
    for r in rows:
        k = str(r["k"])
        cur = out.setdefault(k, {"instances": 0, "max_exact": None, "max_constructed": 0, "flagged": []})
        cur["instances"] += 1
        cur["max_constructed"] = max(cur["max_constructed"], r["width_constructed"])
        if r["width_exact"] != "":
            cur["max_exact"] = r["width_exact"] if cur["max_exact"] is None else max(cur["max_exact"], r["width_exact"])
            if r["exact_gt_k"]:
                cur["flagged"].append(r["slug"])
    return out


BENCH_COLUMNS = ["k", "n", "width_constructed", "width_exact", "bound", "exact_gt_k", "host", "slug"]


def cmd_bench(args, report: RunReport):
    ks = _parse_range(args.k)
    with _Timer(report, "bench"):
        rows = bench_rows(ks, args.host, args.reps, args.seed, args.cap_exact or 16)
    out = Path(args.output)
    with out.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    report.outputs["csv"] = str(out)
    report.result = {"summary": bench_summary(rows)}


def cmd_check_decomp(args, report: RunReport):
    g = read_graph(args.graph)
    d = read_decomposition(args.decomposition)
    rep = validate_pathdecomp(g, d) if isinstance(d, PathDecomposition) else validate_treedecomp(g, d)
    report.result = {"kind": "path" if isinstance(d, PathDecomposition) else "tree", **rep.to_json()}
    if not rep.ok:
        raise CommandFailed("decomposition is invalid", violations=rep.violations)


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def common(parser, default):
        # accepted before or after the subcommand; the subparser copy must not clobber the top-level value
        pick = (lambda v: v) if default else (lambda v: argparse.SUPPRESS)
        parser.add_argument("--seed", type=int, default=pick(0))
        parser.add_argument("--cap-exact", type=int, default=pick(None), help="vertex cap for the exact solvers")
        parser.add_argument("--format", choices=["json", "dot"], default=pick("json"))
        parser.add_argument("-v", "--verbose", action="store_true", default=pick(False))

    p = argparse.ArgumentParser(prog="geodecomp", description="Certified decompositions of graphs covered by geodesics.")
    common(p, True)
    shared = argparse.ArgumentParser(add_help=False)
    common(shared, False)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[shared], **kw)

    g = sub.add_parser("gen", help="write a certified instance bundle")
    g.add_argument("generator", choices=["host", "skewer", "biclique", "glued", "mirror", "compound"])
    g.add_argument("--out", default=".")
    g.add_argument("--host", default="grid:4,4")
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--pairs", help="forced endpoints, e.g. 0-3,1-4")
    g.add_argument("--spine-len", type=int, default=3)
    g.add_argument("--pieces", help="comma-separated piece lengths")
    g.add_argument("--t", type=int, default=3)
    g.add_argument("--tree", default="star:3")
    g.add_argument("--parts", type=int, default=2)

    v = sub.add_parser("verify", help="check a certificate against a graph")
    v.add_argument("graph")
    v.add_argument("certificate")
    v.add_argument("--mode", choices=["edge", "vertex"], default=None)

    d = sub.add_parser("decompose", help="build a decomposition from a certificate")
    d.add_argument("graph")
    d.add_argument("certificate")
    d.add_argument("-o", "--output")

    e = sub.add_parser("exact", help="exact pathwidth and treewidth")
    e.add_argument("graph")

    b = sub.add_parser("bench", help="constructed versus exact width on random covers")
    b.add_argument("--k", default="1..4")
    b.add_argument("--host", default="grid")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("-o", "--output", default="bench.csv")

    c = sub.add_parser("check-decomp", help="validate a decomposition file")
    c.add_argument("graph")
    c.add_argument("decomposition")
    return p


COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "exact": cmd_exact,
    "bench": cmd_bench,
    "check-decomp": cmd_check_decomp,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "seed", "verbose")}
    report = RunReport(args.command, inputs, args.seed)
    try:
        text = COMMANDS[args.command](args, report)
    except CommandFailed as exc:
        sys.stdout.write(dumps({"error": str(exc), "command": args.command, **exc.details}))
        return 1
    except (GeodecompError, OSError) as exc:
        sys.stdout.write(dumps({"error": str(exc), "type": type(exc).__name__, "command": args.command}))
        return 1
    if text is not None:
        sys.stdout.write(text)
    else:
        sys.stdout.write(dumps(report.to_json()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
