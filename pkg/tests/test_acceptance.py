"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time

import networkx as nx
import pytest

from geodecomp.cli import bench_rows, bench_summary
from geodecomp.cover import decompose_by_cover, key_separator, separator_bound, theorem_separator, width_bound
from geodecomp.graph import INF, bfs_distances, build_graph, connected_components, induced_subgraph
from geodecomp.instances import (
    gen_biclique_trees,
    gen_block_compound,
    gen_glued_trees,
    gen_host_geodesics,
    gen_layered,
    gen_mirror,
    gen_skewer,
    random_geodesic,
)
from geodecomp.metric import is_parallel, make_anchor
from geodecomp.oracle import brute_pathwidth, exact_pathwidth, exact_treewidth, parallel_oracle
from geodecomp.skewer import check_no_crossing, skewer_pathdecomp, skewer_recognize
from geodecomp.trees import Tree, decompose_two_trees, leaf_median_profile, reconstruct_from_profile, tree_from_spec, verify_tree_cover, verify_trees
from geodecomp.width import layering_pathdecomp, layering_to_order, validate_layering, validate_pathdecomp, validate_treedecomp, vertex_separation

from conftest import random_graph, to_nx

TIME_LIMIT = 10.0


@pytest.fixture
def report(capsys):
    def emit(number, failures, detail):
        status = "PASS" if not failures else "FAIL"
        with capsys.disabled():
            print(f"\n{status} criterion {number}: {detail}" + (f" ({len(failures)} failures, first: {failures[0]})" if failures else ""))
        assert not failures
    return emit


def nx_separates(g, X, A, B):
    """Independent flood fill: no component of g - X meets both A - X and B - X."""
    h = to_nx(g)
    h.remove_nodes_from(X)
    want = set(B) - set(X)
    for comp in nx.connected_components(h):
        if comp & set(A) and comp & want:
            return False
    return True


def host_corpus():
    rng = random.Random(2024)
    out = []
    for k in range(1, 6):
        for i in range(24):
            out.append((f"grid:{rng.randint(2, 8)},{rng.randint(2, 8)}", k, rng.randrange(1 << 30)))
            n = rng.randint(8, 40)
            out.append((f"gnp:{n},{min(0.6, 3.0 / n):.3f}", k, rng.randrange(1 << 30)))
    return out


@pytest.fixture(scope="module")
def corpus():
    rows = []
    for host, k, seed in host_corpus():
        b = gen_host_geodesics(host, k, seed)
        t0 = time.perf_counter()
        d, audit = decompose_by_cover(b.graph, b.paths)
        elapsed = time.perf_counter() - t0
        rows.append((b, k, d, audit, elapsed))
    return rows


def per_component(b):
    """``(subgraph, local paths)`` for every component of the instance graph."""
    for comp in connected_components(b.graph):
        h, fwd, _ = induced_subgraph(b.graph, comp)
        cs = set(comp)
        sub = [[fwd[v] for v in p] for p in b.paths if p[0] in cs]
        if sub:
            yield h, sub


def test_criterion_01_width_bound(corpus, report):
    failures = []
    worst = 0.0
    for b, k, d, audit, elapsed in corpus:
        worst = max(worst, elapsed)
        if not validate_pathdecomp(b.graph, d).ok:
            failures.append(f"{b.slug}: invalid decomposition")
        if d.width > width_bound(k):
            failures.append(f"{b.slug}: width {d.width} > {width_bound(k)}")
        if elapsed >= TIME_LIMIT:
            failures.append(f"{b.slug}: {elapsed:.1f}s")
    widths = max(d.width for _, _, d, _, _ in corpus)
    report(1, failures, f"{len(corpus)} host-geodesic instances, max width {widths}, slowest {worst:.2f}s")
    assert len(corpus) >= 200


def test_criterion_02_separator_certificates(corpus, report):
    failures = []
    bases = 0
    for b, k, _, _, _ in corpus:
        for h, paths in per_component(b):
            for i in range(len(paths)):
                cert = theorem_separator(h, paths, i)
                bases += 1
                base = cert.family.paths[0]
                if len(cert.X) > separator_bound(k):
                    failures.append(f"{b.slug} base {i}: |X|={len(cert.X)}")
                if not nx_separates(h, cert.X, base, cert.labeling.bad):
                    failures.append(f"{b.slug} base {i}: X does not separate")
                dist = bfs_distances(h, base[0])
                for comp in connected_components(h, cert.X):
                    if not set(base) & set(comp):
                        continue
                    sub, _, back = induced_subgraph(h, comp)
                    layers = {}
                    for local, v in enumerate(back):
                        layers.setdefault(dist[v], []).append(local)
                    rep = validate_layering(sub, [layers[d] for d in sorted(layers)], 6 * k)
                    if not rep.ok:
                        failures.append(f"{b.slug} base {i}: component not {6 * k}-layered")
    report(2, failures, f"{bases} base separators checked on {len(corpus)} instances")


def test_criterion_03_key_separators(corpus, report):
    failures = []
    checked = 0
    for b, _, _, _, _ in corpus:
        for h, paths in per_component(b):
            for i in range(len(paths)):
                cert = theorem_separator(h, paths, i)
                k_red = cert.family.k_red
                bundle = cert.bundle
                cands = [t for _, _, t in cert.labeling.tails] + [cert.family.paths[j] for j in cert.labeling.avoiding]
                for A in cands:
                    for pi, piece in enumerate(bundle.pieces):
                        if not set(A) & bundle.piece_sets[pi]:
                            continue
                        sep = key_separator(bundle, A, piece)
                        checked += 1
                        if sep.size > 30 * k_red:
                            failures.append(f"{b.slug}: key separator {sep.size} > {30 * k_red}")
                        if any(s > 18 * k_red for s in sep.parts):
                            failures.append(f"{b.slug}: directional separator {sep.parts} > {18 * k_red}")
                        if not nx_separates(bundle.g0, sep.X, sep.side_a, bundle.base):
                            failures.append(f"{b.slug}: key separator does not separate")
    report(3, failures, f"{checked} key separators checked")


def test_criterion_04_layering_and_exact_pathwidth(report):
    failures = []
    rng = random.Random(4)
    for trial in range(500):
        k = 1 + trial % 5
        g, layers = gen_layered(k, rng.randint(1, 40), rng.randrange(1 << 30))
        if not validate_layering(g, layers, k).ok:
            failures.append(f"layered trial {trial}: generator produced an invalid layering")
            continue
        d = layering_pathdecomp(g, layers)
        if not validate_pathdecomp(g, d).ok or d.width > k:
            failures.append(f"layered trial {trial}: pinned width {d.width} > {k}")
        if vertex_separation(g, layering_to_order(g, layers)) > k:
            failures.append(f"layered trial {trial}: order width above {k}")
    atlas = 0
    for h in nx.graph_atlas_g()[1:]:
        g = build_graph(h.number_of_nodes(), list(h.edges()))
        atlas += 1
        if exact_pathwidth(g).value != brute_pathwidth(g).value:
            failures.append(f"atlas graph {sorted(h.edges())}")
    for trial in range(200):
        g = random_graph(rng, 8, rng.uniform(0.15, 0.7))
        if exact_pathwidth(g).value != brute_pathwidth(g).value:
            failures.append(f"n=8 trial {trial}")
    report(4, failures, f"500 layered graphs, {atlas} graphs with n <= 7, 200 random n=8")


def test_criterion_05_skewers(report):
    failures = []
    done = agreed = 0
    seed = 0
    while done < 100:
        seed += 1
        b = gen_skewer(1 + seed % 4, seed=seed)
        if b.graph.n > 22:
            continue
        done += 1
        s = skewer_recognize(b.graph, *b.paths)
        d = skewer_pathdecomp(s)
        exact = exact_pathwidth(b.graph).value
        if not validate_pathdecomp(b.graph, d).ok or d.width > 2:
            failures.append(f"{b.slug}: constructed width {d.width}")
        if exact > 2:
            failures.append(f"{b.slug}: exact pathwidth {exact}")
        if any(len(p["q"]) > 2 for p in s.pieces[1:-1]):
            agreed += 1
            if exact != 2 or d.width != 2:
                failures.append(f"{b.slug}: even cycle present but widths {d.width}/{exact}")
    report(5, failures, f"{done} skewers, {agreed} with an even-cycle piece")


def test_criterion_06_three_path_covers(report):
    failures = []
    rng = random.Random(6)
    done = 0
    worst = 0
    while done < 120:
        host = rng.choice([f"grid:{rng.randint(2, 6)},{rng.randint(2, 6)}", f"gnp:{rng.randint(6, 24)},0.2", f"cycle:{rng.randint(3, 16)}"])
        b = gen_host_geodesics(host, 3, rng.randrange(1 << 30))
        if b.graph.n > 18:
            continue
        done += 1
        pw = exact_pathwidth(b.graph).value
        worst = max(worst, pw)
        if pw > 3:
            failures.append(f"{b.slug} on {host}: pw {pw}")
    report(6, failures, f"{done} three-path covers, max exact pathwidth {worst}")


def test_criterion_07_no_crossing(report):
    failures = []
    rng = random.Random(7)
    done = 0
    while done < 2000:
        g = random_graph(rng, rng.randint(3, 14), rng.uniform(0.15, 0.6))
        s1, t1, s2, t2 = (rng.randrange(g.n) for _ in range(4))
        if INF in (bfs_distances(g, s1)[t1], bfs_distances(g, s2)[t2]):
            continue
        P = random_geodesic(g, s1, t1, rng)
        Q = random_geodesic(g, s2, t2, rng)
        ok, triple = check_no_crossing(g, P, Q)
        if not ok:
            failures.append((P, Q, triple))
        done += 1
    report(7, failures, f"{done} shortest-path pairs")


def tree_instances():
    rng = random.Random(8)
    c4 = build_graph(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    out = [("c4", c4, [Tree([], [(0, 2), (2, 1)]), Tree([], [(0, 3), (3, 1)])])]
    i = 0
    while len(out) < 100:
        i += 1
        kind = i % 3
        if kind == 0:
            b = gen_mirror(f"random:{rng.randint(3, 14)}", rng.randrange(1 << 30))
        elif kind == 1:
            while True:
                t = tree_from_spec(f"random:{rng.randint(3, 12)}", rng.randrange(1 << 30))
                if len(t.leaves) >= 2:
                    break
            b = gen_glued_trees(t, 2)
        else:
            b = gen_block_compound(rng.randint(2, 4), rng.randrange(1 << 30))
        out.append((b.slug, b.graph, b.trees))
    return out


def test_criterion_08_two_tree_covers(report):
    failures = []
    small = 0
    for name, g, trees in tree_instances():
        td, _ = decompose_two_trees(g, *trees)
        if not validate_treedecomp(g, td).ok or td.width > 2:
            failures.append(f"{name}: width {td.width}")
        if g.n <= 16:
            small += 1
            tw = exact_treewidth(g).value
            if tw > 2:
                failures.append(f"{name}: exact treewidth {tw}")
    report(8, failures, f"100 two-tree instances, {small} checked by the exact treewidth solver")


def test_criterion_09_extremal_contrasts(report):
    failures = []
    for t in (2, 3):
        b = gen_biclique_trees(t)
        tw = exact_treewidth(b.graph).value
        if tw < t:
            failures.append(f"biclique t={t}: tw {tw}")
        if verify_trees(b.graph, b.trees).ok or verify_tree_cover(b.graph, *b.trees).ok:
            failures.append(f"biclique t={t}: accepted in edge mode")
    glued = gen_glued_trees("star:3", 3)
    tw = exact_treewidth(glued.graph).value
    if tw != 3:
        failures.append(f"three glued stars: tw {tw}")
    report(9, failures, "biclique t=2,3 and three glued 3-leaf stars")


def test_criterion_10_parallel_characterisation(report):
    failures = []
    rng = random.Random(10)
    counts = {True: 0, False: 0}
    while sum(counts.values()) < 1200:
        g = random_graph(rng, rng.randint(3, 12), rng.uniform(0.2, 0.6))
        a1, b1 = rng.sample(range(g.n), 2)
        if bfs_distances(g, a1)[b1] == INF:
            continue
        anchor = make_anchor(g, a1, b1)
        if rng.random() < 0.5:
            geo = random_geodesic(g, a1, b1, rng)
            i = rng.randrange(len(geo))
            q = geo[i:rng.randint(i + 1, len(geo))]
            if rng.random() < 0.5:
                q = q[::-1]
        else:
            q = [rng.randrange(g.n)]
            while len(q) < rng.randint(1, 6):
                nxt = [w for w in g.adj[q[-1]] if w not in q]
                if not nxt:
                    break
                q.append(rng.choice(nxt))
        want = parallel_oracle(g, anchor, q)
        if want is None:
            continue
        got = is_parallel(anchor, g, q)
        counts[want] += 1
        if got != want:
            failures.append((a1, b1, q, got, want))
    report(10, failures, f"{sum(counts.values())} cases ({counts[True]} parallel, {counts[False]} not)")


def _labelled(t):
    h = nx.Graph()
    leaves = set(t.leaves)
    h.add_nodes_from((v, {"leaf": v if v in leaves else None}) for v in t.vertices)
    h.add_edges_from(t.edges)
    return h


def test_criterion_11_reconstruction_round_trip(report):
    failures = []
    rng = random.Random(11)
    done = 0
    while done < 500:
        t = tree_from_spec(f"random:{rng.randint(4, 24)}", rng.randrange(1 << 30))
        if not 3 <= len(t.leaves) <= 12:
            continue
        done += 1
        u = reconstruct_from_profile(t.leaves, leaf_median_profile(t))
        if not nx.is_isomorphic(_labelled(t), _labelled(u), node_match=lambda a, b: a["leaf"] == b["leaf"]):
            failures.append(t.edges)
    report(11, failures, f"{done} trees with 3 to 12 leaves")


def test_criterion_12_bench_report(report, capsys):
    rows = bench_rows(range(1, 5), "grid", 10, 12, 16)
    summary = bench_summary(rows)
    failures = []
    for r in rows:
        if r["width_exact"] != "" and not r["width_exact"] <= r["width_constructed"] <= r["bound"]:
            failures.append(r["slug"])
    with capsys.disabled():
        for k, s in sorted(summary.items()):
            flagged = ", ".join(s["flagged"]) or "none"
            print(f"\n  k={k}: {s['instances']} instances, max exact pw {s['max_exact']}, "
                  f"max constructed {s['max_constructed']}, bound {width_bound(int(k))}, exact > k: {flagged}")
    report(12, failures, f"bench over k=1..4, {len(rows)} rows (exact > k is reported, not asserted)")
