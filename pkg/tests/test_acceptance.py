"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (also repeated in the pytest
terminal summary) and then asserts the same condition.
"""

import itertools
import math
import random
import time

import pytest

from iedcolor import bounds
from iedcolor.cli import required_size
from iedcolor.entropy import decode_result, iteration_stats, run, run_sequences
from iedcolor.gndi import (
    NaeFormula,
    bipartition,
    build_gadget,
    fano_hypergraph,
    fano_incidence,
    girth,
    gndi_bipartite,
    nae_satisfiable,
    property_b,
)
from iedcolor.graphs import (
    all_labelings,
    complete_bipartite,
    configuration_hypergraph,
    crossing_lines,
    cycle_graph,
    distinguishes_by_sets,
    dual_hypergraph,
    fano_configuration,
    is_nice,
    pappus_configuration,
    path_graph,
    random_regular_graph,
    verify_gap,
)
from iedcolor.hypergraph import (
    ListAssignment,
    PermutationFamily,
    uniformity,
    verify,
    verify_sequences,
)
from iedcolor.oracle import brute_force_coloring, brute_force_gndi

from helpers import connected_bipartite_graphs, random_uniform_hypergraph, regular_duals_and_totals

CAP = 10**6


# -- shared corpus for criteria 4, 5 and 6 ----------------------------------------------


def _set_corpus():
    insts = [h for _, h in regular_duals_and_totals()]
    insts += [configuration_hypergraph(fano_configuration()), configuration_hypergraph(pappus_configuration())]
    rng = random.Random(4)
    while len(insts) < 40:
        k = rng.choice((3, 4, 5))
        H = random_uniform_hypergraph(rng, rng.randint(k + 2, 60), rng.randint(3, 30), k, rng.randint(2, 4))
        if H.m >= 2 and H.max_degree >= 2:
            insts.append(H)
    for H in insts:
        assert uniformity(H) in (3, 4, 5) and H.n <= 60 and H.max_degree <= 4
    return insts


def _sequence_corpus():
    out = []
    for _, H in regular_duals_and_totals():
        out.append(H)
    out.append(crossing_lines(4, 6))
    out.append(crossing_lines(5, 12))
    out.append(dual_hypergraph(random_regular_graph(10, 11, seed=1)))
    return out


@pytest.fixture(scope="module")
def corpus_runs():
    """200 set/multiset runs and 50 sequence runs, instrumented and decoded."""
    start = time.perf_counter()
    insts = _set_corpus()
    rows = []
    for idx in range(200):
        H = insts[idx % len(insts)]
        mode = ("sets", "multisets")[(idx // len(insts)) % 2]
        R = required_size(H, mode)
        L = ListAssignment.uniform(H.n, R)
        row = {"mode": mode, "invariant": True}
        try:
            res = run(H, L, mode, seed=idx, max_iters=CAP, check=True)
        except AssertionError:
            row.update(invariant=False, complete=False, valid=False, decoded=False)
            rows.append(row)
            continue
        row["complete"] = res.complete
        row["valid"] = res.complete and verify(H, res.coloring, mode) is None
        row["decoded"] = decode_result(H, L, res) == res.draws
        rows.append(row)
    elapsed = time.perf_counter() - start
    seqs = _sequence_corpus()
    families = []
    for idx in range(50):
        H = seqs[idx % len(seqs)]
        k = uniformity(H)
        pi = PermutationFamily.identity(k) if idx % 2 == 0 else PermutationFamily.with_reversal(k)
        R = required_size(H, "sequences", pi.size)
        L = ListAssignment.uniform(H.n, R)
        row = {"mode": "sequences", "invariant": True}
        try:
            res = run_sequences(H, pi, L, seed=1000 + idx, max_iters=CAP, check=True)
        except AssertionError:
            row.update(invariant=False, complete=False, valid=False, decoded=False)
            families.append(row)
            continue
        row["complete"] = res.complete
        row["valid"] = res.complete and verify_sequences(H, pi, res.coloring) is None
        row["decoded"] = decode_result(H, L, res, pi) == res.draws
        families.append(row)
    return {"sets": rows, "sequences": families, "elapsed": elapsed}


# -- criteria ------------------------------------------------------------------------


def test_criterion_01_fubini(report):
    start = time.perf_counter()
    ref = bounds.fubini_recurrence(12)
    mine = [bounds.fubini(n) for n in range(13)]
    f3 = sum(math.factorial(i) * bounds.stirling2(3, i) for i in range(4))
    elapsed = time.perf_counter() - start
    ok = mine == ref and f3 == 13 and bounds.fubini(3) == 13 and elapsed < 1
    report(1, ok, f"f_0..f_12 match recurrence, f_3={f3}, {elapsed:.3f}s (<1s)")
    assert ok


def test_criterion_02_bound_identities(report):
    start = time.perf_counter()
    bad = []
    for k in range(3, 41):
        pairs = (
            (bounds.bound_ieds(k, 2, {k - 1}), bounds.cor_edge_sets(k)),
            (bounds.bound_iedm(k, 2, {k - 1}), bounds.cor_edge_multisets(k)),
            (bounds.bound_ieds(k + 1, 2, {k}), bounds.cor_total_sets(k)),
            (bounds.bound_iedm(k + 1, 2, {k}), bounds.cor_total_multisets(k)),
            (bounds.bound_sequences(k, 2, {k - 1}, 1), bounds.cor_graph_sequences(k)),
            (bounds.bound_sequences(k, 2, {k - 1}, 2), bounds.cor_lines_sequences(k)),
        )
        bad += [(k, j) for j, (a, b) in enumerate(pairs) if a != b]
    s6 = bounds.bound_sequences(6, 2, {5}, 1)
    s10 = bounds.bound_sequences(10, 2, {9}, 1)
    s12 = bounds.bound_sequences(12, 2, {11}, 2)
    elapsed = time.perf_counter() - start
    ok = not bad and (s6, s10, s12) == (3, 2, 2) and elapsed < 5
    report(2, ok, f"{len(bad)} mismatches over k=3..40; sequences k=6 -> {s6}, k=10 -> {s10}, pi=2 k=12 -> {s12}; {elapsed:.2f}s (<5s)")
    assert ok


def test_criterion_03_thresholds(report):
    start = time.perf_counter()
    checks = bounds.corollary_threshold_checks()
    elapsed = time.perf_counter() - start
    ok = all(c.ok for c in checks) and elapsed < 5
    report(3, ok, "; ".join(f"{c.name} k={c.k}: {c.bound} <= {float(c.limit):g}" for c in checks) + f"; {elapsed:.2f}s (<5s)")
    assert ok


def test_criterion_04_soundness(corpus_runs, report):
    rows = corpus_runs["sets"]
    failures = sum(1 for r in rows if not (r["complete"] and r["valid"]))
    elapsed = corpus_runs["elapsed"]
    ok = len(rows) == 200 and failures == 0 and elapsed < 60
    report(4, ok, f"{len(rows)} runs at the theorem list size, {failures} failures, cap {CAP}, {elapsed:.1f}s (<60s)")
    assert ok


def test_criterion_05_round_trip(corpus_runs, report):
    rows = corpus_runs["sets"] + corpus_runs["sequences"]
    mismatches = sum(1 for r in rows if not r["decoded"])
    seq_complete = all(r["complete"] and r["valid"] for r in corpus_runs["sequences"])
    ok = len(rows) == 250 and mismatches == 0 and seq_complete
    report(5, ok, f"{len(rows)} runs decoded ({len(corpus_runs['sequences'])} sequence runs), {mismatches} mismatches")
    assert ok


def test_criterion_06_partial_invariant(corpus_runs, report):
    rows = corpus_runs["sets"] + corpus_runs["sequences"]
    broken = sum(1 for r in rows if not r["invariant"])
    ok = broken == 0
    report(6, ok, f"partial-coloring check after every iteration of {len(rows)} runs, {broken} assertion failures")
    assert ok


def _small_instances(count, seed=21):
    """Random instances whose list-respecting colorings number at most 10^6."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        mode = rng.choice(("sets", "multisets", "sequences"))
        k = rng.randint(2, 7)
        n = rng.randint(k + 1, 13)
        H = random_uniform_hypergraph(rng, n, rng.randint(2, 4), k, rng.randint(2, 3))
        if H.m < 2 or H.max_degree < 2:
            continue
        k = uniformity(H)
        pi = None
        if mode == "sequences":
            pi = rng.choice((PermutationFamily.identity(k), PermutationFamily.with_reversal(k)))
        R = required_size(H, mode, pi.size if pi else 1)
        if R**H.n > 10**6:
            continue
        palette = list(range(1, R + 4))
        lists = ListAssignment(tuple(tuple(rng.sample(palette, R)) for _ in H.vertices))
        out.append((H, lists, mode, pi))
    return out


def test_criterion_07_oracle_agreement(report):
    start = time.perf_counter()
    insts = _small_instances(100)
    counter = 0
    modes = {}
    for idx, (H, lists, mode, pi) in enumerate(insts):
        modes[mode] = modes.get(mode, 0) + 1
        found = brute_force_coloring(H, lists, mode, pi)
        if mode == "sequences":
            res = run_sequences(H, pi, lists, seed=idx, max_iters=10**5)
        else:
            res = run(H, lists, mode, seed=idx, max_iters=10**5)
        if found is None or not res.complete:
            counter += 1
    elapsed = time.perf_counter() - start
    ok = counter == 0
    mix = ", ".join(f"{m} {c}" for m, c in sorted(modes.items()))
    report(7, ok, f"{len(insts)} brute-forceable instances ({mix}), {counter} counterexamples, {elapsed:.1f}s")
    assert ok


def _slope(xs, ys):
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def test_criterion_08_iteration_scaling(report):
    start = time.perf_counter()
    sizes = (50, 100, 200, 400)
    R = bounds.bound_ieds(4, 2, {3})
    data = {}
    for n in sizes:
        H = dual_hypergraph(random_regular_graph(4, n // 2, seed=n))
        assert H.n == n
        data[n] = iteration_stats(H, ListAssignment.uniform(n, R), "sets", trials=40, seed_base=n)
    slopes = []
    for a, b in zip(sizes, sizes[1:]):
        xs = [a] * 40 + [b] * 40
        ys = data[a].counts + data[b].counts
        slopes.append(_slope(xs, ys))
    ratios = [s2 / s1 for s1, s2 in zip(slopes, slopes[1:])]
    const = max(data[n].mean / data[n].reference for n in sizes)
    elapsed = time.perf_counter() - start
    ok = all(0.5 <= r <= 2 for r in ratios) and elapsed < 120
    means = ", ".join(f"n={n}: {data[n].mean:.1f}" for n in sizes)
    report(
        8,
        ok,
        f"means {means}; slopes {[round(s, 3) for s in slopes]}, ratios {[round(r, 3) for r in ratios]} in [0.5, 2]; "
        f"mean <= {const:.4f} n R ln R; {elapsed:.1f}s (<120s)",
    )
    assert ok


def test_criterion_09_gndi_corpus(report):
    start = time.perf_counter()
    graphs = [G for G in connected_bipartite_graphs(8) if is_nice(G)]
    disagree = sum(1 for G in graphs if gndi_bipartite(G) != brute_force_gndi(G))
    named = (
        gndi_bipartite(path_graph(4)) == 3,
        gndi_bipartite(cycle_graph(4)) == 2,
        gndi_bipartite(complete_bipartite(3, 3)) == 2,
        gndi_bipartite(fano_incidence()) == 3,
        property_b(fano_hypergraph()) is None,
    )
    elapsed = time.perf_counter() - start
    ok = disagree == 0 and all(named) and elapsed < 120
    report(9, ok, f"{len(graphs)} nice connected bipartite graphs (<=8 vertices), {disagree} disagreements; P4/C4/K33/Fano/property B as expected: {all(named)}; {elapsed:.1f}s (<120s)")
    assert ok


def test_criterion_10_gadget(report):
    start = time.perf_counter()
    clauses = [c for size in (2, 3) for c in itertools.combinations(range(1, 5), size)]
    total = wrong = structural = 0
    for count in range(1, 5):
        for combo in itertools.combinations_with_replacement(clauses, count):
            phi = NaeFormula(4, combo)
            G = build_gadget(phi, 4).graph
            total += 1
            sat = nae_satisfiable(phi) is not None
            if (gndi_bipartite(G) == 2) != sat:
                wrong += 1
            bipartition(G)
            g = girth(G)
            if max(G.degree(v) for v in G.vertices) > 3 or (g is not None and g < 4):
                structural += 1
    elapsed = time.perf_counter() - start
    ok = wrong == 0 and structural == 0 and elapsed < 120
    report(10, ok, f"{total} formulas (<=4 variables, <=4 clauses of size 2-3), {wrong} equivalence failures, {structural} structural failures; {elapsed:.1f}s (<120s)")
    assert ok


def test_criterion_11_gap_equivalence(report):
    start = time.perf_counter()
    graphs = [G for G in connected_bipartite_graphs(8) if min(G.degree(v) for v in G.vertices) >= 2]
    checked = wrong = 0
    for G in graphs:
        for lab in all_labelings(G.m):
            checked += 1
            if (verify_gap(G, lab) is None) != distinguishes_by_sets(G, lab):
                wrong += 1
    elapsed = time.perf_counter() - start
    ok = wrong == 0
    report(11, ok, f"{len(graphs)} graphs, {checked} labelings, {wrong} discrepancies; {elapsed:.1f}s")
    assert ok
