"""Instance generators shared by the test modules."""

from __future__ import annotations

import itertools

from iedcolor.graphs import Graph, dual_hypergraph, random_regular_graph, total_hypergraph
from iedcolor.hypergraph import Hypergraph


def _canonical(rows, a, b):
    """Canonical form of an a x b biadjacency matrix given as row bitmasks."""
    best = None
    variants = [rows]
    if a == b:
        variants.append(tuple(sum(((r >> j) & 1) << i for i, r in enumerate(rows)) for j in range(b)))
    for mat in variants:
        for perm in itertools.permutations(mat):
            cols = sorted(tuple((r >> j) & 1 for r in perm) for j in range(b))
            key = tuple(cols)
            if best is None or key < best:
                best = key
    return best


def _connected(a, b, rows):
    n = a + b
    adj = [set() for _ in range(n)]
    for i, r in enumerate(rows):
        for j in range(b):
            if (r >> j) & 1:
                adj[i].add(a + j)
                adj[a + j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == n


def connected_bipartite_graphs(max_vertices=8):
    """Every connected bipartite graph on 2..max_vertices vertices, one per isomorphism class."""
    out = []
    for a in range(1, max_vertices // 2 + 1):
        for b in range(a, max_vertices - a + 1):
            seen = set()
            for rows in itertools.product(range(1, 1 << b), repeat=a):
                if list(rows) != sorted(rows):
                    continue
                if not _connected(a, b, rows):
                    continue
                key = _canonical(rows, a, b)
                if key in seen:
                    continue
                seen.add(key)
                edges = [(i + 1, a + j + 1) for i, r in enumerate(rows) for j in range(b) if (r >> j) & 1]
                out.append(Graph(a + b, tuple(edges)))
    return out


def random_uniform_hypergraph(rng, n, m, k, max_degree):
    """Random k-uniform hypergraph with distinct edges and degrees at most max_degree (may have fewer than m edges)."""
    degree = [0] * (n + 1)
    edges, seen = [], set()
    for _ in range(50 * m):
        if len(edges) == m:
            break
        free = [v for v in range(1, n + 1) if degree[v] < max_degree]
        if len(free) < k:
            break
        e = tuple(rng.sample(free, k))
        if frozenset(e) in seen:
            continue
        seen.add(frozenset(e))
        edges.append(e)
        for v in e:
            degree[v] += 1
    used = sorted({v for e in edges for v in e})
    pos = {v: i + 1 for i, v in enumerate(used)}
    return Hypergraph(len(used), tuple(tuple(pos[v] for v in e) for e in edges))


def regular_duals_and_totals():
    """Duals and totals of random regular graphs with at most 60 hypergraph vertices."""
    out = []
    for k, sizes in ((3, (8, 12, 20, 40)), (4, (6, 10, 20, 30)), (5, (8, 12, 24))):
        for i, N in enumerate(sizes):
            out.append(("dual", dual_hypergraph(random_regular_graph(k, N, seed=100 * k + i))))
    for k, sizes in ((2, (6, 15, 30)), (3, (6, 12, 24)), (4, (6, 10, 20))):
        for i, N in enumerate(sizes):
            out.append(("total", total_hypergraph(random_regular_graph(k, N, seed=200 * k + i))))
    return out
