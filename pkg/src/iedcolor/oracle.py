"""Brute-force reference searches, kept independent of the coloring algorithm."""

from __future__ import annotations

from math import prod
from typing import Optional

from .errors import NotNice, SearchSpaceTooLarge, TooLarge
from .graphs import Graph, is_nice
from .hypergraph import MULTISETS, SEQUENCES, SETS, Hypergraph, ListAssignment, PermutationFamily, check_mode

MAX_SPACE = 10**7
MAX_GNDI_EDGES = 22


def _pair_ok(P, Q, col, mode, pi) -> bool:
    a = [col[x] for x in P]
    b = [col[x] for x in Q]
    if mode == SETS:
        return set(a) != set(b)
    if mode == MULTISETS:
        return sorted(a) != sorted(b)
    b = tuple(b)
    return all(tuple(a[j - 1] for j in s) != b for s in pi.perms)


def brute_force_coloring(
    H: Hypergraph, lists: ListAssignment, mode: str = SETS, pi: Optional[PermutationFamily] = None
) -> Optional[dict]:
    """Lexicographically least valid coloring (vertex 1 first, list order), or ``None``.

    Each intersecting pair is checked once its last vertex is colored.
    """
    check_mode(mode)
    space = prod(len(lists[v]) for v in H.vertices)
    if space > MAX_SPACE:
        raise SearchSpaceTooLarge(f"search space {space} exceeds {MAX_SPACE}")
    if mode == SEQUENCES and pi is None:
        pi = PermutationFamily.identity(len(H.edges[0]))
    due = [[] for _ in range(H.n + 1)]
    for p, q in H.intersecting_pairs():
        due[max(H.edge_sets[p] | H.edge_sets[q])].append((H.edges[p], H.edges[q]))
    n = H.n
    col = {}
    pos = [0] * (n + 2)
    v = 1
    while True:
        if v > n:
            return dict(col)
        if v < 1:
            return None
        if pos[v] >= len(lists[v]):
            pos[v] = 0
            col.pop(v, None)
            v -= 1
            if v >= 1:
                pos[v] += 1
            continue
        col[v] = lists[v][pos[v]]
        if all(_pair_ok(P, Q, col, mode, pi) for P, Q in due[v]):
            v += 1
        else:
            pos[v] += 1


def brute_force_labeling(G: Graph, t: int) -> Optional[tuple]:
    """Least labeling with labels ``1..t`` distinguishing neighbors by sets, by backtracking over edges."""
    last_edge = {v: max(G.incident[v]) for v in G.vertices if G.incident[v]}
    closing = [[] for _ in range(G.m)]
    for v, e in last_edge.items():
        closing[e].append(v)
    labels = [0] * G.m

    def vset(v):
        return {labels[e] for e in G.incident[v]}

    def ok(e):
        for v in closing[e]:
            sv = vset(v)
            for u in G.adjacency[v]:
                if last_edge[u] <= e and vset(u) == sv:
                    return False
        return True

    e = 0
    while True:
        if e == G.m:
            return tuple(labels)
        if e < 0:
            return None
        labels[e] += 1
        if labels[e] > t:
            labels[e] = 0
            e -= 1
            continue
        if ok(e):
            e += 1


def brute_force_gndi(G: Graph) -> int:
    """Least number of labels for an edge labeling distinguishing neighbors by sets."""
    if G.m > MAX_GNDI_EDGES:
        raise TooLarge(f"{G.m} edges exceed the limit of {MAX_GNDI_EDGES}")
    if not is_nice(G):
        raise NotNice("graph has a single-edge component")
    t = 1
    while brute_force_labeling(G, t) is None:
        t += 1
    return t
