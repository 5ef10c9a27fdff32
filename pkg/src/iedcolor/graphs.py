"""Graphs, their dual and total hypergraphs, and neighbor-distinguishing labelings.

Graph vertices are ``1..n``; edges keep their input order and are referred to
by 0-based index internally.  In the dual hypergraph, graph edge ``e`` becomes
hypergraph vertex ``e + 1``.  In the total hypergraph, graph vertex ``v``
stays ``v`` and graph edge ``e`` becomes ``n + e + 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Optional, Sequence

import networkx as nx

from .errors import InvalidHypergraph, NotConfiguration, NotGeneralPosition, NotRegular
from .hypergraph import MULTISETS, SETS, Hypergraph, ListAssignment, check_mode, verify


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on ``1..n`` with ordered edges."""

    n: int
    edges: tuple

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for idx, (u, v) in enumerate(edges):
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidHypergraph(f"graph edge {idx} leaves 1..{self.n}")
            if u == v:
                raise InvalidHypergraph(f"graph edge {idx} is a loop")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidHypergraph(f"graph edge {idx} is a parallel edge")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def incident(self) -> tuple:
        """``incident[v]``: indices of edges at ``v``, in edge order."""
        inc = [[] for _ in range(self.n + 1)]
        for idx, (u, v) in enumerate(self.edges):
            inc[u].append(idx)
            inc[v].append(idx)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def adjacency(self) -> tuple:
        adj = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(x)) for x in adj)

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def regularity(self) -> Optional[int]:
        """The common degree if the graph is regular, else ``None``."""
        degs = {self.degree(v) for v in self.vertices}
        return degs.pop() if len(degs) == 1 else None

    def components(self) -> list:
        """Vertex sets of connected components, each sorted, ordered by least vertex."""
        seen = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            out.append(sorted(comp))
        return out

    def subgraph(self, verts: Sequence[int]):
        """Induced subgraph relabelled to ``1..len(verts)``; returns it with the edge index map."""
        pos = {v: i + 1 for i, v in enumerate(verts)}
        edges, emap = [], []
        for idx, (u, v) in enumerate(self.edges):
            if u in pos and v in pos:
                edges.append((pos[u], pos[v]))
                emap.append(idx)
        return Graph(len(verts), tuple(edges)), emap

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


def from_networkx(g: nx.Graph) -> Graph:
    """Relabel nodes in sorted order to ``1..n``; edges are sorted pairs in sorted order."""
    nodes = sorted(g.nodes())
    pos = {x: i + 1 for i, x in enumerate(nodes)}
    edges = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in g.edges())
    return Graph(len(nodes), tuple(edges))


def random_regular_graph(k: int, n: int, seed: int) -> Graph:
    return from_networkx(nx.random_regular_graph(k, n, seed=seed))


def cube_graph() -> Graph:
    return from_networkx(nx.hypercube_graph(3))


def petersen_graph() -> Graph:
    return from_networkx(nx.petersen_graph())


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i % n + 1) for i in range(1, n + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def dual_hypergraph(G: Graph) -> Hypergraph:
    """Hyperedge ``v - 1`` is E(v), the edges at ``v``; vertex ``e + 1`` is graph edge ``e``.

    Isolated vertices have no hyperedge and are rejected.  K2 components give
    two equal hyperedges and are rejected by :class:`Hypergraph`.
    """
    for v in G.vertices:
        if not G.incident[v]:
            raise InvalidHypergraph(f"graph vertex {v} is isolated")
    return Hypergraph(G.m, tuple(tuple(e + 1 for e in G.incident[v]) for v in G.vertices))


def total_hypergraph(G: Graph) -> Hypergraph:
    """Hyperedge ``v - 1`` is ``{v} ∪ E(v)``, listed as ``v`` then its edges."""
    n = G.n
    return Hypergraph(n + G.m, tuple((v,) + tuple(n + e + 1 for e in G.incident[v]) for v in G.vertices))


def is_nice(G: Graph) -> bool:
    """No component is a single edge."""
    for u, v in G.edges:
        if G.degree(u) == 1 and G.degree(v) == 1:
            return False
    return True


# -- graph-side checks (independent of the hypergraph verifiers) --------------


def _same(a: list, b: list, mode: str) -> bool:
    if mode == SETS:
        return set(a) == set(b)
    return sorted(a) == sorted(b)


def edge_labeling_violation(G: Graph, labels: Sequence[int], mode: str = SETS) -> Optional[int]:
    """Index of the first graph edge whose endpoints see equal label sets (or multisets)."""
    check_mode(mode, (SETS, MULTISETS))
    for idx, (u, v) in enumerate(G.edges):
        if _same([labels[e] for e in G.incident[u]], [labels[e] for e in G.incident[v]], mode):
            return idx
    return None


def total_labeling_violation(G: Graph, vertex_labels: dict, labels: Sequence[int], mode: str = SETS) -> Optional[int]:
    check_mode(mode, (SETS, MULTISETS))
    for idx, (u, v) in enumerate(G.edges):
        a = [vertex_labels[u]] + [labels[e] for e in G.incident[u]]
        b = [vertex_labels[v]] + [labels[e] for e in G.incident[v]]
        if _same(a, b, mode):
            return idx
    return None


def distinguishes_by_sets(G: Graph, labels: Sequence[int]) -> bool:
    return edge_labeling_violation(G, labels, SETS) is None


def gap_values(G: Graph, labels: Sequence[int]) -> dict:
    f = {}
    for v in G.vertices:
        inc = [labels[e] for e in G.incident[v]]
        if not inc:
            continue
        f[v] = inc[0] if len(inc) == 1 else max(inc) - min(inc)
    return f


def verify_gap(G: Graph, labels: Sequence[int]) -> Optional[int]:
    """``None`` if the gap vertex coloring is proper, else the first edge with equal gaps."""
    f = gap_values(G, labels)
    for idx, (u, v) in enumerate(G.edges):
        if f[u] == f[v]:
            return idx
    return None


# -- labelings through the coloring algorithm ---------------------------------


@dataclass
class Labeling:
    labels: tuple
    vertex_labels: Optional[dict]
    result: object


def _require_regular(G: Graph) -> int:
    k = G.regularity()
    if k is None or G.m == 0:
        raise NotRegular("coloring mode needs a regular graph with edges")
    return k


def label_edges(G: Graph, lists: ListAssignment, mode: str = SETS, *, seed: int = 0, max_iters: Optional[int] = None) -> Labeling:
    """Edge labeling distinguishing neighbors by sets or multisets, from per-edge lists.

    ``lists[e + 1]`` belongs to graph edge ``e``.
    """
    from .entropy import run

    _require_regular(G)
    H = dual_hypergraph(G)
    res = run(H, lists, mode, seed=seed, max_iters=max_iters)
    labels = tuple(res.coloring.get(e + 1) for e in range(G.m))
    if res.complete:
        assert verify(H, res.coloring, mode) is None
        assert edge_labeling_violation(G, labels, mode) is None
    return Labeling(labels, None, res)


def label_total(G: Graph, lists: ListAssignment, mode: str = SETS, *, seed: int = 0, max_iters: Optional[int] = None) -> Labeling:
    """Total labeling; ``lists[v]`` for vertex ``v`` and ``lists[n + e + 1]`` for edge ``e``."""
    from .entropy import run

    _require_regular(G)
    H = total_hypergraph(G)
    res = run(H, lists, mode, seed=seed, max_iters=max_iters)
    vlabels = {v: res.coloring.get(v) for v in G.vertices}
    labels = tuple(res.coloring.get(G.n + e + 1) for e in range(G.m))
    if res.complete:
        assert verify(H, res.coloring, mode) is None
        assert total_labeling_violation(G, vlabels, labels, mode) is None
    return Labeling(labels, vlabels, res)


# -- line arrangements and configurations --------------------------------------


def _points_hypergraph(lines: Sequence[Sequence[int]]) -> Hypergraph:
    n = max((max(line) for line in lines), default=0)
    return Hypergraph(n, tuple(tuple(line) for line in lines))


def line_arrangement(k: int, lines: Sequence[Sequence[int]]) -> Hypergraph:
    """Hypergraph of points on lines in general position (no point on three lines).

    Points are given combinatorially as integers; each line lists its ``k`` points.
    """
    for idx, line in enumerate(lines):
        if len(line) != k or len(set(line)) != k:
            raise NotGeneralPosition(f"line {idx} does not have {k} distinct points")
    H = _points_hypergraph(lines)
    for v in H.vertices:
        if H.degree(v) > 2:
            raise NotGeneralPosition(f"point {v} lies on {H.degree(v)} lines")
    for p, q in H.intersecting_pairs():
        if len(H.edge_sets[p] & H.edge_sets[q]) > 1:
            raise NotGeneralPosition(f"lines {p} and {q} share more than one point")
    return H


def crossing_lines(count: int, k: int) -> Hypergraph:
    """``count`` lines, every two crossing in their own point, each carrying ``k`` points.

    Line ``a`` lists its crossings with lines ``0..count-1`` in order, then its
    private points.
    """
    if k < count - 1:
        raise NotGeneralPosition(f"{count} pairwise crossing lines need at least {count - 1} points each")
    cross = {}
    nxt = 1
    for a in range(count):
        for b in range(a + 1, count):
            cross[(a, b)] = nxt
            nxt += 1
    lines = []
    for a in range(count):
        line = [cross[(min(a, b), max(a, b))] for b in range(count) if b != a]
        while len(line) < k:
            line.append(nxt)
            nxt += 1
        lines.append(line)
    return line_arrangement(k, lines)


@dataclass(frozen=True)
class Configuration:
    points: int
    lines: tuple
    k: int
    r: int

    def __post_init__(self):
        lines = tuple(tuple(x) for x in self.lines)
        object.__setattr__(self, "lines", lines)
        degree = [0] * (self.points + 1)
        for idx, line in enumerate(lines):
            if len(line) != self.k or len(set(line)) != self.k:
                raise NotConfiguration(f"line {idx} does not have {self.k} distinct points")
            for x in line:
                if not 1 <= x <= self.points:
                    raise NotConfiguration(f"point {x} outside 1..{self.points}")
                degree[x] += 1
        for x in range(1, self.points + 1):
            if degree[x] != self.r:
                raise NotConfiguration(f"point {x} lies on {degree[x]} lines, expected {self.r}")
        sets = [frozenset(line) for line in lines]
        for a in range(len(sets)):
            for b in range(a + 1, len(sets)):
                if len(sets[a] & sets[b]) > 1:
                    raise NotConfiguration(f"lines {a} and {b} share more than one point")

    @property
    def b(self) -> int:
        return len(self.lines)


def configuration_hypergraph(cfg: Configuration) -> Hypergraph:
    return Hypergraph(cfg.points, cfg.lines)


FANO_LINES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


def fano_configuration() -> Configuration:
    return Configuration(7, FANO_LINES, 3, 3)


def pappus_configuration() -> Configuration:
    """A (9,9,3,3) configuration: the affine plane of order 3 minus its vertical lines."""
    def pt(x, y):
        return 3 * x + y + 1

    lines = []
    for slope in range(3):
        for b in range(3):
            lines.append(tuple(pt(x, (slope * x + b) % 3) for x in range(3)))
    return Configuration(9, tuple(lines), 3, 3)


def all_labelings(m: int, labels: Sequence[int] = (1, 2)):
    return product(labels, repeat=m)
