"""Two-label neighbor-distinguishing edge labelings of bipartite graphs via positive NAE-SAT.

A labeling with labels {1, 2} that distinguishes neighbors by sets splits the
vertices into ``X`` (all incident labels equal) and ``Y`` (both labels
present).  In a connected bipartite graph ``X`` is one bipartition class, so
such a labeling exists iff the NAE formula derived from one of the classes is
satisfiable: one variable per vertex of the chosen class, one clause per
vertex of the other class listing its neighbors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import (
    BadClauseSize,
    LabelingInvalid,
    NotBipartite,
    NotDistinguishing,
    NotNice,
    TooLarge,
)
from .graphs import FANO_LINES, Graph, distinguishes_by_sets, is_nice
from .hypergraph import Hypergraph

MAX_VARIABLES = 64


@dataclass(frozen=True)
class NaeFormula:
    """Positive NAE formula; clauses are tuples of 1-based variables (duplicates allowed)."""

    nvars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for idx, c in enumerate(clauses):
            if not c:
                raise ValueError(f"clause {idx} is empty")
            if len(set(c)) != len(c):
                raise ValueError(f"clause {idx} repeats a variable")
            for x in c:
                if not 1 <= x <= self.nvars:
                    raise ValueError(f"clause {idx} uses variable {x} outside 1..{self.nvars}")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[x - 1]`` is the value of variable ``x``."""
        for c in self.clauses:
            vals = {assignment[x - 1] for x in c}
            if len(vals) < 2:
                return False
        return True

    def occurrences(self, x: int) -> int:
        return sum(1 for c in self.clauses if x in c)


def nae_satisfiable(phi: NaeFormula, forced_true: Iterable[int] = ()) -> Optional[tuple]:
    """Least satisfying assignment (False before True, variable 1 first) or ``None``.

    Backtracking over variables in order; a clause is checked as soon as its
    largest variable is assigned.
    """
    forced = set(forced_true)
    n = phi.nvars
    closing = [[] for _ in range(n + 1)]
    for c in phi.clauses:
        closing[max(c)].append(c)
    # a clause of size 1 can never be satisfied
    if any(len(c) < 2 for c in phi.clauses):
        return None
    values = [False] * n

    stack = [(1, 0)]  # (variable, choice index)
    while stack:
        x, choice = stack.pop()
        if x > n:
            return tuple(values)
        options = (True,) if x in forced else (False, True)
        if choice >= len(options):
            continue
        stack.append((x, choice + 1))
        values[x - 1] = options[choice]
        if all(len({values[y - 1] for y in c}) == 2 for c in closing[x]):
            stack.append((x + 1, 0))
    return None


def nae_exhaustive(phi: NaeFormula, forced_true: Iterable[int] = ()) -> Optional[tuple]:
    """Reference solver trying all assignments in the same order as :func:`nae_satisfiable`."""
    forced = set(forced_true)
    for values in product((False, True), repeat=phi.nvars):
        if any(not values[x - 1] for x in forced):
            continue
        if phi.satisfied_by(values):
            return values
    return None


def property_b(H: Hypergraph) -> Optional[tuple]:
    """A 2-coloring (colors 1 and 2, indexed by vertex - 1) with no monochromatic edge."""
    sol = nae_satisfiable(NaeFormula(H.n, tuple(H.edges)))
    if sol is None:
        return None
    return tuple(1 if x else 2 for x in sol)


def fano_hypergraph() -> Hypergraph:
    return Hypergraph(7, FANO_LINES)


def fano_incidence() -> Graph:
    """Incidence graph of the Fano plane: points ``1..7``, lines ``8..14``."""
    edges = []
    for j, line in enumerate(FANO_LINES):
        for p in sorted(line):
            edges.append((p, 8 + j))
    return Graph(14, tuple(edges))


# -- bipartite structure ---------------------------------------------------------


def bipartition(G: Graph):
    """``(A, B)`` by BFS; in each component the least vertex goes to ``A``."""
    side = {}
    for s in G.vertices:
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in G.adjacency[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    raise NotBipartite(f"odd cycle through edge {x}-{y}")
    A = tuple(v for v in G.vertices if side[v] == 0)
    B = tuple(v for v in G.vertices if side[v] == 1)
    return A, B


def _class(G: Graph, which: str):
    A, B = bipartition(G)
    if which == "A":
        return A, B
    if which == "B":
        return B, A
    raise ValueError("class must be 'A' or 'B'")


@dataclass(frozen=True)
class DerivedFormula:
    formula: NaeFormula
    variables: tuple  # variables[x - 1] is the graph vertex of variable x
    clause_vertices: tuple

    def var_of(self, v: int) -> int:
        return self.variables.index(v) + 1


def derived_formula(G: Graph, which: str = "A") -> DerivedFormula:
    """One variable per vertex of the chosen class, one clause per vertex of the other class."""
    mine, other = _class(G, which)
    var = {v: i + 1 for i, v in enumerate(mine)}
    clauses = tuple(tuple(var[u] for u in G.adjacency[b]) for b in other if G.adjacency[b])
    cverts = tuple(b for b in other if G.adjacency[b])
    return DerivedFormula(NaeFormula(len(mine), clauses), mine, cverts)


def incidence_graph(d: DerivedFormula) -> Graph:
    """Rebuild the graph on the original vertex numbers from a derived formula."""
    edges = []
    for b, clause in zip(d.clause_vertices, d.formula.clauses):
        for x in clause:
            u = d.variables[x - 1]
            edges.append(tuple(sorted((u, b))))
    n = max(list(d.variables) + list(d.clause_vertices), default=0)
    return Graph(n, tuple(sorted(edges)))


def labeling_from_assignment(G: Graph, assignment: Sequence[bool], which: str = "A") -> tuple:
    """Edges at a class vertex whose variable is true get label 1, the rest 2."""
    mine, _ = _class(G, which)
    value = {v: assignment[i] for i, v in enumerate(mine)}
    labels = []
    for u, v in G.edges:
        x = u if u in value else v
        labels.append(1 if value[x] else 2)
    return tuple(labels)


def assignment_from_labeling(G: Graph, labels: Sequence[int], which: str = "A") -> tuple:
    """Inverse of :func:`labeling_from_assignment` for labelings whose monochromatic class is the chosen one."""
    if set(labels) - {1, 2}:
        raise LabelingInvalid("labels must be 1 or 2")
    if not distinguishes_by_sets(G, labels):
        raise NotDistinguishing("labeling does not distinguish neighbors by sets")
    mine, _ = _class(G, which)
    out = []
    for v in mine:
        seen = {labels[e] for e in G.incident[v]}
        if len(seen) != 1:
            raise LabelingInvalid(f"vertex {v} of the chosen class sees both labels")
        out.append(seen == {1})
    return tuple(out)


def _forced_vars(G: Graph, mine: Sequence[int], forced_ones: Iterable[int]):
    mine_set = set(mine)
    var = {v: i + 1 for i, v in enumerate(mine)}
    out = set()
    for e in forced_ones:
        u, v = G.edges[e]
        out.add(var[u] if u in mine_set else var[v])
    return out


def _component_two(G: Graph, forced_ones: Sequence[int]) -> Optional[tuple]:
    """A 2-labeling of a connected bipartite graph honoring forced 1s, or ``None``."""
    for which in ("A", "B"):
        d = derived_formula(G, which)
        if d.formula.nvars > MAX_VARIABLES:
            raise TooLarge(f"{d.formula.nvars} variables exceed the limit of {MAX_VARIABLES}")
        sol = nae_satisfiable(d.formula, _forced_vars(G, d.variables, forced_ones))
        if sol is not None:
            return labeling_from_assignment(G, sol, which)
    return None


def two_labeling(G: Graph, forced_ones: Iterable[int] = ()) -> Optional[tuple]:
    """A {1,2} labeling distinguishing neighbors by sets with label 1 on ``forced_ones``."""
    if not is_nice(G):
        raise NotNice("graph has a single-edge component")
    bipartition(G)
    forced = set(forced_ones)
    labels = [0] * G.m
    for comp in G.components():
        if len(comp) < 2:
            continue
        sub, emap = G.subgraph(comp)
        local = [i for i, e in enumerate(emap) if e in forced]
        part = _component_two(sub, local)
        if part is None:
            return None
        for i, e in enumerate(emap):
            labels[e] = part[i]
    return tuple(labels)


def gndi_bipartite(G: Graph, forced_ones: Iterable[int] = ()) -> int:
    """2 if two labels suffice (with label 1 on ``forced_ones``), otherwise 3."""
    return 2 if two_labeling(G, forced_ones) is not None else 3


# -- structure of a valid 2-labeling -----------------------------------------------


@dataclass(frozen=True)
class BipartiteDecomposition:
    X: tuple
    Y: tuple
    X1: tuple
    X2: tuple


def decompose(G: Graph, labels: Sequence[int]) -> BipartiteDecomposition:
    if set(labels) - {1, 2} or not distinguishes_by_sets(G, labels):
        raise LabelingInvalid("expected a {1,2} labeling distinguishing neighbors by sets")
    seen = {v: {labels[e] for e in G.incident[v]} for v in G.vertices if G.incident[v]}
    Y = tuple(v for v in sorted(seen) if seen[v] == {1, 2})
    X = tuple(v for v in sorted(seen) if len(seen[v]) == 1)
    X1 = tuple(v for v in X if seen[v] == {1})
    X2 = tuple(v for v in X if seen[v] == {2})
    ys = set(Y)
    for u, v in G.edges:
        assert (u in ys) != (v in ys), "X and Y must be independent"
    for v in seen:
        if G.degree(v) == 1:
            assert v not in ys, "degree-1 vertices belong to X"
    x1 = set(X1)
    for v in Y:
        if G.degree(v) == 2:
            a, b = G.adjacency[v]
            assert (a in x1) != (b in x1), "degree-2 vertices of Y see X1 and X2"
    return BipartiteDecomposition(X, Y, X1, X2)


# -- hardness gadget ---------------------------------------------------------------


@dataclass
class Gadget:
    graph: Graph
    g_prime: int
    x: dict = field(default_factory=dict)  # (variable, occurrence) -> vertex
    y: dict = field(default_factory=dict)  # variable -> vertex
    z: list = field(default_factory=list)  # clause index -> vertex
    paths: dict = field(default_factory=dict)  # variable -> path vertices


def build_gadget(phi: NaeFormula, g: int = 4) -> Gadget:
    """Bipartite subcubic graph of girth at least ``g`` that has a 2-labeling iff ``phi`` is NAE-satisfiable.

    Variables without occurrences get no path.
    """
    for idx, c in enumerate(phi.clauses):
        if not 2 <= len(c) <= 3:
            raise BadClauseSize(f"clause {idx} has {len(c)} variables, expected 2 or 3")
    gp = 4
    while gp <= g / 2:
        gp += 4
    edges = []
    out = Gadget(None, gp)
    nxt = 1
    for v in range(1, phi.nvars + 1):
        d = phi.occurrences(v)
        if d == 0:
            continue
        ell = gp * d + 1
        path = list(range(nxt, nxt + ell))
        nxt += ell
        edges += [(path[j], path[j + 1]) for j in range(ell - 1)]
        out.paths[v] = path
        for i in range(1, d + 1):
            out.x[(v, i)] = path[(i - 1) * gp]
        out.y[v] = path[-1]
    count = {v: 0 for v in range(1, phi.nvars + 1)}
    for c in phi.clauses:
        z = nxt
        nxt += 1
        out.z.append(z)
        for v in c:
            count[v] += 1
            edges.append((out.x[(v, count[v])], z))
    out.graph = Graph(nxt - 1, tuple(edges))
    return out


def hardness_gadget(phi: NaeFormula, g: int = 4) -> Graph:
    return build_gadget(phi, g).graph


def girth(G: Graph) -> Optional[int]:
    """Length of a shortest cycle, or ``None`` for forests."""
    best = None
    for s in G.vertices:
        dist = {s: 0}
        parent = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in G.adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best
