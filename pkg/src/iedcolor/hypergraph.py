"""Hypergraph data model and verifiers for distinguishing colorings.

Vertices are the integers ``1..n`` and this numbering is the linear order the
coloring algorithm relies on.  Edges keep their input order; edge indices are
0-based positions in :attr:`Hypergraph.edges`.  A coloring is any mapping from
vertex to a nonnegative integer color; a partial coloring simply omits the
uncolored vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    ArityMismatch,
    IncompleteColoring,
    InvalidHypergraph,
    ListTooShort,
    NotUniform,
    PiNotClosed,
)

SETS = "sets"
MULTISETS = "multisets"
SEQUENCES = "sequences"
MODES = (SETS, MULTISETS, SEQUENCES)

Coloring = Mapping[int, int]


def check_mode(mode: str, allowed: Sequence[str] = MODES) -> str:
    if mode not in allowed:
        raise ValueError(f"mode must be one of {', '.join(allowed)}, got {mode!r}")
    return mode


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph on vertices ``1..n`` with an ordered list of edges.

    Each edge is an ordered tuple of distinct vertices.  The order inside an
    edge only matters for sequence colorings; two edges that are equal as
    sets are rejected.
    """

    n: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(tuple(int(x) for x in e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise InvalidHypergraph("vertex count must be nonnegative")
        seen = {}
        for idx, e in enumerate(edges):
            if not e:
                raise InvalidHypergraph(f"edge {idx} is empty")
            for x in e:
                if not 1 <= x <= self.n:
                    raise InvalidHypergraph(f"edge {idx} uses vertex {x} outside 1..{self.n}")
            s = frozenset(e)
            if len(s) != len(e):
                raise InvalidHypergraph(f"edge {idx} repeats a vertex")
            if s in seen:
                raise InvalidHypergraph(f"edges {seen[s]} and {idx} are equal as sets")
            seen[s] = idx

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edge_sets(self) -> tuple:
        return tuple(frozenset(e) for e in self.edges)

    @cached_property
    def incidence(self) -> tuple:
        """``incidence[v]`` lists indices of edges containing ``v`` in edge order (E(v))."""
        inc = [[] for _ in range(self.n + 1)]
        for idx, e in enumerate(self.edges):
            for x in e:
                inc[x].append(idx)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(x) for x in self.incidence[1:]), default=0)

    @cached_property
    def neighbors(self) -> tuple:
        """For each edge, the indices of the other edges it intersects, ascending."""
        out = []
        for idx, e in enumerate(self.edges):
            nb = set()
            for x in e:
                nb.update(self.incidence[x])
            nb.discard(idx)
            out.append(tuple(sorted(nb)))
        return tuple(out)

    def difference(self, p: int, q: int) -> int:
        """``|P \\ Q|`` for edge indices ``p`` and ``q``."""
        return len(self.edge_sets[p] - self.edge_sets[q])

    def intersecting_pairs(self):
        """Yield every pair ``(p, q)`` of intersecting edges with ``p < q``, lexicographically."""
        for p, nb in enumerate(self.neighbors):
            for q in nb:
                if q > p:
                    yield p, q


def uniformity(H: Hypergraph) -> int:
    """Return ``k`` when every edge of ``H`` has exactly ``k`` vertices."""
    if not H.edges:
        raise NotUniform(-1, 0)
    k = len(H.edges[0])
    for idx, e in enumerate(H.edges):
        if len(e) != k:
            raise NotUniform(idx, len(e))
    return k


def difference_spectrum(H: Hypergraph) -> frozenset:
    """I(H): the sizes ``|P \\ Q|`` over edge pairs, restricted to ``1..k-1``.

    Only intersecting pairs can contribute a size below ``k``.
    """
    k = uniformity(H)
    out = set()
    for p, q in H.intersecting_pairs():
        i = H.difference(p, q)
        if 1 <= i <= k - 1:
            out.add(i)
    return frozenset(out)


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex ordered color lists; ``lists[v - 1]`` belongs to vertex ``v``."""

    lists: tuple

    def __post_init__(self):
        lists = tuple(tuple(int(c) for c in lst) for lst in self.lists)
        for v, lst in enumerate(lists, start=1):
            if not lst:
                raise ListTooShort(v, 1)
            if len(set(lst)) != len(lst):
                raise ValueError(f"list of vertex {v} repeats a color")
            if min(lst) < 0:
                raise ValueError(f"list of vertex {v} has a negative color")
        object.__setattr__(self, "lists", lists)

    @classmethod
    def uniform(cls, n: int, size: int, first: int = 1) -> "ListAssignment":
        """Every vertex gets the colors ``first, first+1, ..., first+size-1``."""
        return cls(tuple(tuple(range(first, first + size)) for _ in range(n)))

    def __getitem__(self, v: int) -> tuple:
        return self.lists[v - 1]

    def __len__(self) -> int:
        return len(self.lists)

    @property
    def min_size(self) -> int:
        return min((len(x) for x in self.lists), default=0)

    def truncated(self, size: int) -> "ListAssignment":
        for v, lst in enumerate(self.lists, start=1):
            if len(lst) < size:
                raise ListTooShort(v, size)
        return ListAssignment(tuple(lst[:size] for lst in self.lists))


@dataclass(frozen=True)
class PermutationFamily:
    """A family Π of permutations of ``1..k`` closed under taking inverses.

    A permutation is the tuple of images of ``1..k``.  Applied to a sequence
    ``B`` it yields ``(B[σ(1)], ..., B[σ(k)])``.
    """

    k: int
    perms: tuple

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in s) for s in self.perms)
        object.__setattr__(self, "perms", perms)
        if not perms:
            raise ValueError("permutation family is empty")
        target = list(range(1, self.k + 1))
        for s in perms:
            if sorted(s) != target:
                raise ValueError(f"{s} is not a permutation of 1..{self.k}")
        if len(set(perms)) != len(perms):
            raise ValueError("permutation family has duplicates")
        members = set(perms)
        for s in perms:
            if self.inverse(s) not in members:
                raise PiNotClosed(f"inverse of {s} is missing from the family")

    @staticmethod
    def inverse(s: Sequence[int]) -> tuple:
        inv = [0] * len(s)
        for pos, img in enumerate(s, start=1):
            inv[img - 1] = pos
        return tuple(inv)

    @classmethod
    def identity(cls, k: int) -> "PermutationFamily":
        return cls(k, (tuple(range(1, k + 1)),))

    @classmethod
    def with_reversal(cls, k: int) -> "PermutationFamily":
        return cls(k, (tuple(range(1, k + 1)), tuple(range(k, 0, -1))))

    @property
    def size(self) -> int:
        return len(self.perms)

    def __len__(self) -> int:
        return len(self.perms)

    def apply(self, index: int, seq: Sequence) -> tuple:
        return apply_permutation(self.perms[index], seq)


def apply_permutation(sigma: Sequence[int], seq: Sequence) -> tuple:
    return tuple(seq[j - 1] for j in sigma)


@dataclass(frozen=True)
class Violation:
    """A pair of edge indices ``p < q`` breaking the distinguishing condition.

    ``sigma`` is the index in Π of the witnessing permutation for sequence
    colorings and ``None`` otherwise.
    """

    p: int
    q: int
    sigma: Optional[int] = None


def _require_complete(H: Hypergraph, coloring: Coloring) -> None:
    for v in H.vertices:
        if v not in coloring:
            raise IncompleteColoring(f"vertex {v} is uncolored")


def verify(H: Hypergraph, coloring: Coloring, mode: str = SETS) -> Optional[Violation]:
    """Check a complete coloring; return the least violating edge pair or ``None``."""
    check_mode(mode, (SETS, MULTISETS))
    _require_complete(H, coloring)
    for p, q in H.intersecting_pairs():
        P, Q = H.edges[p], H.edges[q]
        if mode == SETS:
            same = {coloring[x] for x in P} == {coloring[x] for x in Q}
        else:
            same = sorted(coloring[x] for x in P) == sorted(coloring[x] for x in Q)
        if same:
            return Violation(p, q)
    return None


def pair_conflicts(H: Hypergraph, p: int, q: int, coloring: Coloring, mode: str) -> bool:
    """Whether the pair (p, q) violates the partial-coloring condition.

    Only pairs whose symmetric difference is fully colored are checked.  For
    sets the colors of the colored parts of both edges are compared; for
    multisets the multisets on ``P \\ Q`` and ``Q \\ P``.
    """
    P, Q = H.edge_sets[p], H.edge_sets[q]
    only_p = P - Q
    only_q = Q - P
    for x in only_p:
        if x not in coloring:
            return False
    for x in only_q:
        if x not in coloring:
            return False
    if mode == SETS:
        cp = {coloring[x] for x in P if x in coloring}
        cq = {coloring[x] for x in Q if x in coloring}
        return cp == cq
    return sorted(coloring[x] for x in only_p) == sorted(coloring[x] for x in only_q)


def verify_partial(H: Hypergraph, coloring: Coloring, mode: str = SETS) -> Optional[Violation]:
    check_mode(mode, (SETS, MULTISETS))
    for p, q in H.intersecting_pairs():
        if pair_conflicts(H, p, q, coloring, mode):
            return Violation(p, q)
    return None


def similar_under(P: Sequence[int], Q: Sequence[int], sigma: Sequence[int], coloring: Coloring) -> bool:
    """True when σ(P) and Q agree at every position up to the partial coloring.

    A position agrees if the same vertex sits there in both sequences, or if
    both vertices are colored with the same color.
    """
    if len(P) != len(Q) or len(sigma) != len(P):
        raise ArityMismatch("sequences and permutation must have equal length")
    for j, src in enumerate(sigma):
        a = P[src - 1]
        b = Q[j]
        if a == b:
            continue
        ca = coloring.get(a)
        if ca is None or ca != coloring.get(b):
            return False
    return True


def _check_arity(H: Hypergraph, pi: PermutationFamily) -> None:
    k = uniformity(H)
    if pi.k != k:
        raise ArityMismatch(f"permutations act on {pi.k} positions but edges have {k}")


def verify_sequences(H: Hypergraph, pi: PermutationFamily, coloring: Coloring) -> Optional[Violation]:
    """Check that no two intersecting edges carry Π-compatible color sequences."""
    _check_arity(H, pi)
    _require_complete(H, coloring)
    for p, q in H.intersecting_pairs():
        cp = [coloring[x] for x in H.edges[p]]
        cq = tuple(coloring[x] for x in H.edges[q])
        for s, sigma in enumerate(pi.perms):
            if apply_permutation(sigma, cp) == cq:
                return Violation(p, q, s)
    return None


def verify_partial_sequences(H: Hypergraph, pi: PermutationFamily, coloring: Coloring) -> Optional[Violation]:
    """Report the least intersecting pair that is similar under some σ in Π."""
    _check_arity(H, pi)
    for p, q in H.intersecting_pairs():
        for s, sigma in enumerate(pi.perms):
            if similar_under(H.edges[p], H.edges[q], sigma, coloring):
                return Violation(p, q, s)
    return None


def hypergraph_from_sets(n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Build a hypergraph, sorting each edge (for callers that only care about sets)."""
    return Hypergraph(n, tuple(tuple(sorted(e)) for e in edges))
