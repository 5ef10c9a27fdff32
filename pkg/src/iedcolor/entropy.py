"""Randomized list coloring by entropy compression, with an exact decoder.

Each iteration colors the least uncolored vertex with a drawn list position.
If that creates a conflict (a pair of intersecting edges that can no longer
be distinguished), some vertices are uncolored and a compact record of the
conflict is appended to the log.  The log together with the final partial
coloring determines every draw, which :func:`decode` reconstructs.

Edge positions ``x_p``/``x_q`` in records are 1-based, as are σ indices in the
trace format; edge indices elsewhere are 0-based.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from heapq import heappop, heappush
from statistics import mean
from typing import Mapping, Optional, Sequence, Union

from .errors import DrawExhausted, InconsistentLog, InputError
from .hypergraph import (
    MULTISETS,
    SEQUENCES,
    SETS,
    Hypergraph,
    ListAssignment,
    PermutationFamily,
    Violation,
    apply_permutation,
    check_mode,
    difference_spectrum,
    pair_conflicts,
    similar_under,
    uniformity,
    verify,
    verify_partial,
    verify_partial_sequences,
    verify_sequences,
)

VIA_X = "x"
VIA_SHARED = "v"


# -- conflict records --------------------------------------------------------


@dataclass(frozen=True)
class Plus:
    """A successful iteration."""


@dataclass(frozen=True)
class SetCase1:
    """Sets, colored vertex outside the other edge: ``Q`` is the x_q-th edge of X."""

    x_p: int
    x_q: int
    gamma: tuple


@dataclass(frozen=True)
class SetCase2:
    """Sets, colored vertex shared by both edges: ``Q`` is the x_q-th edge of E(v) minus P."""

    x_p: int
    x_q: int
    gamma: tuple


@dataclass(frozen=True)
class Multiset:
    x_p: int
    x_q: int
    gamma: tuple


@dataclass(frozen=True)
class SeqDisjoint:
    """Sequences, ``v`` in ``P \\ Q``.

    ``choice`` is ``"x"`` (``aux`` is the position of ``|P \\ Q|`` in I and
    ``Q`` is found in X) or ``"v"`` (``aux`` is the position of a shared
    vertex ``v'`` within ``P`` minus ``v`` and ``Q`` is found in E(v') minus P).
    ``sigma`` is 1-based.
    """

    choice: str
    x_p: int
    x_q: int
    aux: int
    sigma: int


@dataclass(frozen=True)
class SeqShared:
    x_p: int
    x_q: int
    sigma: int


Record = Union[Plus, SetCase1, SetCase2, Multiset, SeqDisjoint, SeqShared]
PLUS = Plus()


def format_record(rec: Record) -> str:
    if isinstance(rec, Plus):
        return "+"
    if isinstance(rec, (SetCase1, SetCase2, Multiset)):
        tag = {SetCase1: "S1", SetCase2: "S2", Multiset: "M"}[type(rec)]
        pairs = " ".join(f"{u}:{w}" for u, w in rec.gamma)
        return f"{tag} {rec.x_p} {rec.x_q} {pairs}".rstrip()
    if isinstance(rec, SeqDisjoint):
        return f"QD {rec.choice} {rec.x_p} {rec.x_q} {rec.aux} {rec.sigma}"
    return f"QS {rec.x_p} {rec.x_q} {rec.sigma}"


def parse_record(line: str, lineno: Optional[int] = None) -> Record:
    parts = line.split()
    if not parts:
        raise InputError("empty trace record", lineno)
    tag = parts[0]
    try:
        if tag == "+" and len(parts) == 1:
            return PLUS
        if tag in ("S1", "S2", "M"):
            gamma = []
            for tok in parts[3:]:
                u, w = tok.split(":")
                gamma.append((int(u), int(w)))
            cls = {"S1": SetCase1, "S2": SetCase2, "M": Multiset}[tag]
            return cls(int(parts[1]), int(parts[2]), tuple(gamma))
        if tag == "QD" and len(parts) == 6 and parts[1] in (VIA_X, VIA_SHARED):
            return SeqDisjoint(parts[1], *(int(x) for x in parts[2:]))
        if tag == "QS" and len(parts) == 4:
            return SeqShared(*(int(x) for x in parts[1:]))
    except ValueError as exc:
        raise InputError(f"bad trace record {line!r}: {exc}", lineno) from None
    raise InputError(f"bad trace record {line!r}", lineno)


def format_log(log: Sequence[Record]) -> str:
    return "".join(format_record(r) + "\n" for r in log)


def parse_log(text: str) -> list:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_record(line, lineno))
    return out


# -- draws -------------------------------------------------------------------


class Draws:
    """Source of list positions in ``1..R``.

    Either replays an explicit sequence or draws uniformly from a seeded
    :class:`random.Random`; consumed values are kept in :attr:`consumed`.
    """

    def __init__(self, R: int, seed: Optional[int] = None, sequence: Optional[Sequence[int]] = None):
        if R < 1:
            raise ValueError("R must be positive")
        self.R = R
        self.seed = seed
        self._sequence = None if sequence is None else list(sequence)
        if self._sequence is not None:
            for c in self._sequence:
                if not 1 <= c <= R:
                    raise ValueError(f"draw {c} is outside 1..{R}")
        self._rng = random.Random(seed if seed is not None else 0)
        self.consumed = []

    def next(self) -> int:
        if self._sequence is not None:
            if len(self.consumed) >= len(self._sequence):
                raise DrawExhausted(f"explicit draw sequence of length {len(self._sequence)} is used up")
            c = self._sequence[len(self.consumed)]
        else:
            c = self._rng.randrange(self.R) + 1
        self.consumed.append(c)
        return c


@dataclass
class RunResult:
    complete: bool
    coloring: dict
    log: list
    R: int
    mode: str
    draws: tuple
    seed: Optional[int] = None
    history: list = field(default_factory=list, repr=False)

    @property
    def iterations(self) -> int:
        return len(self.log)

    @property
    def conflicts(self) -> int:
        return sum(1 for r in self.log if not isinstance(r, Plus))


# -- shared geometry ---------------------------------------------------------


def encoding_choices(k: int, delta: int, I, pi_size: int) -> dict:
    """Per difference size ``i``, pick the cheaper encoding of a disjoint-side conflict."""
    I = sorted(I)
    out = {}
    for i in I:
        via_x = delta * (((delta - 1) * (k - 1)) // (k - i)) * len(I) * pi_size
        via_shared = delta * (delta - 1) * (k - 1) * pi_size
        out[i] = VIA_X if via_x <= via_shared else VIA_SHARED
    return out


def _x_set(H: Hypergraph, p: int, v: int, i: int) -> list:
    """Edges K with ``|P \\ K| = i`` that avoid ``v``, in edge order."""
    P = H.edge_sets[p]
    return [K for K in H.neighbors[p] if v not in H.edge_sets[K] and len(P - H.edge_sets[K]) == i]


class _Engine:
    def __init__(self, H: Hypergraph, lists: ListAssignment, mode: str, R: Optional[int], pi: Optional[PermutationFamily]):
        check_mode(mode)
        self.H = H
        self.mode = mode
        self.k = uniformity(H) if H.edges else 0
        if mode == SEQUENCES:
            if pi is None:
                pi = PermutationFamily.identity(self.k)
            if pi.k != self.k:
                from .errors import ArityMismatch

                raise ArityMismatch(f"permutations act on {pi.k} positions but edges have {self.k}")
        self.pi = pi
        if len(lists) != H.n:
            raise ValueError(f"expected {H.n} lists, got {len(lists)}")
        if R is None:
            R = lists.min_size
        self.R = R
        self.lists = lists.truncated(R)
        self.delta = H.max_degree
        self.I = sorted(difference_spectrum(H)) if H.edges else []
        self.choices = encoding_choices(self.k, self.delta, self.I, pi.size) if pi else {}

    # range checks against the counting bounds
    def _check_ranges(self, x_p, x_q, i=None, shared=False):
        d, k = self.delta, self.k
        assert 1 <= x_p <= d, f"x_p={x_p} outside 1..{d}"
        if shared:
            assert 1 <= x_q <= d - 1, f"x_q={x_q} outside 1..{d - 1}"
        else:
            top = ((d - 1) * (k - 1)) // (k - i)
            assert 1 <= x_q <= top, f"x_q={x_q} outside 1..{top}"

    # -- conflict search --

    def find_conflict(self, v: int, col: dict):
        H = self.H
        best = None
        if self.mode == SEQUENCES:
            perms = self.pi.perms
            for p in H.incidence[v]:
                for q in H.neighbors[p]:
                    for s, sigma in enumerate(perms):
                        key = (p, q, s)
                        if best is not None and key >= best:
                            break
                        if similar_under(H.edges[p], H.edges[q], sigma, col):
                            best = key
                            break
            return best
        for p in H.incidence[v]:
            for q in H.neighbors[p]:
                if not pair_conflicts(H, p, q, col, self.mode):
                    continue
                P, Q = H.edge_sets[p], H.edge_sets[q]
                a, b = p, q
                if v in Q:
                    c = col[v]
                    in_p = any(col[x] == c for x in P - Q)
                    in_q = any(col[x] == c for x in Q - P)
                    if in_p == in_q:
                        raise AssertionError(
                            f"shared-vertex conflict on edges {p},{q}: color of {v} must lie in exactly one side"
                        )
                    if in_p:
                        a, b = q, p
                key = (a, b)
                if best is None or key < best:
                    best = key
        return best

    # -- conflict handling: returns (record, vertices to uncolor) --

    def _least_same_color(self, u: int, ref, col: dict) -> int:
        c = col[u]
        for x in sorted(ref):
            if col.get(x) == c:
                return x
        raise AssertionError(f"color of {u} does not appear on the reference edge")

    def resolve(self, v: int, conflict, col: dict):
        H = self.H
        if self.mode == SEQUENCES:
            return self._resolve_sequences(v, conflict, col)
        p, q = conflict
        P, Q = H.edge_sets[p], H.edge_sets[q]
        x_p = H.incidence[v].index(p) + 1
        only_p = P - Q
        i = len(only_p)
        if self.mode == MULTISETS:
            assert v in only_p, "multiset conflicts always have the new vertex outside the other edge"
            x_q = _x_set(H, p, v, i).index(q) + 1
            self._check_ranges(x_p, x_q, i)
            gamma = _bijection(sorted(only_p), sorted(Q - P), col)
            return Multiset(x_p, x_q, gamma), only_p
        if v not in Q:
            x_q = _x_set(H, p, v, i).index(q) + 1
            self._check_ranges(x_p, x_q, i)
            gamma = tuple((u, self._least_same_color(u, Q, col)) for u in sorted(only_p))
            return SetCase1(x_p, x_q, gamma), only_p
        others = [e for e in H.incidence[v] if e != p]
        x_q = others.index(q) + 1
        self._check_ranges(x_p, x_q, shared=True)
        w = min(only_p)
        dom = (only_p - {w}) | {v}
        ref = Q - {v}
        gamma = tuple((u, self._least_same_color(u, ref, col)) for u in sorted(dom))
        return SetCase2(x_p, x_q, gamma), dom

    def _resolve_sequences(self, v: int, conflict, col: dict):
        H = self.H
        p, q, s = conflict
        P, Q = H.edge_sets[p], H.edge_sets[q]
        x_p = H.incidence[v].index(p) + 1
        only_p = P - Q
        sigma = s + 1
        assert sigma <= self.pi.size
        if v not in Q:
            i = len(only_p)
            choice = self.choices[i]
            if choice == VIA_X:
                x_q = _x_set(H, p, v, i).index(q) + 1
                self._check_ranges(x_p, x_q, i)
                aux = self.I.index(i) + 1
            else:
                shared = min(P & Q)
                aux = sorted(P - {v}).index(shared) + 1
                x_q = [e for e in H.incidence[shared] if e != p].index(q) + 1
                assert 1 <= x_q <= self.delta - 1 and aux <= self.k - 1
            return SeqDisjoint(choice, x_p, x_q, aux, sigma), only_p
        x_q = [e for e in H.incidence[v] if e != p].index(q) + 1
        self._check_ranges(x_p, x_q, shared=True)
        permuted = apply_permutation(self.pi.perms[s], H.edges[p])
        v_prime = permuted[H.edges[q].index(v)]
        w = v_prime if v_prime in only_p else min(only_p)
        return SeqShared(x_p, x_q, sigma), (only_p - {w}) | {v}

    def check_partial(self, col: dict):
        if self.mode == SEQUENCES:
            bad = verify_partial_sequences(self.H, self.pi, col)
        else:
            bad = verify_partial(self.H, col, self.mode)
        if bad is not None:
            raise AssertionError(f"partial coloring invariant broken on edges {bad.p},{bad.q}")


def _bijection(src: Sequence[int], dst: Sequence[int], col: Mapping[int, int]) -> tuple:
    """Color-preserving bijection pairing each color class in vertex order."""
    pools = {}
    for x in dst:
        pools.setdefault(col[x], []).append(x)
    out = []
    for u in src:
        pool = pools.get(col[u])
        if not pool:
            raise AssertionError("multisets on the two sides differ")
        out.append((u, pool.pop(0)))
    return tuple(out)


def _execute(engine: _Engine, draws: Draws, max_iters: Optional[int], check: bool, keep_history: bool) -> RunResult:
    H = engine.H
    col = {}
    heap = list(H.vertices)
    uncolored = set(heap)
    log = []
    history = []
    while uncolored:
        if max_iters is not None and len(log) >= max_iters:
            return RunResult(False, dict(col), log, engine.R, engine.mode, tuple(draws.consumed), draws.seed, history)
        while heap[0] not in uncolored:
            heappop(heap)
        v = heappop(heap)
        uncolored.discard(v)
        c = draws.next()
        col[v] = engine.lists[v][c - 1]
        conflict = engine.find_conflict(v, col)
        if conflict is None:
            log.append(PLUS)
        else:
            rec, drop = engine.resolve(v, conflict, col)
            log.append(rec)
            for u in drop:
                del col[u]
                uncolored.add(u)
                heappush(heap, u)
        if check:
            engine.check_partial(col)
        if keep_history:
            history.append(dict(col))
    return RunResult(True, col, log, engine.R, engine.mode, tuple(draws.consumed), draws.seed, history)


def _make_draws(R: int, seed: Optional[int], draws) -> Draws:
    if isinstance(draws, Draws):
        return draws
    if draws is not None:
        return Draws(R, sequence=draws)
    return Draws(R, seed=seed)


def run(
    H: Hypergraph,
    lists: ListAssignment,
    mode: str = SETS,
    *,
    seed: Optional[int] = 0,
    draws=None,
    R: Optional[int] = None,
    max_iters: Optional[int] = None,
    check: bool = False,
    keep_history: bool = False,
) -> RunResult:
    """Color ``H`` from ``lists`` so intersecting edges differ by sets or multisets.

    Lists are truncated to their first ``R`` colors (default: the shortest
    list length).  ``draws`` may be an explicit sequence of positions in
    ``1..R``; otherwise positions come from ``random.Random(seed)``.  With
    ``max_iters`` the run may stop early and return ``complete=False``.
    ``check=True`` verifies the partial-coloring invariant after every
    iteration.
    """
    check_mode(mode, (SETS, MULTISETS))
    engine = _Engine(H, lists, mode, R, None)
    return _execute(engine, _make_draws(engine.R, seed, draws), max_iters, check, keep_history)


def run_sequences(
    H: Hypergraph,
    pi: PermutationFamily,
    lists: ListAssignment,
    *,
    seed: Optional[int] = 0,
    draws=None,
    R: Optional[int] = None,
    max_iters: Optional[int] = None,
    check: bool = False,
    keep_history: bool = False,
) -> RunResult:
    """Color ``H`` so no two intersecting edges carry Π-compatible color sequences."""
    engine = _Engine(H, lists, SEQUENCES, R, pi)
    return _execute(engine, _make_draws(engine.R, seed, draws), max_iters, check, keep_history)


def verify_result(H: Hypergraph, result: RunResult, pi: Optional[PermutationFamily] = None) -> Optional[Violation]:
    if result.mode == SEQUENCES:
        return verify_sequences(H, pi or PermutationFamily.identity(uniformity(H)), result.coloring)
    return verify(H, result.coloring, result.mode)


# -- decoding ------------------------------------------------------------------


def _fail(j: int, msg: str):
    raise InconsistentLog(f"record {j + 1}: {msg}")


def _edge_at(seq, pos: int, j: int, what: str) -> int:
    if not 1 <= pos <= len(seq):
        _fail(j, f"{what} position {pos} outside 1..{len(seq)}")
    return seq[pos - 1]


def _scan_x(H: Hypergraph, P: frozenset, v: int, i: int) -> list:
    return [K for K in range(H.m) if v not in H.edge_sets[K] and len(P - H.edge_sets[K]) == i]


def decode(
    H: Hypergraph,
    lists: ListAssignment,
    log: Sequence[Record],
    final: Mapping[int, int],
    mode: str = SETS,
    *,
    pi: Optional[PermutationFamily] = None,
    R: Optional[int] = None,
) -> tuple:
    """Recover the consumed draws from a conflict log and the final coloring.

    The uncolored sets are rebuilt forward from the log alone; the colorings
    and draws are then recovered backward, starting from ``final``.
    """
    check_mode(mode)
    if R is None:
        R = lists.min_size
    lists = lists.truncated(R)
    if mode == SEQUENCES and pi is None:
        pi = PermutationFamily.identity(uniformity(H))
    I = sorted(difference_spectrum(H)) if H.edges else []

    uncolored = set(H.vertices)
    steps = []
    for j, rec in enumerate(log):
        if not uncolored:
            _fail(j, "no uncolored vertex left")
        v = min(uncolored)
        if isinstance(rec, Plus):
            uncolored.discard(v)
            steps.append((v, None, None))
            continue
        dom, source = _undo_plan(H, I, pi, v, rec, mode, j)
        uncolored |= dom
        steps.append((v, dom, source))
    if uncolored != set(H.vertices) - set(final):
        raise InconsistentLog("uncolored set after the last record does not match the final coloring")

    phi = dict(final)
    out = [0] * len(steps)
    for j in range(len(steps) - 1, -1, -1):
        v, dom, source = steps[j]
        if dom is None:
            if v not in phi:
                _fail(j, f"vertex {v} should be colored")
            color = phi.pop(v)
        else:
            if v in phi:
                _fail(j, f"vertex {v} should be uncolored")
            restored = {}
            for u in dom:
                ref = source[u]
                if ref not in phi:
                    _fail(j, f"reference vertex {ref} for {u} is uncolored")
                restored[u] = phi[ref]
            for u, c in restored.items():
                if u != v:
                    if u in phi:
                        _fail(j, f"vertex {u} should be uncolored")
                    phi[u] = c
            color = restored[v]
        try:
            out[j] = lists[v].index(color) + 1
        except ValueError:
            _fail(j, f"color {color} is not in the list of vertex {v}")
    if phi:
        raise InconsistentLog("coloring before the first record is not empty")
    return tuple(out)


def _undo_plan(H, I, pi, v, rec, mode, j):
    """Return the set uncolored by record ``rec`` and where each color can be read back."""
    inc = H.incidence[v]
    if isinstance(rec, (SetCase1, Multiset)):
        if isinstance(rec, SetCase1) != (mode == SETS) or mode == SEQUENCES:
            _fail(j, "record type does not match the mode")
        p = _edge_at(inc, rec.x_p, j, "x_p")
        P = H.edge_sets[p]
        i = len(rec.gamma)
        q = _edge_at(_scan_x(H, P, v, i), rec.x_q, j, "x_q")
        dom = P - H.edge_sets[q]
        source = dict(rec.gamma)
        if set(source) != dom:
            _fail(j, "gamma domain differs from P \\ Q")
        ref = H.edge_sets[q] - P if isinstance(rec, Multiset) else H.edge_sets[q]
        if not set(source.values()) <= ref:
            _fail(j, "gamma maps outside the reference edge")
        if isinstance(rec, Multiset) and len(set(source.values())) != len(source):
            _fail(j, "multiset gamma is not injective")
        return dom, source
    if isinstance(rec, SetCase2):
        if mode != SETS:
            _fail(j, "record type does not match the mode")
        p = _edge_at(inc, rec.x_p, j, "x_p")
        q = _edge_at([e for e in inc if e != p], rec.x_q, j, "x_q")
        P, Q = H.edge_sets[p], H.edge_sets[q]
        w = min(P - Q)
        dom = ((P - Q) - {w}) | {v}
        source = dict(rec.gamma)
        if set(source) != dom or not set(source.values()) <= Q - {v}:
            _fail(j, "gamma does not fit the shared-vertex conflict")
        return dom, source
    if mode != SEQUENCES or not isinstance(rec, (SeqDisjoint, SeqShared)):
        _fail(j, "record type does not match the mode")
    if not 1 <= rec.sigma <= pi.size:
        _fail(j, f"sigma {rec.sigma} outside 1..{pi.size}")
    sigma = pi.perms[rec.sigma - 1]
    p = _edge_at(inc, rec.x_p, j, "x_p")
    P = H.edge_sets[p]
    if isinstance(rec, SeqDisjoint):
        if rec.choice == VIA_X:
            i = _edge_at(I, rec.aux, j, "difference")
            q = _edge_at(_scan_x(H, P, v, i), rec.x_q, j, "x_q")
        else:
            shared = _edge_at(sorted(P - {v}), rec.aux, j, "shared vertex")
            q = _edge_at([e for e in H.incidence[shared] if e != p], rec.x_q, j, "x_q")
        dom = P - H.edge_sets[q]
        if v not in dom:
            _fail(j, "colored vertex is not outside Q")
    else:
        q = _edge_at([e for e in inc if e != p], rec.x_q, j, "x_q")
        Q = H.edge_sets[q]
        permuted = apply_permutation(sigma, H.edges[p])
        v_prime = permuted[H.edges[q].index(v)]
        w = v_prime if v_prime in P - Q else min(P - Q)
        dom = ((P - Q) - {w}) | {v}
    permuted = apply_permutation(sigma, H.edges[p])
    Qseq = H.edges[q]
    source = {u: Qseq[permuted.index(u)] for u in dom}
    return dom, source


def decode_result(H: Hypergraph, lists: ListAssignment, result: RunResult, pi=None) -> tuple:
    return decode(H, lists, result.log, result.coloring, result.mode, pi=pi, R=result.R)


# -- iteration statistics ------------------------------------------------------


@dataclass
class IterationStats:
    counts: list
    n: int
    R: int

    @property
    def mean(self) -> float:
        return mean(self.counts)

    @property
    def max(self) -> int:
        return max(self.counts)

    @property
    def reference(self) -> float:
        from .bounds import iteration_reference

        return iteration_reference(self.n, self.R)


def _one_trial(args):
    H, lists, mode, pi, seed, R = args
    if mode == SEQUENCES:
        res = run_sequences(H, pi, lists, seed=seed, R=R)
    else:
        res = run(H, lists, mode, seed=seed, R=R)
    return res.iterations


def default_workers() -> int:
    raw = os.environ.get("IED_COLOR_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


def iteration_stats(
    H: Hypergraph,
    lists: ListAssignment,
    mode: str = SETS,
    trials: int = 100,
    seed_base: int = 0,
    *,
    pi: Optional[PermutationFamily] = None,
    R: Optional[int] = None,
    workers: Optional[int] = None,
) -> IterationStats:
    """Iteration counts of ``trials`` independent runs seeded ``seed_base + t``."""
    if R is None:
        R = lists.min_size
    jobs = [(H, lists, mode, pi, seed_base + t, R) for t in range(trials)]
    workers = workers or default_workers()
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_one_trial, jobs))
    else:
        counts = [_one_trial(j) for j in jobs]
    return IterationStats(counts, H.n, R)
