"""Line-oriented text formats for hypergraphs, graphs, permutations, formulas and colorings.

Lines starting with ``#`` and blank lines are ignored.  Parse errors raise
:class:`InputError` carrying the offending line number.
"""

from __future__ import annotations

from typing import Mapping, Optional

from .errors import InputError, IedError
from .hypergraph import Hypergraph, ListAssignment, PermutationFamily


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _header(lines, tag: str, count: int):
    try:
        lineno, toks = next(lines)
    except StopIteration:
        raise InputError(f"missing '{tag}' header line", 1) from None
    if toks[0] != tag or len(toks) != count + 1:
        raise InputError(f"expected header '{tag}' with {count} numbers", lineno)
    vals = _ints(toks[1:], lineno)
    if min(vals) < 0:
        raise InputError("header values must be nonnegative", lineno)
    return lineno, vals


def parse_hypergraph(text: str):
    """Return ``(H, lists)``; ``lists`` is ``None`` unless every vertex has an ``L`` line."""
    lines = _lines(text)
    hline, (n, m) = _header(lines, "H", 2)
    edges = []
    lists = {}
    last = hline
    for lineno, toks in lines:
        last = lineno
        if toks[0] == "E":
            if len(edges) >= m:
                raise InputError(f"more than {m} edges", lineno)
            edge = _ints(toks[1:], lineno)
            if not edge:
                raise InputError("edge line without vertices", lineno)
            for x in edge:
                if not 1 <= x <= n:
                    raise InputError(f"vertex {x} outside 1..{n}", lineno)
            if len(set(edge)) != len(edge):
                raise InputError("edge repeats a vertex", lineno)
            edges.append(tuple(edge))
        elif toks[0] == "L":
            vals = _ints(toks[1:], lineno)
            if len(vals) < 2:
                raise InputError("list line needs a vertex and at least one color", lineno)
            v, colors = vals[0], vals[1:]
            if not 1 <= v <= n:
                raise InputError(f"vertex {v} outside 1..{n}", lineno)
            if v in lists:
                raise InputError(f"second list for vertex {v}", lineno)
            if len(set(colors)) != len(colors) or min(colors) < 0:
                raise InputError("list colors must be distinct and nonnegative", lineno)
            lists[v] = tuple(colors)
        else:
            raise InputError(f"unknown record {toks[0]!r}", lineno)
    if len(edges) != m:
        raise InputError(f"expected {m} edges, found {len(edges)}", last)
    try:
        H = Hypergraph(n, tuple(edges))
    except IedError as exc:
        raise InputError(str(exc), None) from None
    if not lists:
        return H, None
    if len(lists) != n:
        missing = min(set(range(1, n + 1)) - set(lists))
        raise InputError(f"vertex {missing} has no list while others do", last)
    return H, ListAssignment(tuple(lists[v] for v in range(1, n + 1)))


def format_hypergraph(H: Hypergraph, lists: Optional[ListAssignment] = None) -> str:
    out = [f"H {H.n} {H.m}"]
    out += ["E " + " ".join(map(str, e)) for e in H.edges]
    if lists is not None:
        out += [f"L {v} " + " ".join(map(str, lists[v])) for v in H.vertices]
    return "\n".join(out) + "\n"


def parse_graph(text: str):
    from .graphs import Graph

    lines = _lines(text)
    hline, (n, m) = _header(lines, "G", 2)
    edges = []
    last = hline
    for lineno, toks in lines:
        last = lineno
        if toks[0] != "E" or len(toks) != 3:
            raise InputError("expected 'E <u> <v>'", lineno)
        u, v = _ints(toks[1:], lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"edge {u} {v} leaves 1..{n}", lineno)
        edges.append((u, v))
    if len(edges) != m:
        raise InputError(f"expected {m} edges, found {len(edges)}", last)
    try:
        return Graph(n, tuple(edges))
    except IedError as exc:
        raise InputError(str(exc), None) from None


def format_graph(G) -> str:
    return "\n".join([f"G {G.n} {G.m}"] + [f"E {u} {v}" for u, v in G.edges]) + "\n"


def parse_permutations(text: str) -> PermutationFamily:
    lines = _lines(text)
    hline, (k, count) = _header(lines, "P", 2)
    perms = []
    last = hline
    for lineno, toks in lines:
        last = lineno
        perm = _ints(toks, lineno)
        if len(perm) != k:
            raise InputError(f"permutation needs {k} images", lineno)
        perms.append(tuple(perm))
    if len(perms) != count:
        raise InputError(f"expected {count} permutations, found {len(perms)}", last)
    try:
        return PermutationFamily(k, tuple(perms))
    except (IedError, ValueError) as exc:
        raise InputError(str(exc), None) from None


def format_permutations(pi: PermutationFamily) -> str:
    return "\n".join([f"P {pi.k} {pi.size}"] + [" ".join(map(str, s)) for s in pi.perms]) + "\n"


def parse_formula(text: str):
    from .gndi import NaeFormula

    lines = _lines(text)
    hline, (nvars, nclauses) = _header(lines, "F", 2)
    clauses = []
    last = hline
    for lineno, toks in lines:
        last = lineno
        if toks[0] != "C":
            raise InputError("expected 'C <v1> ...'", lineno)
        clause = _ints(toks[1:], lineno)
        if not clause:
            raise InputError("empty clause", lineno)
        for x in clause:
            if not 1 <= x <= nvars:
                raise InputError(f"variable {x} outside 1..{nvars}", lineno)
        clauses.append(tuple(clause))
    if len(clauses) != nclauses:
        raise InputError(f"expected {nclauses} clauses, found {len(clauses)}", last)
    return NaeFormula(nvars, tuple(clauses))


def format_formula(phi) -> str:
    return "\n".join([f"F {phi.nvars} {len(phi.clauses)}"] + ["C " + " ".join(map(str, c)) for c in phi.clauses]) + "\n"


def format_coloring(coloring: Mapping[int, int], iterations: Optional[int] = None, seed: Optional[int] = None) -> str:
    out = [f"{v} {coloring[v]}" for v in sorted(coloring)]
    if iterations is not None:
        out.append(f"# iterations {iterations} seed {seed}")
    return "\n".join(out) + "\n"


def parse_coloring(text: str) -> dict:
    col = {}
    for lineno, toks in _lines(text):
        if len(toks) != 2:
            raise InputError("expected '<v> <color>'", lineno)
        v, c = _ints(toks, lineno)
        if v in col:
            raise InputError(f"vertex {v} colored twice", lineno)
        if c < 0:
            raise InputError("colors must be nonnegative", lineno)
        col[v] = c
    return col


def format_labeling(labels: Mapping, vertex_labels: Optional[Mapping] = None) -> str:
    """``<edge-index> <label>`` lines (edge index 1-based), then ``v <v> <label>`` lines for totals."""
    out = [f"{e} {labels[e]}" for e in sorted(labels)]
    if vertex_labels:
        out += [f"v {v} {vertex_labels[v]}" for v in sorted(vertex_labels)]
    return "\n".join(out) + "\n"
