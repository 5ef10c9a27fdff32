"""Command line entry point: ``iedcolor <command> [options]``.

Exit codes: 0 on success, 1 when nothing was found (no coloring within the
cap, unsatisfiable, violation), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import bounds, entropy, io
from .errors import IedError
from .graphs import dual_hypergraph, label_edges, label_total, random_regular_graph, total_hypergraph
from .hypergraph import (
    MODES,
    MULTISETS,
    SEQUENCES,
    SETS,
    ListAssignment,
    PermutationFamily,
    difference_spectrum,
    uniformity,
    verify,
    verify_sequences,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(args, text: str, payload) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text)


def required_size(H, mode: str, pi_size: int = 1) -> int:
    """List size that the bounds guarantee suffices for ``H`` (at least 2)."""
    k = uniformity(H)
    if H.max_degree < 2:
        return 2
    I = difference_spectrum(H)
    if mode == SETS:
        R = bounds.bound_ieds(k, H.max_degree, I)
    elif mode == MULTISETS:
        R = bounds.bound_iedm(k, H.max_degree, I)
    else:
        R = bounds.bound_sequences(k, H.max_degree, I, pi_size)
    return max(2, R)


def _load_instance(args):
    """Hypergraph, list assignment, Π (or ``None``) and the list size in use."""
    H, lists = io.parse_hypergraph(_read(args.input))
    pi = None
    if args.mode == SEQUENCES:
        k = uniformity(H)
        pi = io.parse_permutations(_read(args.pi)) if args.pi else PermutationFamily.identity(k)
    elif args.pi:
        raise UsageError("--pi only applies to --mode sequences")
    if lists is None:
        R = args.lists if args.lists is not None else required_size(H, args.mode, pi.size if pi else 1)
        lists = ListAssignment.uniform(H.n, R)
    else:
        R = args.lists if args.lists is not None else lists.min_size
    return H, lists, pi, R


def _run(H, lists, pi, mode, R, seed, max_iters):
    if mode == SEQUENCES:
        return entropy.run_sequences(H, pi, lists, seed=seed, R=R, max_iters=max_iters)
    return entropy.run(H, lists, mode, seed=seed, R=R, max_iters=max_iters)


# -- commands -------------------------------------------------------------------


def cmd_bounds(args) -> int:
    if args.thresholds:
        checks = bounds.corollary_threshold_checks()
        text = "".join(str(c) + "\n" for c in checks)
        payload = [{"name": c.name, "k": c.k, "bound": c.bound, "limit": str(c.limit), "ok": c.ok} for c in checks]
        _emit(args, text, payload)
        return 0 if all(c.ok for c in checks) else 1
    if args.k is None or args.delta is None or args.i is None:
        raise UsageError("bounds needs --k, --delta and --i (or --thresholds)")
    I = [int(x) for x in args.i.split(",") if x]
    if args.mode == SETS:
        R = bounds.bound_ieds(args.k, args.delta, I)
    elif args.mode == MULTISETS:
        R = bounds.bound_iedm(args.k, args.delta, I)
    else:
        R = bounds.bound_sequences(args.k, args.delta, I, args.pi_size)
    _emit(args, f"R={R}\n", {"R": R, "k": args.k, "delta": args.delta, "I": I, "mode": args.mode})
    return 0


def cmd_color(args) -> int:
    H, lists, pi, R = _load_instance(args)
    res = _run(H, lists, pi, args.mode, R, args.seed, args.max_iters)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(entropy.format_log(res.log))
    text = io.format_coloring(res.coloring, res.iterations, args.seed)
    if not res.complete:
        text += f"# incomplete after {res.iterations} iterations\n"
    payload = {
        "complete": res.complete,
        "coloring": {str(v): c for v, c in sorted(res.coloring.items())},
        "iterations": res.iterations,
        "conflicts": res.conflicts,
        "seed": args.seed,
        "R": R,
    }
    _emit(args, text, payload)
    return 0 if res.complete else 1


def cmd_oracle(args) -> int:
    from .oracle import brute_force_coloring

    H, lists, pi, R = _load_instance(args)
    col = brute_force_coloring(H, lists.truncated(R), args.mode, pi)
    if col is None:
        _emit(args, "none\n", {"coloring": None})
        return 1
    _emit(args, io.format_coloring(col), {"coloring": {str(v): c for v, c in sorted(col.items())}})
    return 0


def cmd_verify(args) -> int:
    H, _ = io.parse_hypergraph(_read(args.input))
    col = io.parse_coloring(_read(args.coloring))
    if args.mode == SEQUENCES:
        pi = io.parse_permutations(_read(args.pi)) if args.pi else PermutationFamily.identity(uniformity(H))
        bad = verify_sequences(H, pi, col)
    else:
        bad = verify(H, col, args.mode)
    if bad is None:
        _emit(args, "ok\n", {"ok": True})
        return 0
    extra = "" if bad.sigma is None else f" sigma {bad.sigma + 1}"
    _emit(
        args,
        f"violation edges {bad.p + 1} {bad.q + 1}{extra}\n",
        {"ok": False, "edges": [bad.p + 1, bad.q + 1], "sigma": None if bad.sigma is None else bad.sigma + 1},
    )
    return 1


def cmd_decode_check(args) -> int:
    H, lists, pi, R = _load_instance(args)
    if args.trace:
        if not args.coloring:
            raise UsageError("--trace needs --coloring with the final coloring")
        log = entropy.parse_log(_read(args.trace))
        final = io.parse_coloring(_read(args.coloring))
        draws = entropy.decode(H, lists, log, final, args.mode, pi=pi, R=R)
        _emit(args, " ".join(map(str, draws)) + "\n", {"draws": list(draws)})
        return 0
    res = _run(H, lists, pi, args.mode, R, args.seed, args.max_iters)
    draws = entropy.decode(H, lists, res.log, res.coloring, args.mode, pi=pi, R=R)
    ok = draws == res.draws
    msg = f"round-trip OK, {res.iterations} iterations\n" if ok else "round-trip MISMATCH\n"
    _emit(args, msg, {"ok": ok, "iterations": res.iterations, "complete": res.complete})
    return 0 if ok else 1


def _graph_command(args, build, label):
    G = io.parse_graph(_read(args.input))
    if not args.label:
        sys.stdout.write(io.format_hypergraph(build(G)))
        return 0
    H = build(G)
    k = uniformity(H)
    R = args.lists if args.lists is not None else required_size(H, args.mode)
    lab = label(G, ListAssignment.uniform(H.n, R), args.mode, seed=args.seed, max_iters=args.max_iters)
    if not lab.result.complete:
        sys.stdout.write(f"# incomplete after {lab.result.iterations} iterations\n")
        return 1
    labels = {e + 1: c for e, c in enumerate(lab.labels)}
    text = io.format_labeling(labels, lab.vertex_labels)
    _emit(args, text, {"edges": labels, "vertices": lab.vertex_labels, "k": k, "R": R})
    return 0


def cmd_dual(args) -> int:
    return _graph_command(args, dual_hypergraph, label_edges)


def cmd_total(args) -> int:
    return _graph_command(args, total_hypergraph, label_total)


def cmd_gndi(args) -> int:
    from .gndi import gndi_bipartite, two_labeling
    from .oracle import brute_force_gndi

    G = io.parse_graph(_read(args.input))
    forced = []
    if args.forced:
        for tok in args.forced.split(","):
            e = int(tok)
            if not 1 <= e <= G.m:
                raise UsageError(f"forced edge {e} outside 1..{G.m}")
            forced.append(e - 1)
    if args.brute:
        if forced:
            raise UsageError("--brute does not support --forced")
        value = brute_force_gndi(G)
        _emit(args, f"gndi {value}\n", {"gndi": value})
        return 0
    labels = two_labeling(G, forced)
    value = gndi_bipartite(G, forced) if labels is None else 2
    text = f"gndi {value}\n"
    if labels is not None:
        text += io.format_labeling({e + 1: c for e, c in enumerate(labels)})
    _emit(args, text, {"gndi": value, "labels": None if labels is None else list(labels)})
    return 0


def cmd_property_b(args) -> int:
    from .gndi import nae_satisfiable, property_b

    text = _read(args.input)
    first = next((ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")), "")
    if first == "F":
        phi = io.parse_formula(text)
        sol = nae_satisfiable(phi)
        out = None if sol is None else tuple(1 if x else 2 for x in sol)
    else:
        H, _ = io.parse_hypergraph(text)
        out = property_b(H)
    if out is None:
        _emit(args, "none\n", {"coloring": None})
        return 1
    body = "".join(f"{v} {c}\n" for v, c in enumerate(out, start=1))
    _emit(args, body, {"coloring": list(out)})
    return 0


def cmd_gadget(args) -> int:
    from .gndi import hardness_gadget

    phi = io.parse_formula(_read(args.input))
    sys.stdout.write(io.format_graph(hardness_gadget(phi, args.girth)))
    return 0


def cmd_bench(args) -> int:
    if args.regular is not None:
        return _bench_scaling(args)
    if not args.input:
        raise UsageError("bench needs --in or --regular")
    H, lists, pi, R = _load_instance(args)
    stats = entropy.iteration_stats(H, lists, args.mode, args.trials, args.seed, pi=pi, R=R)
    lines = ["trial\tseed\titerations"]
    lines += [f"{t}\t{args.seed + t}\t{c}" for t, c in enumerate(stats.counts)]
    lines.append(f"# n {H.n} R {R} mean {stats.mean:.3f} max {stats.max} nRlnR {stats.reference:.3f}")
    payload = {
        "n": H.n,
        "R": R,
        "counts": stats.counts,
        "mean": stats.mean,
        "max": stats.max,
        "reference": stats.reference,
    }
    _emit(args, "\n".join(lines) + "\n", payload)
    if args.plot:
        from .report import plot_trials

        plot_trials(stats.counts, stats.reference, args.plot, f"n={H.n}, R={R}, {args.mode}")
    return 0


def _bench_scaling(args) -> int:
    k = args.regular
    sizes = [int(x) for x in args.sizes.split(",")]
    rows = []
    for size in sizes:
        if (2 * size) % k:
            raise UsageError(f"hypergraph size {size} is not k/2 times a vertex count")
        G = random_regular_graph(k, 2 * size // k, args.seed)
        H = dual_hypergraph(G)
        R = args.lists if args.lists is not None else required_size(H, args.mode)
        lists = ListAssignment.uniform(H.n, R)
        stats = entropy.iteration_stats(H, lists, args.mode, args.trials, args.seed, R=R)
        rows.append((H.n, R, stats.mean, stats.max, stats.reference))
    lines = ["n\tR\tmean\tmax\tnRlnR"]
    lines += [f"{n}\t{R}\t{m:.3f}\t{mx}\t{ref:.3f}" for n, R, m, mx, ref in rows]
    payload = [dict(zip(("n", "R", "mean", "max", "reference"), r)) for r in rows]
    _emit(args, "\n".join(lines) + "\n", payload)
    if args.plot:
        from .report import plot_scaling

        plot_scaling([r[0] for r in rows], [r[2] for r in rows], [r[3] for r in rows], args.plot, f"duals of {k}-regular graphs")
    return 0


# -- parser -----------------------------------------------------------------------


def _instance_flags(p, need_input=True):
    p.add_argument("--in", dest="input", required=need_input, help="hypergraph file ('-' for stdin)")
    p.add_argument("--mode", choices=MODES, default=SETS)
    p.add_argument("--lists", type=int, help="list size R (default: computed bound or file lists)")
    p.add_argument("--pi", help="permutation file for --mode sequences (default: identity)")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    p.add_argument("--max-iters", type=int, help="iteration cap")
    p.add_argument("--json", action="store_true", help="structured output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iedcolor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="list size that guarantees a coloring")
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--i", help="comma-separated difference sizes, e.g. 9 or 1,2")
    p.add_argument("--mode", choices=MODES, default=SETS)
    p.add_argument("--pi-size", type=int, default=1)
    p.add_argument("--thresholds", action="store_true", help="check the large-k threshold inequalities")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("color", help="run the randomized coloring")
    _instance_flags(p)
    p.add_argument("--trace", help="write the conflict log to this file")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("oracle", help="exhaustive search for a coloring")
    _instance_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a coloring file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--mode", choices=MODES, default=SETS)
    p.add_argument("--pi")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode-check", help="run, decode the log and compare draws")
    _instance_flags(p)
    p.add_argument("--trace", help="decode this conflict log instead of running")
    p.add_argument("--coloring", help="final coloring matching --trace")
    p.set_defaults(func=cmd_decode_check)

    for name, func, what in (("dual", cmd_dual, "dual"), ("total", cmd_total, "total")):
        p = sub.add_parser(name, help=f"{what} hypergraph of a graph, or a labeling with --label")
        p.add_argument("--in", dest="input", required=True, help="graph file")
        p.add_argument("--label", action="store_true", help="color the hypergraph and print the labeling")
        p.add_argument("--mode", choices=(SETS, MULTISETS), default=SETS)
        p.add_argument("--lists", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-iters", type=int)
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("gndi", help="two or three labels for a bipartite graph")
    p.add_argument("--in", dest="input", required=True, help="graph file")
    p.add_argument("--forced", help="comma-separated 1-based edges that must get label 1")
    p.add_argument("--brute", action="store_true", help="use exhaustive search")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gndi)

    p = sub.add_parser("property-b", help="2-coloring with no monochromatic edge (hypergraph or formula file)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_property_b)

    p = sub.add_parser("gadget", help="graph whose 2-labelings encode a NAE formula")
    p.add_argument("--in", dest="input", required=True, help="formula file")
    p.add_argument("--girth", type=int, default=4)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("bench", help="iteration counts over seeded trials")
    _instance_flags(p, need_input=False)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--regular", type=int, help="benchmark duals of random k-regular graphs instead of --in")
    p.add_argument("--sizes", default="50,100,200", help="hypergraph vertex counts for --regular")
    p.add_argument("--plot", help="write a PNG figure to this path")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"iedcolor: error: {exc}", file=sys.stderr)
        return 2
    except (IedError, OSError, ValueError) as exc:
        print(f"iedcolor: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
