"""Command-line surface.

Subcommands: eval, star-curve, phase, search, subnet, reduce.  Graphs come
from a file in the plain text format or from a generator spec
(``matching:4``, ``star:5``, ``kdd:6:2``, ``kdn:8:3``).  Numbers serialize
with 12 significant digits, making identical runs byte-identical.

Exit codes: 0 success, 2 usage/validation error, 3 capacity exceeded,
4 infeasible instance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import svgplot
from .errors import CapacityError, InfeasibleError
from .exactcover import parse_cover_instance
from .extremal import (
    SubnetworkInstance,
    best_half_regular,
    best_subnetwork_exact,
    best_subnetwork_local,
    phase_region,
    phase_to_csv,
    reduce_clique_decomposition,
    reduce_exact_cover,
)
from .graphs import (
    canonical_form,
    format_graph,
    gen_kdd,
    gen_kdn,
    gen_matching,
    gen_star,
    parse_graph,
)
from .infection import (
    ThresholdDistribution,
    infected_fraction_exact,
    infected_fraction_mc,
    star_expected_fraction,
    threshold_fraction_mc,
)
from .percolation import ISOLATED_COUNT, eval_functional


def _sig(value: float) -> float:
    """Round to the 12 significant digits used by every serializer."""
    return float(f"{value:.12g}")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def load_graph(spec: str):
    """A generator spec ('kind:args') or a path to a graph file."""
    kind, _, rest = spec.partition(":")
    if kind in ("matching", "star", "kdd", "kdn"):
        try:
            args = [int(tok) for tok in rest.split(":")] if rest else []
        except ValueError:
            raise ValueError(f"bad generator arguments in {spec!r}")
        if kind == "matching" and len(args) == 1:
            return gen_matching(args[0])
        if kind == "star" and len(args) == 1:
            return gen_star(args[0])
        if kind == "kdd" and len(args) == 2:
            return gen_kdd(*args)
        if kind == "kdn" and len(args) == 2:
            return gen_kdn(*args)
        raise ValueError(f"bad generator spec {spec!r}")
    with open(spec, encoding="utf-8") as fp:
        return parse_graph(fp.read())


def parse_dist(literal: str) -> ThresholdDistribution:
    """Threshold literal like '0:.6,1:.001,3:.399'; unlisted mass is residual."""
    entries = {}
    for part in literal.split(","):
        idx_s, _, prob_s = part.partition(":")
        if not prob_s:
            raise ValueError(f"bad threshold entry {part!r}")
        idx = int(idx_s)
        if idx < 0:
            raise ValueError("threshold indices must be >= 0")
        entries[idx] = entries.get(idx, 0.0) + float(prob_s)
    top = max(entries)
    probs = [entries.get(i, 0.0) for i in range(top + 1)]
    residual = 1.0 - sum(probs)
    if residual < -1e-12:
        raise ValueError(f"threshold probabilities sum above 1: {sum(probs)}")
    return ThresholdDistribution(probs=tuple(probs), residual=max(residual, 0.0))


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _require_seed(args) -> None:
    if args.seed is None:
        raise ValueError("sampling requested: --seed is required")


def _graph_report(g) -> dict:
    return {"n_left": g.n_left, "n_right": g.n_right, "edges": [list(e) for e in g.edges]}


def cmd_eval(args) -> int:
    g = load_graph(args.graph)
    report = {"graph": args.graph}
    if args.dist is not None:
        dist = parse_dist(args.dist)
        if args.samples is None:
            raise ValueError("--dist evaluation is Monte Carlo: --samples is required")
        _require_seed(args)
        est = threshold_fraction_mc(g, dist, args.samples, args.seed, threads=args.threads)
        report.update(
            method="threshold-mc",
            value=_sig(est.mean),
            std_error=_sig(est.std_error),
            samples=est.samples,
            dist=args.dist,
            seed=args.seed,
        )
    else:
        if args.mu is None or args.p is None:
            raise ValueError("eval needs --mu and --p (or --dist)")
        report.update(mu=args.mu, p=args.p)
        try:
            value = infected_fraction_exact(
                g, args.mu, args.p, edge_limit=args.exact_limit, threads=args.threads
            )
            report.update(method="exact", value=_sig(value), std_error=0.0, samples=0)
        except CapacityError:
            if not args.mc:
                raise
            if args.samples is None:
                raise ValueError("--mc fallback needs --samples")
            _require_seed(args)
            est = infected_fraction_mc(
                g, args.mu, args.p, args.samples, args.seed, threads=args.threads
            )
            report.update(
                method="mc",
                value=_sig(est.mean),
                std_error=_sig(est.std_error),
                samples=est.samples,
                seed=args.seed,
            )
    if args.format == "json":
        _emit(args, json.dumps(report, sort_keys=True) + "\n")
    else:
        _emit(
            args,
            "value,std_error,samples,method\n"
            f"{_fmt(report['value'])},{_fmt(report['std_error'])},"
            f"{report['samples']},{report['method']}\n",
        )
    return 0


def cmd_star_curve(args) -> int:
    if args.k_max < 1:
        raise ValueError("--k-max must be >= 1")
    ks = list(range(1, args.k_max + 1))
    values = [star_expected_fraction(k, args.mu, args.p) for k in ks]
    if args.format == "svg":
        _emit(
            args,
            svgplot.line_plot(
                [float(k) for k in ks],
                values,
                x_label="k (star degree)",
                y_label="expected infected fraction",
                title=f"mu={args.mu:g} p={args.p:g}",
            ),
        )
    elif args.format == "json":
        rows = [{"k": k, "value": _sig(v)} for k, v in zip(ks, values)]
        _emit(args, json.dumps(rows) + "\n")
    else:
        lines = ["k,expected_infected_fraction"]
        lines.extend(f"{k},{_fmt(v)}" for k, v in zip(ks, values))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_phase(args) -> int:
    if args.grid_steps < 2:
        raise ValueError("--grid-steps must be >= 2")
    grid = [i / (args.grid_steps - 1) for i in range(args.grid_steps)]
    diagram = phase_region(
        args.d, grid, grid, tie_tol=args.tie_tol, edge_limit=args.exact_limit
    )
    if args.format == "svg":
        _emit(
            args,
            svgplot.raster_plot(
                diagram.mu_grid,
                diagram.p_grid,
                diagram.cells,
                x_label="mu",
                y_label="p",
                title=f"K_dd vs K_dn, d={args.d}",
            ),
        )
    else:
        _emit(args, phase_to_csv(diagram))
    return 0


_SHAPES = {"matching": gen_matching, "star": gen_star}


def _classify(g) -> str:
    n = g.n_left
    c = canonical_form(g)
    for name, gen in _SHAPES.items():
        if c == canonical_form(gen(n)):
            return name
    if n % 1 == 0:
        for d in range(1, n + 1):
            if n % d == 0 and c == canonical_form(gen_kdd(n, d)):
                return f"kdd:{d}"
        for d in range(1, n + 1):
            if c == canonical_form(gen_kdn(n, d)):
                return f"kdn:{d}"
    return "other"


def cmd_search(args) -> int:
    result = best_half_regular(
        args.n, args.d, args.mu, args.p, edge_limit=args.exact_limit, threads=args.threads
    )
    report = {
        "n": args.n,
        "d": args.d,
        "mu": args.mu,
        "p": args.p,
        "value": _sig(result.value),
        "evaluated_count": result.evaluated_count,
        "minimizers": [
            {"kind": _classify(g), **_graph_report(g)} for g in result.minimizers
        ],
    }
    _emit(args, json.dumps(report, sort_keys=True) + "\n")
    return 0


def cmd_subnet(args) -> int:
    with open(args.instance, encoding="utf-8") as fp:
        g = parse_graph(fp.read())
    inst = SubnetworkInstance(graph=g, d=args.d)
    if args.mode == "exact":
        result = best_subnetwork_exact(inst, args.mu, args.p, exact_limit=args.exact_limit)
    else:
        if args.iterations is None:
            raise ValueError("--mode local needs --iterations")
        _require_seed(args)
        result = best_subnetwork_local(
            inst, args.mu, args.p, args.iterations, args.seed, exact_limit=args.exact_limit
        )
    best = result.minimizers[0]
    report = {
        "mode": args.mode,
        "d": args.d,
        "mu": args.mu,
        "p": args.p,
        "value": _sig(result.value),
        "evaluated_count": result.evaluated_count,
        "n_minimizers": len(result.minimizers),
        "isolated_count": int(eval_functional(best, ISOLATED_COUNT)),
        "subnetwork": _graph_report(best),
    }
    _emit(args, json.dumps(report, sort_keys=True) + "\n")
    return 0


def cmd_reduce(args) -> int:
    with open(args.instance, encoding="utf-8") as fp:
        text = fp.read()
    if args.kind == "exact-cover":
        universe_size, k, sets = parse_cover_instance(text)
        inst = reduce_exact_cover(universe_size, sets, k)
    else:
        rows = [
            line.split("#", 1)[0].strip()
            for line in text.splitlines()
            if line.split("#", 1)[0].strip()
        ]
        head = rows[0].split()
        if len(head) != 2:
            raise ValueError("clique instance header must be 'n_vertices d'")
        n_vertices, d = int(head[0]), int(head[1])
        pairs = []
        for line in rows[1:]:
            a, b = line.split()
            pairs.append((int(a), int(b)))
        inst = reduce_clique_decomposition(pairs, n_vertices, d)
    graph_text = format_graph(inst.graph)
    meta = {
        "kind": args.kind,
        "d": inst.d,
        "n_left": inst.graph.n_left,
        "n_right": inst.graph.n_right,
        "n_edges": inst.graph.n_edges,
        "certificate": None if inst.certificate is None else _sig(inst.certificate),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(graph_text)
        sys.stdout.write(json.dumps(meta, sort_keys=True) + "\n")
    else:
        sys.stdout.write(graph_text)
    return 0


def _add_common(sub, *, fmt_choices=("csv", "json"), fmt_default="csv"):
    sub.add_argument("--format", choices=list(fmt_choices), default=fmt_default)
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub.add_argument("--exact-limit", type=int, default=24, dest="exact_limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biperc",
        description="Expected infection levels of bipartite networks under "
        "independent-cascade and threshold dynamics.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="expected infected fraction of one graph")
    p_eval.add_argument("--graph", required=True, help="graph file or spec like kdd:6:2")
    p_eval.add_argument("--mu", type=float)
    p_eval.add_argument("--p", type=float)
    p_eval.add_argument("--dist", help="threshold literal like 0:.6,1:.001,3:.399")
    p_eval.add_argument("--samples", type=int)
    p_eval.add_argument("--seed", type=int)
    p_eval.add_argument(
        "--mc", action="store_true", help="allow Monte Carlo fallback above the exact limit"
    )
    _add_common(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_curve = subs.add_parser("star-curve", help="expected fraction vs star degree")
    p_curve.add_argument("--mu", type=float, required=True)
    p_curve.add_argument("--p", type=float, required=True)
    p_curve.add_argument("--k-max", type=int, required=True, dest="k_max")
    _add_common(p_curve, fmt_choices=("csv", "json", "svg"))
    p_curve.set_defaults(func=cmd_star_curve)

    p_phase = subs.add_parser("phase", help="K_dd vs K_dn phase diagram")
    p_phase.add_argument("--d", type=int, required=True)
    p_phase.add_argument("--grid-steps", type=int, default=21, dest="grid_steps")
    p_phase.add_argument("--tie-tol", type=float, default=1e-9, dest="tie_tol")
    _add_common(p_phase, fmt_choices=("csv", "svg"))
    p_phase.set_defaults(func=cmd_phase)

    p_search = subs.add_parser("search", help="optimal half-d-regular graph by exhaustion")
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--d", type=int, required=True)
    p_search.add_argument("--mu", type=float, required=True)
    p_search.add_argument("--p", type=float, required=True)
    _add_common(p_search, fmt_choices=("json",), fmt_default="json")
    p_search.set_defaults(func=cmd_search)

    p_subnet = subs.add_parser("subnet", help="optimal subnetwork of a host graph")
    p_subnet.add_argument("--instance", required=True, help="host graph file")
    p_subnet.add_argument("--d", type=int, required=True)
    p_subnet.add_argument("--mu", type=float, required=True)
    p_subnet.add_argument("--p", type=float, required=True)
    p_subnet.add_argument("--mode", choices=("exact", "local"), default="exact")
    p_subnet.add_argument("--iterations", type=int)
    p_subnet.add_argument("--seed", type=int)
    _add_common(p_subnet, fmt_choices=("json",), fmt_default="json")
    p_subnet.set_defaults(func=cmd_subnet)

    p_reduce = subs.add_parser("reduce", help="build a subnetwork instance by reduction")
    p_reduce.add_argument("kind", choices=("exact-cover", "clique"))
    p_reduce.add_argument("instance", help="instance file")
    p_reduce.add_argument("--out", help="graph file to write (meta JSON goes to stdout)")
    p_reduce.set_defaults(func=cmd_reduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except InfeasibleError as exc:
        print(f"infeasible instance: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
