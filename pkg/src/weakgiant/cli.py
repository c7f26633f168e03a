"""Command-line interface.

Subcommands: ``analyze`` (moment criteria for a degree distribution),
``gf`` (generating-function fixed point and component-size law),
``evolve`` (closed-form growth-process analysis), ``flory`` (classical
gelation parameters), ``simulate`` (Monte Carlo), ``barycentric``
(transition-class grid over a three-atom mixture simplex).

Every run is deterministic given its flags; the default seed is the fixed
constant ``DEFAULT_SEED``.  JSON output carries floats with 17 significant
digits so values round-trip exactly.  Exit codes: 0 success, 2 unparsable
input, 3 invalid input, 4 non-convergence, 5 unreachable target.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import criteria, evolution, flory, gfsolver, mcgraph
from .degdist import BivariateDegreeDist
from .errors import (
    ConversionOutOfRange,
    Exhausted,
    NoConvergence,
    ParseError,
    Supercritical,
    ValidationError,
)
from .evolution import BoundDist

DEFAULT_SEED = 12345


def _json17(obj) -> str:
    """Minimal JSON emitter with 17-significant-digit floats."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite value {obj!r} in JSON output")
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_json17(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json17(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _parse_atom(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"atom {text!r} must look like 'n,k'")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"atom {text!r} must hold two integers") from None


def _cmd_analyze(args) -> str:
    d = BivariateDegreeDist.from_text(_read_text(args.dist), tol=args.tol)
    report = criteria.criteria_report(d, balance_tol=args.tol)
    return _json17(report.to_json_dict())


def _cmd_gf(args) -> str:
    d = BivariateDegreeDist.from_text(_read_text(args.dist), tol=args.tol)
    sol = gfsolver.interior_fixed_point(
        d, tol=args.fp_tol, max_iter=args.max_iter, balance_tol=args.tol
    )
    fraction = gfsolver.giant_weak_fraction(
        d, tol=args.fp_tol, max_iter=args.max_iter, balance_tol=args.tol
    )
    sizes = gfsolver.weak_size_distribution(
        d, args.order, tol=args.fp_tol, max_iter=args.max_iter, balance_tol=args.tol
    )
    return _json17(
        {
            "s_in": sol.s_in,
            "s_out": sol.s_out,
            "giant_fraction": fraction,
            "size_distribution": sizes,
        }
    )


def _cmd_evolve(args) -> str:
    P = BoundDist.from_text(_read_text(args.bounds), tol=args.tol)
    if args.critical:
        tc = evolution.transition_class(P)
        return _json17(
            {
                "class": tc.kind,
                "c_n_crit": tc.c_n_crit,
                "c_k_crit": tc.c_k_crit,
                "t_crit": tc.t_crit,
            }
        )
    nu = evolution.nu_moments(P)
    if args.at_time is not None:
        t = args.at_time
        mu = evolution.mu_of_t(P, t)
        c_n, c_k = evolution.conversions(P, t)
        state = evolution.degree_state_at(P, t)
    else:
        c_n = args.at_conversion
        t = evolution.time_of_conversion(P, c_n)
        mu = c_n * nu.nu10
        c_k = min(c_n * nu.nu10 / nu.nu01, 1.0)
        state = evolution.degree_state_at_conversion(P, c_n)
    marginal = evolution.marginal_degree_dist(state)
    report = criteria.criteria_report(marginal, balance_tol=max(args.tol, 1e-9))
    return _json17(
        {
            "t": t,
            "mu": mu,
            "c_n": c_n,
            "c_k": c_k,
            "marginal": [[n, k, p] for n, k, p in marginal.records()],
            "report": report.to_json_dict(),
        }
    )


def _cmd_flory(args) -> str:
    mix = flory.FloryMixture(args.f1, args.f2, args.f3, args.n)
    params = flory.flory_parameters(mix)
    c_crit = flory.gel_conversion(mix)
    p_a, p_b = flory.gel_point_pa(params)
    gelled = flory.is_gelled(args.pa, params) if args.pa is not None else None
    return _json17(
        {
            "alpha_c": params.alpha_c,
            "rho": params.rho,
            "r": params.r,
            "c_n_crit": c_crit,
            "p_A_crit": p_a,
            "p_B_crit": p_b,
            "gelled": gelled,
        }
    )


def _dump_graph(graph: mcgraph.DirectedMultigraph, path: str) -> None:
    lines = [str(graph.vertex_count)]
    lines.extend(f"{src} {dst}" for src, dst in graph.edges.tolist())
    Path(path).write_text("\n".join(lines) + "\n")


def _cmd_simulate(args) -> str:
    text = _read_text(args.input)
    if args.mode == "config":
        if args.t_end is not None or args.target_conversion is not None:
            raise ValidationError("stop flags apply to kmc mode only")
        if args.dump_trajectory:
            raise ValidationError("trajectory dump applies to kmc mode only")
        d = BivariateDegreeDist.from_text(text, tol=args.tol)
        graph = mcgraph.sample_configuration(d, args.vertices, args.seed)
        t_final = None
        times = mu_hat = None
    else:
        P = BoundDist.from_text(text, tol=args.tol)
        result = mcgraph.kmc_simulate(
            P,
            args.vertices,
            args.seed,
            t_end=args.t_end,
            c_n_target=args.target_conversion,
        )
        graph = result.graph
        t_final = result.state.t
        times, mu_hat = result.times, result.mu_hat
    sizes = mcgraph.weak_component_sizes(graph)
    hist = mcgraph.size_histogram(sizes.tolist(), vertex_weighted=True)
    if args.dump_graph:
        _dump_graph(graph, args.dump_graph)
    if args.dump_trajectory:
        rows = ["# t mu_hat"]
        rows.extend(f"{t:.17g}\t{m:.17g}" for t, m in zip(times.tolist(), mu_hat.tolist()))
        Path(args.dump_trajectory).write_text("\n".join(rows) + "\n")
    return _json17(
        {
            "mode": args.mode,
            "vertices": graph.vertex_count,
            "edges": int(graph.edges.shape[0]),
            "seed": args.seed,
            "t_final": t_final,
            "mu_hat": graph.edges.shape[0] / graph.vertex_count,
            "largest_weak_fraction": float(sizes.max()) / graph.vertex_count,
            "size_histogram": [[s, p] for s, p in sorted(hist.entries.items())],
        }
    )


def _cmd_barycentric(args) -> str:
    atoms = [_parse_atom(a) for a in args.atoms]
    points = evolution.barycentric_grid(atoms, args.resolution)
    lines = ["# f1 f2 f3 class c_n_crit t_crit"]
    for pt in points:
        tc = pt.transition
        c = format(tc.c_n_crit, ".17g") if tc.c_n_crit is not None else ""
        t = format(tc.t_crit, ".17g") if tc.t_crit is not None else ""
        lines.append(
            f"{pt.f1:.17g}\t{pt.f2:.17g}\t{pt.f3:.17g}\t{tc.kind}\t{c}\t{t}"
        )
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="validation tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(
        prog="weakgiant",
        description="Giant weak components of directed random graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="moment criteria for a degree distribution")
    p.add_argument("dist", help="degree distribution file ('n k prob' lines; '-' for stdin)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("gf", parents=[common], help="generating-function fixed point and size law")
    p.add_argument("dist", help="degree distribution file ('-' for stdin)")
    p.add_argument("--order", type=int, default=100, help="series truncation order (default 100)")
    p.add_argument("--fp-tol", type=float, default=gfsolver.FP_TOL, help="fixed-point tolerance")
    p.add_argument("--max-iter", type=int, default=gfsolver.MAX_ITER, help="iteration budget")
    p.set_defaults(func=_cmd_gf)

    p = sub.add_parser("evolve", parents=[common], help="closed-form growth-process analysis")
    p.add_argument("bounds", help="bound distribution file ('n_max k_max prob'; '-' for stdin)")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--critical", action="store_true", help="report the transition class")
    mode.add_argument("--at-time", type=float, default=None, metavar="T")
    mode.add_argument("--at-conversion", type=float, default=None, metavar="C")
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("flory", parents=[common], help="classical gelation parameters")
    p.add_argument("--f1", type=float, required=True, help="fraction of linear A-A units")
    p.add_argument("--f2", type=float, required=True, help="fraction of linear B-B units")
    p.add_argument("--f3", type=float, required=True, help="fraction of n-functional A units")
    p.add_argument("--n", type=int, required=True, help="branch functionality")
    p.add_argument("--pa", type=float, default=None, help="A-group conversion to test for gelation")
    p.set_defaults(func=_cmd_flory)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo sampling")
    p.add_argument("input", help="degree or bound distribution file ('-' for stdin)")
    p.add_argument("--mode", choices=("config", "kmc"), required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--t-end", type=float, default=None, help="kmc: stop at this time")
    p.add_argument("--target-conversion", type=float, default=None, help="kmc: stop at this in-conversion")
    p.add_argument("--dump-graph", default=None, metavar="PATH")
    p.add_argument("--dump-trajectory", default=None, metavar="PATH")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("barycentric", parents=[common], help="transition classes over a mixture simplex")
    p.add_argument("--atoms", nargs=3, required=True, metavar="N,K", help="three capacity atoms")
    p.add_argument("--resolution", type=int, required=True, help="lattice spacing denominator (>= 2)")
    p.set_defaults(func=_cmd_barycentric)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        text = args.func(args)
    except ParseError as exc:
        print(f"weakgiant: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"weakgiant: i/o error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, Supercritical) as exc:
        print(f"weakgiant: invalid input: {exc}", file=sys.stderr)
        return 3
    except NoConvergence as exc:
        print(f"weakgiant: no convergence: {exc}", file=sys.stderr)
        return 4
    except (ConversionOutOfRange, Exhausted) as exc:
        print(f"weakgiant: unreachable target: {exc}", file=sys.stderr)
        return 5
    _write_output(text, args.out)
    return 0


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
