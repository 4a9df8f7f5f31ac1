"""Command-line entry point.

Subcommands: generate, analyze, verify, walk, energy, mix.  All output
is deterministic for fixed inputs and seed; floats print with 17
significant digits.  Exit codes: 0 success, 1 at least one asserted
bound check failed, 2 bad input or IO failure.

SPECTRA_THREADS caps the compiled-kernel thread pool.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bounds, energy, errors, graphs, report, walks
from .operators import OperatorKind
from .spectral import decompose_kind, vertex_measure

JUMP_ASYMPTOTE = 1.0 / math.sqrt(5.0 * math.pi)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _apply_thread_cap() -> None:
    cap = os.environ.get("SPECTRA_THREADS")
    if cap:
        try:
            import numba

            limit = numba.config.NUMBA_NUM_THREADS
            numba.set_num_threads(min(max(1, int(cap)), limit))
        except ImportError:
            pass


def parse_generator_spec(spec: str):
    """`kind:key=value,...`; offsets use dashes (offsets=1-2), torus
    dimensions use x (dims=15x15)."""
    if ":" not in spec:
        raise errors.BadSpec(f"generator spec {spec!r} needs kind:params")
    kind, _, raw = spec.partition(":")
    params: dict = {}
    for item in raw.split(","):
        if not item:
            continue
        if "=" not in item:
            raise errors.BadSpec(f"bad parameter {item!r}")
        key, _, value = item.partition("=")
        try:
            if key == "offsets":
                params[key] = tuple(int(v) for v in value.split("-"))
            elif key == "dims":
                params[key] = tuple(int(v) for v in value.split("x"))
            else:
                params[key] = int(value)
        except ValueError as exc:
            raise errors.BadSpec(f"bad value for {key}: {value!r}") from exc
    return kind, params


def load_graph(path: str) -> graphs.WeightedGraph:
    p = Path(path)
    if not p.exists():
        raise IOError(f"no such file: {path}")
    text = p.read_text()
    label = p.stem
    if p.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IOError(f"bad JSON in {path}: {exc}") from exc
        return graphs.from_json_dict(data, label=label)
    return graphs.from_csv(text, label=label)


def _summary_line(g: graphs.WeightedGraph) -> str:
    bip = graphs.bipartiteness(g)
    parts = [f"n={g.n}", f"edges={len(g.edges)}"]
    parts.append("bipartite" if bip.is_bipartite else "non-bipartite")
    if g.regular:
        parts.append(f"{g.d_min}-regular")
    else:
        parts.append(f"degrees {g.d_min}..{g.d_max}")
    parts.append(f"diameter={graphs.diameter(g)}")
    return ", ".join(parts)


def cmd_generate(args) -> int:
    kind, params = parse_generator_spec(args.spec)
    try:
        g = graphs.generate(kind, params, seed=args.seed)
    except (errors.InfeasibleParams, KeyError) as exc:
        raise errors.BadSpec(f"infeasible generator spec: {exc}") from exc
    csv = graphs.to_csv(g)
    if args.out:
        Path(args.out).write_text(csv)
    else:
        sys.stdout.write(csv)
    print(f"{g.label}: {_summary_line(g)}", file=sys.stderr)
    return 0


def _measure_csvs(g, outdir: Path) -> None:
    for tag, kind in (("L", OperatorKind.LAPLACIAN),
                      ("Q", OperatorKind.SIGNLESS)):
        dec = decompose_kind(g, kind)
        for x in range(g.n):
            path = outdir / f"measure_{tag}_v{x}.csv"
            path.write_text(vertex_measure(dec, x).to_csv())


def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    bip = graphs.bipartiteness(g)
    data: dict = {"schema": report.SCHEMA_VERSION, "graph": g.label,
                  "n": g.n, "edges": len(g.edges),
                  "bipartite": bip.is_bipartite,
                  "diameter": graphs.diameter(g),
                  "resistance_diameter": graphs.resistance_diameter(g),
                  "stationary": [float(v) for v in g.stationary()]}
    for tag, kind in (("P", OperatorKind.TRANSITION),
                      ("L", OperatorKind.LAPLACIAN),
                      ("Q", OperatorKind.SIGNLESS),
                      ("Theta", OperatorKind.COMBINATORIAL_SIGNLESS)):
        dec = decompose_kind(g, kind)
        data[f"spectrum_{tag}"] = [float(v) for v in dec.eigenvalues]
    data["spectrum_A"] = [float(v) for v in
                          np.linalg.eigvalsh(g.adjacency_matrix())]
    if bip.is_bipartite:
        data["t_rel"] = None
        data["t_unif"] = None
        data["reason"] = "bipartite"
        data["efficiency_lower"] = 0.0
        data["efficiency_upper"] = 0.0
    else:
        times = walks.chain_times(g)
        data["t_rel"] = times.relaxation_time
        data["t_unif"] = times.uniform_mixing_time
        est = energy.efficiency_upper(g, restarts=args.restarts,
                                      seed=args.seed)
        data["efficiency_lower"] = est.lower_bound
        data["efficiency_upper"] = est.upper_bound
        data["efficiency_method"] = est.method
    text = report.dumps(data) + "\n"
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "analysis.json").write_text(text)
        _measure_csvs(g, outdir)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    if args.delta_grid:
        deltas = [float(v) for v in args.delta_grid.split(",")]
    else:
        deltas = None
    if args.t_grid:
        ts = [int(v) for v in args.t_grid.split(",")]
    else:
        ts = None
    checker_names = args.checkers.split(",") if args.checkers else None

    if args.suite:
        if args.suite != "standard":
            raise errors.BadSpec(f"unknown suite {args.suite!r}")
        graph_list = bounds.standard_suite(seed=args.seed)
    elif args.graph:
        graph_list = [load_graph(args.graph)]
    else:
        raise errors.BadSpec("verify needs a graph file or --suite standard")

    # the kernel-integral checks are graph-free and live outside run_checkers
    with_calculus = checker_names is None or "calculus" in checker_names
    if checker_names is not None:
        checker_names = [n for n in checker_names if n != "calculus"]

    bounds.set_grid_overrides(deltas=deltas, ts=ts)
    try:
        checks, skips = bounds.run_checkers(graph_list, checker_names)
        if with_calculus:
            checks.extend(bounds.check_calculus())
    finally:
        bounds.set_grid_overrides()

    failures = [c for c in checks if c.asserted and not c.holds]
    report_json = report.checks_to_json(checks)
    summary = report.summary_csv(checks)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "report.json").write_text(report_json)
        (outdir / "summary.csv").write_text(summary)
        if skips:
            (outdir / "skips.json").write_text(report.dumps(skips) + "\n")
    else:
        sys.stdout.write(report_json)
    print(f"checks: {len(checks)}, failures: {len(failures)}, "
          f"skips: {len(skips)}", file=sys.stderr)
    if args.suite:
        demo = bounds.spectral_gap_demo()
        print("spectral gap trend (demonstration, no pass/fail):",
              file=sys.stderr)
        for row in demo:
            print(f"  n={row['n']:4d}  top_gap={_fmt(row['gamma_plus'])}  "
                  f"bottom_gap={_fmt(row['gamma_minus'])}", file=sys.stderr)
        torus = next(g for g in graph_list
                     if g.label == "grid_torus(15x15)")
        growth = bounds.volume_growth_demo(bounds.GraphBundle(torus),
                                           c=1.0, D=2.0)
        print("polynomial growth trend on grid_torus(15x15), c=1, D=2 "
              "(demonstration, no pass/fail):", file=sys.stderr)
        for row in growth:
            if row["kind"] == "measure":
                print(f"  delta={row['delta']:<5g} reduced="
                      f"{_fmt(row['reduced_measure'])} signless="
                      f"{_fmt(row['signless_measure'])} "
                      f"bound={_fmt(row['bound'])}", file=sys.stderr)
            else:
                print(f"  t={row['t']:<5d} p_t={_fmt(row['p_t'])} "
                      f"bound={_fmt(row['bound'])}", file=sys.stderr)
    for failure in failures:
        print(f"FAILED {failure.name} on "
              f"{failure.context.get('graph', '?')}: "
              f"lhs={_fmt(failure.lhs)} rhs={_fmt(failure.rhs)}",
              file=sys.stderr)
    return 1 if failures else 0


def cmd_walk(args) -> int:
    lines = []
    if args.jump1d:
        profile = walks.jump_walk_profile(args.t_max)
        lines.append("t,p,sqrt_t_p,asymptote")
        for t in range(args.t_max + 1):
            scaled = math.sqrt(t) * profile[t] if t else 0.0
            lines.append(f"{t},{_fmt(profile[t])},{_fmt(scaled)},"
                         f"{_fmt(JUMP_ASYMPTOTE)}")
    else:
        g = load_graph(args.graph)
        if not 0 <= args.x < g.n:
            raise errors.BadVertex(f"vertex {args.x} out of range")
        bip = graphs.bipartiteness(g)
        with_bound = g.regular and g.unweighted and not bip.is_bipartite
        dec = decompose_kind(g, OperatorKind.TRANSITION)
        header = "t,p_exact,p_mc,ci"
        if with_bound:
            header += ",bound_18_over_sqrt_t"
        lines.append(header)
        for t in range(args.t_max + 1):
            p = walks.return_prob_spectral(dec, args.x, t)
            if args.samples > 0:
                est = walks.monte_carlo_return(g, args.x, t, args.samples,
                                               args.seed)
                mc, ci = _fmt(est.estimate), _fmt(est.ci_half_width)
            else:
                mc, ci = "", ""
            row = f"{t},{_fmt(p)},{mc},{ci}"
            if with_bound:
                row += f",{_fmt(18.0 / math.sqrt(t)) if t else ''}"
            lines.append(row)
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_energy(args) -> int:
    g = load_graph(args.graph)
    bip = graphs.bipartiteness(g)
    if bip.is_bipartite:
        witness = energy.bipartite_certificate(g)
        data = {"schema": report.SCHEMA_VERSION, "graph": g.label,
                "bipartite": True, "efficiency_lower": 0.0,
                "efficiency_upper": 0.0,
                "witness_objective": float(
                    energy.q_form(g, witness) / np.abs(witness).max() ** 2)}
        selection = None
    else:
        est = energy.efficiency_upper(g, restarts=args.restarts,
                                      seed=args.seed)
        witness = est.witness
        dec_Q = decompose_kind(g, OperatorKind.SIGNLESS)
        delta = float(np.median(dec_Q.eigenvalues))
        sel = energy.set_selection(g, dec_Q, delta)
        selection = {"delta": sel.delta, "m": sel.m,
                     "centers": list(sel.centers),
                     "region_masses": list(sel.region_masses),
                     "center_masses": list(sel.center_masses),
                     "tree_sizes": [len(t) for t in sel.trees],
                     "tree_energies": list(sel.tree_energies),
                     "average_mass": sel.average_mass}
        data = {"schema": report.SCHEMA_VERSION, "graph": g.label,
                "bipartite": False, "efficiency_lower": est.lower_bound,
                "efficiency_upper": est.upper_bound, "method": est.method,
                "selection": selection}
    witness_csv = "vertex,value\n" + "\n".join(
        f"{x},{_fmt(v)}" for x, v in enumerate(witness)) + "\n"
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "energy.json").write_text(report.dumps(data) + "\n")
        (outdir / "witness.csv").write_text(witness_csv)
    else:
        sys.stdout.write(report.dumps(data) + "\n")
        sys.stdout.write(witness_csv)
    return 0


def cmd_mix(args) -> int:
    g = load_graph(args.graph)
    bip = graphs.bipartiteness(g)
    if bip.is_bipartite:
        data = {"schema": report.SCHEMA_VERSION, "graph": g.label,
                "t_rel": None, "t_unif": None, "reason": "bipartite"}
        dev_csv = "t,deviation\n"
    else:
        times = walks.chain_times(g)
        data = {"schema": report.SCHEMA_VERSION, "graph": g.label,
                "t_rel": times.relaxation_time,
                "lambda_star": times.lambda_star,
                "t_prime": times.t_prime,
                "t_unif": times.uniform_mixing_time,
                "threshold": times.threshold,
                "commute_diameter": float(
                    (times.hitting + times.hitting.T).max())}
        dev_csv = "t,deviation\n" + "\n".join(
            f"{t + 1},{_fmt(d)}" for t, d in enumerate(times.deviations)) \
            + "\n"
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "mixing.json").write_text(report.dumps(data) + "\n")
        (outdir / "deviations.csv").write_text(dev_csv)
    else:
        sys.stdout.write(report.dumps(data) + "\n")
        sys.stdout.write(dev_csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specwalk",
        description="Spectral bounds for simple random walk on graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated graph as CSV")
    p.add_argument("spec", help="e.g. cycle:n=5 or circulant:n=9,offsets=1-2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("analyze", help="spectra and chain summary as JSON")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--restarts", type=int, default=8)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify", help="run bound checkers, emit report JSON")
    p.add_argument("graph", nargs="?")
    p.add_argument("--suite", choices=["standard"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--checkers", help="comma-separated checker names")
    p.add_argument("--delta-grid", help="comma-separated extra delta points")
    p.add_argument("--t-grid", help="comma-separated replacement t grid")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("walk", help="return probabilities per step as CSV")
    p.add_argument("graph", nargs="?")
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--t-max", type=int, default=64)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jump1d", action="store_true",
                   help="1-D jump-walk profile instead of a graph walk")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_walk)

    p = sub.add_parser("energy", help="efficiency sandwich and selection")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_energy)

    p = sub.add_parser("mix", help="relaxation and uniform mixing data")
    p.add_argument("graph")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_mix)
    return parser


def main(argv=None) -> int:
    _apply_thread_cap()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (errors.BadSpec, errors.BadVertex, errors.InfeasibleParams,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
