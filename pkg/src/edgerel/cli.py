"""Command-line front end.

Subcommands: ``evaluate`` (full pipeline for one (C, T) pair), ``sweep``
(a grid of pairs), ``simulate`` (Monte Carlo), ``ingest`` (trace to pmf
fragment), ``check`` (validate and summarize a scenario).  Results go to
stdout or ``--out``; diagnostics go to stderr.  Exit codes: 0 success,
2 scenario problems (unreadable, invalid), 3 search-space guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ScenarioError, SearchSpaceExceeded
from .model import Scenario, load_scenario
from .montecarlo import DEFAULT_SEED, SimConfig, simulate
from .pathset import DEFAULT_GUARD
from .reliability import evaluate_scenario, union_reliability
from .timing import min_total_time
from .trace import DiscretizationPolicy, ingest_trace, load_trace, machines_in

EXIT_OK = 0
EXIT_SCENARIO = 2
EXIT_GUARD = 3


def _add_scenario_args(p: argparse.ArgumentParser, with_params=True):
    p.add_argument("--scenario", required=True, help="scenario file path")
    if with_params:
        p.add_argument("--input-size", type=float, default=None,
                       help="initial data size (default: scenario defaults)")
        p.add_argument("--deadline", type=float, default=None,
                       help="completion deadline, seconds (default: scenario defaults)")
    p.add_argument("--format", choices=("table", "csv", "structured"),
                   default="table", help="output format")
    p.add_argument("--out", default=None, help="write results to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgerel",
        description="Deadline reliability of multi-stage deployments on stochastic edge networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="reliability of every plan plus their union")
    _add_scenario_args(p)
    p.add_argument("--cross-check", action="store_true",
                   help="also run the exact and Monte Carlo oracles and report deltas")
    p.add_argument("--trials", type=int, default=100_000,
                   help="Monte Carlo trials used by --cross-check")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD,
                   help="search-space guard (visited states)")

    p = sub.add_parser("sweep", help="evaluate a grid of (input size, deadline) pairs")
    _add_scenario_args(p, with_params=False)
    p.add_argument("--sweep-c", required=True,
                   help="comma-separated input sizes (grid columns)")
    p.add_argument("--sweep-t", required=True,
                   help="comma-separated deadlines (grid rows)")
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD)

    p = sub.add_parser("simulate", help="seeded Monte Carlo estimate")
    _add_scenario_args(p)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cross-check", action="store_true",
                   help="also compute the analytic value and report the delta")
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD)

    p = sub.add_parser("ingest", help="turn a usage trace into resource pmf fragments")
    p.add_argument("--trace", required=True, help="trace file (timestamp,machine_id,cpu_usage)")
    p.add_argument("--machine", default=None,
                   help="single machine id (default: every machine in the trace)")
    p.add_argument("--levels", type=int, default=6, help="number of capacity levels K")
    p.add_argument("--capacity", type=float, default=6.0,
                   help="compute units available at zero usage")
    p.add_argument("--out", default=None)

    p = sub.add_parser("check", help="validate a scenario and print its structure")
    _add_scenario_args(p, with_params=True)
    return parser


def _resolve_params(args, scenario: Scenario):
    c = args.input_size if args.input_size is not None else scenario.default_input_size
    t = args.deadline if args.deadline is not None else scenario.default_deadline
    if c is None or t is None:
        raise ScenarioError(
            "input size and deadline must come from flags or the scenario defaults")
    return float(c), float(t)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _fmt(value: float) -> str:
    return f"{value:.5f}"


def _cmd_evaluate(args) -> int:
    scenario = load_scenario(args.scenario)
    c, t = _resolve_params(args, scenario)
    report = evaluate_scenario(scenario, c, t, guard=args.guard,
                               cross_check=args.cross_check)
    if args.cross_check:
        sim = simulate(scenario, c, t, SimConfig(trials=args.trials, seed=args.seed))
        diag = dict(report.diagnostics or {})
        diag["monte_carlo"] = {
            "estimate": sim.estimate,
            "half_width": sim.half_width,
            "trials": sim.trials,
            "seed": sim.seed,
            "delta": report.global_reliability - sim.estimate,
        }
        report = type(report)(report.per_plan, report.global_reliability,
                              report.input_size, report.deadline, report.method, diag)

    if args.format == "structured":
        _emit(args, report.to_json())
        return EXIT_OK
    rows = [("plan", "feasible", "msvs", "reliability")]
    for p in report.per_plan:
        rows.append((p.name, str(p.feasible_count), str(p.msv_count), _fmt(p.reliability)))
    rows.append(("global", "", "", _fmt(report.global_reliability)))
    if args.format == "csv":
        text = "\n".join(",".join(r) for r in rows)
    else:
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(col.ljust(w) for col, w in zip(r, widths)).rstrip() for r in rows]
        if args.cross_check:
            diag = report.diagnostics or {}
            lines.append(f"max |rsdp - exact| per plan: {diag['max_abs_delta']:.2e}")
            mc = diag["monte_carlo"]
            lines.append(
                f"monte carlo ({mc['trials']} trials, seed {mc['seed']}): "
                f"{_fmt(mc['estimate'])} +- {_fmt(mc['half_width'])} "
                f"(delta {mc['delta']:+.5f})")
        text = "\n".join(lines)
    _emit(args, text)
    return EXIT_OK


def _parse_grid_axis(raw: str, name: str) -> list[float]:
    try:
        values = [float(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise ScenarioError(f"bad {name} list: {raw!r}") from None
    if not values:
        raise ScenarioError(f"{name} list is empty")
    return values


def _cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    cs = _parse_grid_axis(args.sweep_c, "--sweep-c")
    ts = _parse_grid_axis(args.sweep_t, "--sweep-t")
    grid = {}
    for t in ts:
        for c in cs:
            report = evaluate_scenario(scenario, c, t, guard=args.guard)
            grid[(t, c)] = report.global_reliability
    if args.format == "structured":
        cells = [{"deadline": t, "input_size": c, "reliability": grid[(t, c)]}
                 for t in ts for c in cs]
        _emit(args, json.dumps({"cells": cells}, indent=2))
        return EXIT_OK
    header = ["T\\C"] + [f"{c:g}" for c in cs]
    rows = [header] + [[f"{t:g}"] + [_fmt(grid[(t, c)]) for c in cs] for t in ts]
    if args.format == "csv":
        text = "\n".join(",".join(r) for r in rows)
    else:
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        text = "\n".join("  ".join(col.rjust(w) for col, w in zip(r, widths)) for r in rows)
    _emit(args, text)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario)
    c, t = _resolve_params(args, scenario)
    result = simulate(scenario, c, t, SimConfig(trials=args.trials, seed=args.seed))
    analytic = None
    if args.cross_check:
        analytic = evaluate_scenario(scenario, c, t, guard=args.guard).global_reliability
    if args.format == "structured":
        doc = result.to_dict()
        if analytic is not None:
            doc["analytic"] = analytic
            doc["delta"] = result.estimate - analytic
        _emit(args, json.dumps(doc, indent=2))
        return EXIT_OK
    lines = [f"estimate: {_fmt(result.estimate)} +- {_fmt(result.half_width)} "
             f"({result.trials} trials, seed {result.seed})"]
    for name, est in result.per_plan_estimates.items():
        lines.append(f"plan {name}: {_fmt(est)}")
    if analytic is not None:
        lines.append(f"analytic: {_fmt(analytic)} (delta {result.estimate - analytic:+.5f})")
    text = "\n".join(lines) if args.format == "table" else \
        "\n".join(["metric,value",
                   f"estimate,{_fmt(result.estimate)}",
                   f"half_width,{_fmt(result.half_width)}"] +
                  [f"plan_{n},{_fmt(v)}" for n, v in result.per_plan_estimates.items()] +
                  ([f"analytic,{_fmt(analytic)}"] if analytic is not None else []))
    _emit(args, text)
    return EXIT_OK


def _cmd_ingest(args) -> int:
    series = load_trace(args.trace)
    policy = DiscretizationPolicy(levels=args.levels, machine_capacity=args.capacity)
    if args.machine is not None:
        fragment = ingest_trace(series, args.machine, policy).to_dict()
    else:
        fragment = {m: ingest_trace(series, m, policy).to_dict()
                    for m in machines_in(series)}
    _emit(args, json.dumps(fragment, indent=2))
    return EXIT_OK


def _cmd_check(args) -> int:
    scenario = load_scenario(args.scenario)
    nodes = [n for n in scenario.nodes if n.kind != "sink"]
    sinks = len(scenario.nodes) - len(nodes)
    lines = [f"{len(scenario.plans)} plans, {len(scenario.branches)} branches, "
             f"{len(nodes)} nodes ({sinks} sink{'s' if sinks != 1 else ''})"]
    c = args.input_size if args.input_size is not None else scenario.default_input_size
    t = args.deadline if args.deadline is not None else scenario.default_deadline
    if c is not None:
        for plan in scenario.plans:
            best = min_total_time(plan, c).total
            line = f"plan {plan.name}: {len(plan.branches)} branches, " \
                   f"{len(plan.compute_nodes)} compute nodes, min time {best:.5f}s"
            lines.append(line)
            if t is not None and best > t + 1e-9:
                lines.append(f"warning: plan {plan.name} cannot meet deadline "
                             f"{t:g}s (minimum {best:.5f}s)")
    _emit(args, "\n".join(lines))
    return EXIT_OK


_HANDLERS = {
    "evaluate": _cmd_evaluate,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "ingest": _cmd_ingest,
    "check": _cmd_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except SearchSpaceExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ScenarioError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO


if __name__ == "__main__":
    sys.exit(main())
