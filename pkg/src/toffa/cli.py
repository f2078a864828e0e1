"""Command line front end: validate, enumerate, prioritize, score,
optimize, and compare from model and scenario files."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .ccf import check_cks, detect_interleaving_faults, model_ccfs, resolve_ccf
from .dsl import parse_model
from .ilp import DEFAULT_NODE_LIMIT, Infeasible, NodeLimitExceeded, build_ilp, solve_topk
from .ilp import optimal_configuration
from .model import Model, ModelError, validate_model
from .scenario import Scenario, ScenarioError, parse_scenarios, resolve_weights
from .tradeoff import build_adaptation_model, compare_scenarios, run_scenario

USAGE_ERROR = 2


class _CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _node_limit() -> int:
    raw = os.environ.get("TOFFA_NODE_LIMIT")
    if raw is None:
        return DEFAULT_NODE_LIMIT
    try:
        value = int(raw)
        if value <= 0:
            raise ValueError
        return value
    except ValueError:
        raise _CliError(f"TOFFA_NODE_LIMIT must be a positive integer, got '{raw}'", USAGE_ERROR)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _CliError(f"cannot read {path}: {e.strerror}", USAGE_ERROR)


def _load_model(path: str) -> Model:
    try:
        return parse_model(_read(path))
    except ModelError as e:
        raise _CliError(f"{path}: {e.format()}")


def _load_scenarios(path: str) -> list[Scenario]:
    try:
        return parse_scenarios(_read(path))
    except ScenarioError as e:
        raise _CliError(f"{path}: {e}")


def _one_scenario(path: str) -> Scenario:
    scenarios = _load_scenarios(path)
    if len(scenarios) != 1:
        raise _CliError(f"{path}: expected exactly one scenario, found {len(scenarios)}", USAGE_ERROR)
    return scenarios[0]


def _emit(out, data: dict) -> None:
    json.dump(data, out, indent=2, sort_keys=False)
    out.write("\n")


def _cmd_validate(args, out) -> int:
    m = _load_model(args.model)
    diagnostics = validate_model(m)
    if args.format == "structured":
        _emit(out, {"model": m.name, "diagnostics": [d.to_dict() for d in diagnostics]})
    else:
        if not diagnostics:
            out.write(f"{m.name}: ok\n")
        for d in diagnostics:
            out.write(f"{d.severity}: {d.message}\n")
    return 1 if any(d.severity == "error" for d in diagnostics) else 0


def _cmd_ccfs(args, out) -> int:
    m = _load_model(args.model)
    ccfs = model_ccfs(m)
    if args.format == "structured":
        _emit(out, {"model": m.name, "ccfs": [{"id": c.id, "members": list(c.members)} for c in ccfs]})
    else:
        for c in ccfs:
            out.write(f"{c.id} = {{{', '.join(c.members)}}}\n")
    return 0


def _cmd_check(args, out) -> int:
    m = _load_model(args.model)
    diagnostics = validate_model(m)
    if m.cks is not None:
        diagnostics.extend(check_cks(m))
    conflicts = []
    for ccf in model_ccfs(m):
        conflicts.extend(detect_interleaving_faults(m, ccf))
    if args.format == "structured":
        _emit(
            out,
            {
                "model": m.name,
                "diagnostics": [d.to_dict() for d in diagnostics],
                "interleaving": [c.to_dict() for c in conflicts],
            },
        )
    else:
        for d in diagnostics:
            out.write(f"{d.severity}: {d.message}\n")
        for c in conflicts:
            out.write(
                f"warning: {c.ccf}: feature {c.feature} required by "
                f"{{{', '.join(c.requiring)}}} but excluded by {{{', '.join(c.excluding)}}}\n"
            )
        if not diagnostics and not conflicts:
            out.write(f"{m.name}: ok\n")
    return 1 if any(d.severity == "error" for d in diagnostics) else 0


def _resolve(m: Model, s: Scenario):
    try:
        return resolve_weights(m, s)
    except ScenarioError as e:
        raise _CliError(str(e))


def _cmd_prioritize(args, out) -> int:
    m = _load_model(args.model)
    s = _one_scenario(args.scenario)
    weights, consistency = _resolve(m, s)
    if args.format == "structured":
        _emit(
            out,
            {
                "scenario": s.id,
                "goals": dict(weights.goals.weights),
                "contexts": dict(weights.contexts.weights),
                "softgoals": dict(weights.softgoals.weights),
                "consistency": consistency.to_dict() if consistency else None,
            },
        )
        return 0
    for title, wa in (("goal", weights.goals), ("context", weights.contexts), ("softgoal", weights.softgoals)):
        for ident, w in wa.weights.items():
            out.write(f"{title} {ident} = {w:.2f}\n")
    if consistency is not None:
        out.write(
            f"consistency: lambda_max = {consistency.lambda_max:.2f}, "
            f"CI = {consistency.ci:.2f}, CR = {consistency.cr:.2f} "
            f"({'acceptable' if consistency.acceptable else 'NOT acceptable'})\n"
        )
    return 0


def _cmd_utility(args, out) -> int:
    from .contribution import utility_table

    m = _load_model(args.model)
    s = _one_scenario(args.scenario)
    weights, _ = _resolve(m, s)
    restrict = None
    if args.ccf is not None:
        try:
            restrict = resolve_ccf(m, args.ccf)
        except KeyError as e:
            raise _CliError(str(e.args[0]), USAGE_ERROR)
    table = utility_table(m, weights, restrict)
    if args.format == "structured":
        data = table.to_dict()
        data["model"] = m.name
        data["ccf"] = args.ccf
        _emit(out, data)
        return 0
    out.write(f"{'feature':<10}{'contC':>8}{'contG':>8}{'contSG':>8}{'utility':>9}\n")
    for r in table.variable_rows():
        out.write(f"{r.feature:<10}{r.cont_c:>8.2f}{r.cont_g:>8.2f}{r.cont_sg:>8.2f}{r.utility:>9.2f}\n")
    return 0


def _cmd_optimize(args, out) -> int:
    from .contribution import utility_table

    m = _load_model(args.model)
    s = _one_scenario(args.scenario)
    weights, _ = _resolve(m, s)
    restrict = None
    if args.ccf is not None:
        try:
            restrict = resolve_ccf(m, args.ccf)
        except KeyError as e:
            raise _CliError(str(e.args[0]), USAGE_ERROR)
    try:
        if args.top_k > 1:
            table = utility_table(m, weights, restrict)
            problem = build_ilp(m, table, strict_context=restrict if args.strict_context_constraints else None)
            configs = solve_topk(problem, args.top_k)
        else:
            cfg, _ = optimal_configuration(
                m,
                weights,
                restrict,
                strict_context=args.strict_context_constraints,
                node_limit=_node_limit(),
            )
            configs = [cfg]
    except Infeasible as e:
        raise _CliError(str(e))
    except NodeLimitExceeded as e:
        raise _CliError(str(e))
    if args.format == "structured":
        _emit(
            out,
            {
                "model": m.name,
                "scenario": s.id,
                "ccf": args.ccf,
                "configurations": [c.to_dict() for c in configs],
            },
        )
        return 0
    for i, cfg in enumerate(configs, start=1):
        out.write(f"F{i} = {cfg.notation()}\n")
        out.write(f"objective = {cfg.objective:.2f}\n")
    return 0


def _cmd_tradeoff(args, out) -> int:
    m = _load_model(args.model)
    scenarios = _load_scenarios(args.scenario)
    limit = _node_limit()
    try:
        if len(scenarios) == 1:
            results = [run_scenario(m, scenarios[0], args.strict_context_constraints, limit)]
            disagreements = ()
        else:
            report = compare_scenarios(m, scenarios, args.strict_context_constraints, limit)
            results, disagreements = report.results, report.disagreements
    except NodeLimitExceeded as e:
        raise _CliError(str(e))
    if args.format == "structured":
        _emit(
            out,
            {
                "model": m.name,
                "results": [r.to_dict() for r in results],
                "disagreements": [
                    {"ccf": ccf, "winners": dict(winners)} for ccf, winners in disagreements
                ],
            },
        )
        return 0
    for r in results:
        out.write(f"scenario {r.scenario_id}\n")
        for ccf_id in r.ccf_order:
            label = r.ccf_map[ccf_id]
            out.write(f"  {ccf_id} -> {label if label is not None else 'infeasible'}\n")
        for label, cfg in r.configurations.items():
            out.write(f"  {label} = {cfg.notation()}  objective = {cfg.objective:.2f}\n")
        for ccf_id, message in r.infeasible.items():
            out.write(f"  {ccf_id}: {message}\n")
    for ccf_id, winners in disagreements:
        parts = ", ".join(f"{sid}: {w if w else 'infeasible'}" for sid, w in winners.items())
        out.write(f"disagreement {ccf_id}: {parts}\n")
    return 0


def _cmd_adapt_model(args, out) -> int:
    m = _load_model(args.model)
    s = _one_scenario(args.scenario)
    try:
        result = run_scenario(m, s, args.strict_context_constraints, _node_limit())
        am = build_adaptation_model(
            m,
            result,
            initial_policy="explicit" if args.initial else "most-frequent",
            explicit_initial=args.initial,
        )
    except (ValueError, NodeLimitExceeded) as e:
        raise _CliError(str(e))
    if args.format == "structured":
        _emit(out, {"model": m.name, "scenario": s.id, "adaptation": am.to_dict()})
    elif args.format == "dot":
        out.write(am.to_dot())
    else:
        out.write(f"initial {am.initial}\n")
        for ccf_id, label in am.ccf_map.items():
            out.write(f"{ccf_id} -> {label}\n")
        for a, b, t in am.edges:
            out.write(f"{a} => {b} on {t}\n")
    return 0


def _cmd_serve(args, out) -> int:
    import uvicorn

    from .service import create_app

    static = args.static if args.static and os.path.isdir(args.static) else None
    app = create_app(static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toffa",
        description="Design-time trade-off analysis over context-aware feature models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=False, solver=False):
        p.add_argument("model", help="model file")
        if scenario:
            p.add_argument("--scenario", required=True, help="scenario file")
        p.add_argument("--format", choices=["table", "structured"], default="table")
        if solver:
            p.add_argument("--strict-context-constraints", action="store_true",
                           help="harden active-context rules into solver constraints")

    p = sub.add_parser("validate", help="parse a model and report diagnostics")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("ccfs", help="list the model's context combinations")
    common(p)
    p.set_defaults(func=_cmd_ccfs)

    p = sub.add_parser("check", help="validate plus C-KS and rule-interleaving checks")
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("prioritize", help="resolve scenario priorities into weights")
    common(p, scenario=True)
    p.set_defaults(func=_cmd_prioritize)

    p = sub.add_parser("utility", help="per-feature contribution and utility table")
    common(p, scenario=True)
    p.add_argument("--ccf", help="restrict context contributions to one CCF")
    p.set_defaults(func=_cmd_utility)

    p = sub.add_parser("optimize", help="solve for the optimal configuration")
    common(p, scenario=True, solver=True)
    p.add_argument("--ccf", help="restrict context contributions to one CCF")
    p.add_argument("--top-k", type=int, default=1, help="emit the best k configurations")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("tradeoff", help="optimal configuration per CCF; compares multi-scenario files")
    common(p, scenario=True, solver=True)
    p.set_defaults(func=_cmd_tradeoff)

    p = sub.add_parser("adapt-model", help="derive the adaptation state machine")
    p.add_argument("model", help="model file")
    p.add_argument("--scenario", required=True, help="scenario file")
    p.add_argument("--format", choices=["table", "structured", "dot"], default="table")
    p.add_argument("--strict-context-constraints", action="store_true")
    p.add_argument("--initial", help="explicit initial configuration label")
    p.set_defaults(func=_cmd_adapt_model)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", help="directory of UI assets to host at /")
    p.set_defaults(func=_cmd_serve)

    return parser


def run_cli(argv: list[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_ERROR if e.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except _CliError as e:
        err.write(f"error: {e}\n")
        return e.code


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
