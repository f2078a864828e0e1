"""Scenario runs across context combinations, scenario comparison, and
adaptation-model synthesis from the per-CCF optima."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ccf import model_ccfs
from .contribution import ScenarioWeights
from .ilp import DEFAULT_NODE_LIMIT, Configuration, Infeasible, optimal_configuration
from .model import Model
from .priority import ConsistencyReport
from .scenario import Scenario, resolve_weights


@dataclass(frozen=True)
class TradeoffResult:
    scenario_id: str
    ccf_order: tuple[str, ...]
    ccf_map: dict[str, str | None]  # ccf id -> configuration label, None if infeasible
    configurations: dict[str, Configuration]  # label -> configuration
    infeasible: dict[str, str]  # ccf id -> message
    weights: ScenarioWeights
    consistency: ConsistencyReport | None = field(compare=False, default=None)

    def configuration_for(self, ccf_id: str) -> Configuration | None:
        label = self.ccf_map.get(ccf_id)
        return self.configurations[label] if label is not None else None

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario_id,
            "ccf_order": list(self.ccf_order),
            "ccf_map": dict(self.ccf_map),
            "configurations": {
                label: cfg.to_dict() for label, cfg in self.configurations.items()
            },
            "infeasible": dict(self.infeasible),
            "weights": {
                "goals": dict(self.weights.goals.weights),
                "contexts": dict(self.weights.contexts.weights),
                "softgoals": dict(self.weights.softgoals.weights),
            },
            "consistency": self.consistency.to_dict() if self.consistency else None,
        }


def run_scenario(
    m: Model,
    s: Scenario,
    strict_context: bool = False,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> TradeoffResult:
    """Solve the configuration problem once per CCF (declared C-KS states
    when present, else the enumeration) and label distinct optima F1, F2,
    ... in order of first appearance."""
    weights, consistency = resolve_weights(m, s)
    ccfs = model_ccfs(m)
    ccf_map: dict[str, str | None] = {}
    configurations: dict[str, Configuration] = {}
    infeasible: dict[str, str] = {}
    by_key: dict[tuple[int, ...], str] = {}
    for ccf in ccfs:
        try:
            cfg, _ = optimal_configuration(
                m, weights, ccf, strict_context=strict_context, node_limit=node_limit
            )
        except Infeasible as e:
            ccf_map[ccf.id] = None
            infeasible[ccf.id] = str(e)
            continue
        key = cfg.key()
        label = by_key.get(key)
        if label is None:
            label = f"F{len(by_key) + 1}"
            by_key[key] = label
            configurations[label] = cfg
        ccf_map[ccf.id] = label
    return TradeoffResult(
        s.id, tuple(c.id for c in ccfs), ccf_map, configurations, infeasible, weights, consistency
    )


@dataclass(frozen=True)
class ComparisonReport:
    results: tuple[TradeoffResult, ...]
    # one entry per CCF where at least two scenarios disagree on the winner
    disagreements: tuple[tuple[str, dict[str, str | None]], ...]

    def to_dict(self) -> dict:
        return {
            "results": [r.to_dict() for r in self.results],
            "disagreements": [
                {"ccf": ccf, "winners": dict(winners)} for ccf, winners in self.disagreements
            ],
        }


def compare_scenarios(
    m: Model,
    scenarios: list[Scenario],
    strict_context: bool = False,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> ComparisonReport:
    """Run each scenario and diff the per-CCF winners by content (labels
    are per-result, so assignments decide equality)."""
    if len(scenarios) < 2:
        raise ValueError("comparison needs at least 2 scenarios")
    results = [run_scenario(m, s, strict_context, node_limit) for s in scenarios]
    disagreements = []
    for ccf_id in results[0].ccf_order:
        keys = set()
        winners: dict[str, str | None] = {}
        for r in results:
            cfg = r.configuration_for(ccf_id)
            keys.add(cfg.key() if cfg else None)
            winners[r.scenario_id] = cfg.notation() if cfg else None
        if len(keys) > 1:
            disagreements.append((ccf_id, winners))
    return ComparisonReport(tuple(results), tuple(disagreements))


@dataclass(frozen=True)
class AdaptationModel:
    initial: str
    states: tuple[str, ...]  # configuration labels
    ccf_map: dict[str, str]
    edges: tuple[tuple[str, str, str], ...]  # (from label, to label, trigger ccf)
    configurations: dict[str, Configuration]

    def to_dict(self) -> dict:
        return {
            "initial": self.initial,
            "states": list(self.states),
            "ccf_map": dict(self.ccf_map),
            "edges": [
                {"from": a, "to": b, "trigger": t, "noop": a == b} for a, b, t in self.edges
            ],
            "configurations": {
                label: cfg.to_dict() for label, cfg in self.configurations.items()
            },
        }

    def to_dot(self) -> str:
        lines = ["digraph adaptation {"]
        for label in self.states:
            shape = ' peripheries=2' if label == self.initial else ""
            lines.append(f'  {label} [label="{label}"{shape}];')
        for a, b, t in self.edges:
            lines.append(f'  {a} -> {b} [label="{t}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_adaptation_model(
    m: Model,
    r: TradeoffResult,
    initial_policy: str = "most-frequent",
    explicit_initial: str | None = None,
) -> AdaptationModel:
    """Project the C-KS onto configuration labels: one node per distinct
    optimum, one edge per C-KS transition triggered by the target CCF.
    Initial state is the most frequent label (ties to the earliest label)
    unless an explicit label is given."""
    if m.cks is None:
        raise ValueError("model declares no C-KS; an adaptation model needs one")
    state_ids = [s.id for s in m.cks.states]
    missing = [sid for sid in state_ids if r.ccf_map.get(sid) is None]
    if missing:
        raise ValueError(f"trade-off result does not cover C-KS states: {', '.join(missing)}")
    ccf_map = {sid: r.ccf_map[sid] for sid in state_ids}
    labels = sorted(set(ccf_map.values()), key=lambda lb: int(lb[1:]))
    if initial_policy == "explicit":
        if explicit_initial not in labels:
            raise ValueError(f"explicit initial {explicit_initial} is not a result configuration")
        initial = explicit_initial
    elif initial_policy == "most-frequent":
        counts = {lb: sum(1 for v in ccf_map.values() if v == lb) for lb in labels}
        initial = max(labels, key=lambda lb: (counts[lb], -int(lb[1:])))
    else:
        raise ValueError(f"unknown initial policy '{initial_policy}'")
    edges = tuple((ccf_map[a], ccf_map[b], b) for a, b in m.cks.transitions)
    configurations = {lb: r.configurations[lb] for lb in labels}
    return AdaptationModel(initial, tuple(labels), ccf_map, edges, configurations)
