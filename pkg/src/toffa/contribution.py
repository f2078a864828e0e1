"""Feature contribution degrees over contexts, goals, and soft goals, and
the per-feature utility table feeding the optimizer."""

from __future__ import annotations

from dataclasses import dataclass

from .ccf import CCF
from .model import Model
from .priority import WeightAssignment

# satisfaction level conversion for hard-goal -> soft-goal links
LEVEL_SCALE = {"++": 1.0, "+": 0.5, "?": 0.0, "-": -0.5, "--": -1.0}
# impact degree of adaptation rules
IMPACT = {"require": 1.0, "exclude": -1.0}


class MissingWeightError(KeyError):
    pass


@dataclass(frozen=True)
class ScenarioWeights:
    goals: WeightAssignment
    contexts: WeightAssignment  # keyed by context group id
    softgoals: WeightAssignment

    def scaled(self, k: float) -> "ScenarioWeights":
        return ScenarioWeights(self.goals.scaled(k), self.contexts.scaled(k), self.softgoals.scaled(k))


@dataclass(frozen=True)
class UtilityRow:
    feature: str
    cont_c: float
    cont_g: float
    cont_sg: float
    utility: float
    variable: bool


@dataclass(frozen=True)
class UtilityTable:
    rows: tuple[UtilityRow, ...]  # feature index order, all features

    def row(self, fid: str) -> UtilityRow:
        for r in self.rows:
            if r.feature == fid:
                return r
        raise KeyError(fid)

    def utility(self, fid: str) -> float:
        return self.row(fid).utility

    def variable_rows(self) -> list[UtilityRow]:
        return [r for r in self.rows if r.variable]

    def to_dict(self) -> dict:
        return {
            "columns": ["feature", "contC", "contG", "contSG", "utility"],
            "rows": [
                {
                    "feature": r.feature,
                    "contC": r.cont_c,
                    "contG": r.cont_g,
                    "contSG": r.cont_sg,
                    "utility": r.utility,
                    "variable": r.variable,
                }
                for r in self.rows
            ],
        }


def sat_value_hardgoal(m: Model, hgid: str) -> float:
    """1 under OR decomposition, 1/m under AND with m sibling hard goals."""
    hg = next(h for h in m.goal_model.hardgoals if h.id == hgid)
    if hg.decomposition == "or":
        return 1.0
    return 1.0 / len(m.hardgoals_of_goal(hg.goal))

def sat_value_context(m: Model, cid: str) -> float:
    """Context groups compose members disjunctively (xor/or/optional), so
    every member satisfies its group fully."""
    m.context_feature(cid)
    return 1.0


def cont_goal(m: Model, fid: str, goal_weights: WeightAssignment) -> float:
    hg = m.hardgoal_for_feature(fid)
    if hg is None:
        return 0.0
    if hg.goal not in goal_weights.weights:
        raise MissingWeightError(f"no weight for goal {hg.goal}")
    return goal_weights[hg.goal] * sat_value_hardgoal(m, hg.id)


def cont_context(
    m: Model,
    fid: str,
    context_weights: WeightAssignment,
    restrict: CCF | None = None,
) -> float:
    """Sum of rankValue(group) * satValue(context) * impactDegree over the
    adaptation rules targeting the feature; with a CCF given, only rules
    whose source context is active in it count."""
    active = set(restrict.members) if restrict is not None else None
    total = 0.0
    for r in m.rules:
        if r.target != fid:
            continue
        if active is not None and r.source not in active:
            continue
        group = m.context_feature(r.source).group
        if group not in context_weights.weights:
            raise MissingWeightError(f"no weight for context group {group}")
        total += context_weights[group] * sat_value_context(m, r.source) * IMPACT[r.kind]
    return total


def cont_softgoal(m: Model, fid: str, ivalues: WeightAssignment) -> float:
    hg = m.hardgoal_for_feature(fid)
    if hg is None:
        return 0.0
    total = 0.0
    for ln in m.links_of_hardgoal(hg.id):
        if ln.softgoal not in ivalues.weights:
            raise MissingWeightError(f"no weight for soft goal {ln.softgoal}")
        total += ivalues[ln.softgoal] * LEVEL_SCALE[ln.level]
    return total


def utility_table(m: Model, weights: ScenarioWeights, restrict: CCF | None = None) -> UtilityTable:
    """Per-feature contribution breakdown in feature index order. Variable
    features sum their three contributions; everything else is pinned to 0
    so it cannot influence the optimization."""
    rows = []
    for f in m.features:
        if m.is_variable(f.id):
            cc = cont_context(m, f.id, weights.contexts, restrict)
            cg = cont_goal(m, f.id, weights.goals)
            csg = cont_softgoal(m, f.id, weights.softgoals)
            rows.append(UtilityRow(f.id, cc, cg, csg, cc + cg + csg, True))
        else:
            rows.append(UtilityRow(f.id, 0.0, 0.0, 0.0, 0.0, False))
    return UtilityTable(tuple(rows))
