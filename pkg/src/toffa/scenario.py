"""Scenario files: prioritization settings (orders, pairwise matrices) and
their resolution against a model into numeric weights."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .contribution import ScenarioWeights
from .model import Model
from .priority import (
    AhpMatrix,
    ConsistencyReport,
    PriorityError,
    PriorityRanking,
    WeightAssignment,
    ahp_consistency,
    ahp_ivalues,
    bst_rank_values,
    make_ahp_matrix,
    synthetic_ahp_matrix,
)


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class SoftGoalSpec:
    mode: str  # "order" | "equal" | "matrix"
    order: tuple[str, ...] = ()
    matrix: AhpMatrix | None = None


@dataclass(frozen=True)
class Scenario:
    id: str
    goals_equal: bool
    goal_order: tuple[str, ...]
    contexts_equal: bool
    context_order: tuple[str, ...]
    softgoals: SoftGoalSpec

    def to_dict(self) -> dict:
        sg: dict
        if self.softgoals.mode == "matrix":
            sg = {
                "mode": "matrix",
                "subjects": list(self.softgoals.matrix.subjects),
                "matrix": [list(row) for row in self.softgoals.matrix.entries],
            }
        elif self.softgoals.mode == "order":
            sg = {"mode": "order", "order": list(self.softgoals.order)}
        else:
            sg = {"mode": "equal"}
        return {
            "id": self.id,
            "goals": "equal" if self.goals_equal else list(self.goal_order),
            "contexts": "equal" if self.contexts_equal else list(self.context_order),
            "softgoals": sg,
        }


_BLOCK = re.compile(r"scenario\s+([A-Za-z_][A-Za-z0-9_]*)\s*\{([^}]*)\}", re.S)
_ORDER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\s*>\s*[A-Za-z_][A-Za-z0-9_]*)*$")
_MATRIX = re.compile(r"^matrix\s+((?:[A-Za-z_][A-Za-z0-9_]*\s+)*[A-Za-z_][A-Za-z0-9_]*)\s*\[(.*)\]$", re.S)


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def _parse_number(token: str) -> float:
    try:
        return float(Fraction(token))
    except (ValueError, ZeroDivisionError) as e:
        raise ScenarioError(f"bad matrix entry '{token}'") from e


def _split_sections(body: str) -> dict[str, str]:
    """Sections are `key: value` separated by newlines or ';'. Matrix rows
    reuse ';' inside [...] so bracket depth guards the split."""
    parts: list[str] = []
    cur: list[str] = []
    depth = 0
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in ";\n" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    out: dict[str, str] = {}
    for part in parts:
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ScenarioError(f"malformed scenario section '{part}'")
        key, value = part.split(":", 1)
        key = key.strip()
        if key not in ("goals", "contexts", "softgoals"):
            raise ScenarioError(f"unknown scenario section '{key}'")
        if key in out:
            raise ScenarioError(f"duplicate scenario section '{key}'")
        out[key] = value.strip()
    return out


def _parse_order(value: str, what: str) -> tuple[str, ...]:
    if not _ORDER.match(value):
        raise ScenarioError(f"malformed {what} order '{value}'")
    return tuple(tok.strip() for tok in value.split(">"))


def _parse_softgoals(value: str) -> SoftGoalSpec:
    if value == "equal":
        return SoftGoalSpec("equal")
    mm = _MATRIX.match(value)
    if mm:
        subjects = mm.group(1).split()
        rows = [r.strip() for r in mm.group(2).split(";") if r.strip()]
        entries = [[_parse_number(tok) for tok in row.split()] for row in rows]
        try:
            return SoftGoalSpec("matrix", matrix=make_ahp_matrix(subjects, entries))
        except PriorityError as e:
            raise ScenarioError(str(e)) from e
    return SoftGoalSpec("order", order=_parse_order(value, "softgoal"))


def parse_scenarios(text: str) -> list[Scenario]:
    """Parse every scenario block in a scenario file."""
    text = _strip_comments(text)
    out: list[Scenario] = []
    matched = 0
    for mm in _BLOCK.finditer(text):
        matched += mm.end() - mm.start()
        sid, body = mm.group(1), mm.group(2)
        sections = _split_sections(body)
        goals_equal = sections.get("goals", "equal") == "equal"
        goal_order = () if goals_equal else _parse_order(sections["goals"], "goal")
        ctx_equal = sections.get("contexts", "equal") == "equal"
        ctx_order = () if ctx_equal else _parse_order(sections["contexts"], "context")
        softgoals = _parse_softgoals(sections.get("softgoals", "equal"))
        out.append(Scenario(sid, goals_equal, goal_order, ctx_equal, ctx_order, softgoals))
    if not out:
        raise ScenarioError("no scenario blocks found")
    return out


def parse_scenario(text: str) -> Scenario:
    scenarios = parse_scenarios(text)
    if len(scenarios) != 1:
        raise ScenarioError(f"expected exactly one scenario, found {len(scenarios)}")
    return scenarios[0]


def scenario_from_dict(data: dict, sid: str = "request") -> Scenario:
    """Scenario from the structured (service API) form."""

    def order_part(value) -> tuple[bool, tuple[str, ...]]:
        if value in (None, "equal"):
            return True, ()
        if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
            raise ScenarioError("order must be a list of ids or 'equal'")
        return False, tuple(value)

    goals_equal, goal_order = order_part(data.get("goals"))
    ctx_equal, ctx_order = order_part(data.get("contexts"))
    sg = data.get("softgoals")
    if sg in (None, "equal"):
        spec = SoftGoalSpec("equal")
    elif isinstance(sg, list):
        spec = SoftGoalSpec("order", order=tuple(sg))
    elif isinstance(sg, dict):
        try:
            spec = SoftGoalSpec(
                "matrix", matrix=make_ahp_matrix(list(sg["subjects"]), [list(r) for r in sg["matrix"]])
            )
        except (KeyError, PriorityError) as e:
            raise ScenarioError(f"bad softgoal matrix: {e}") from e
    else:
        raise ScenarioError("softgoals must be 'equal', an order list, or a matrix object")
    return Scenario(data.get("id", sid), goals_equal, goal_order, ctx_equal, ctx_order, spec)


def resolve_weights(m: Model, s: Scenario) -> tuple[ScenarioWeights, ConsistencyReport | None]:
    """Turn a scenario into numeric weights for the model's goals, context
    groups, and soft goals. Soft-goal orders go through a synthetic
    consistent comparison matrix so results stay reproducible."""
    goal_ids = [g.id for g in m.goal_model.goals]
    group_ids = [g.id for g in m.context_groups]
    softgoal_ids = [sg.id for sg in m.goal_model.softgoals]
    try:
        goals = bst_rank_values(PriorityRanking("goals", s.goal_order, s.goals_equal), goal_ids)
        contexts = bst_rank_values(
            PriorityRanking("contexts", s.context_order, s.contexts_equal), group_ids
        )
    except PriorityError as e:
        raise ScenarioError(str(e)) from e
    consistency: ConsistencyReport | None = None
    if s.softgoals.mode == "equal":
        softgoals = WeightAssignment({sg: 1.0 for sg in softgoal_ids}, "equal")
    else:
        if s.softgoals.mode == "order":
            if sorted(s.softgoals.order) != sorted(softgoal_ids):
                raise ScenarioError(
                    f"softgoal order {list(s.softgoals.order)} is not a permutation of {sorted(softgoal_ids)}"
                )
            matrix = synthetic_ahp_matrix(list(s.softgoals.order))
        else:
            matrix = s.softgoals.matrix
            if sorted(matrix.subjects) != sorted(softgoal_ids):
                raise ScenarioError(
                    f"matrix subjects {list(matrix.subjects)} do not match soft goals {sorted(softgoal_ids)}"
                )
        softgoals = ahp_ivalues(matrix)
        if matrix.n >= 2:
            consistency = ahp_consistency(matrix)
    return ScenarioWeights(goals, contexts, softgoals), consistency
