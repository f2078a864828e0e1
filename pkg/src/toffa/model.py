"""Core domain model: feature tree, context variability, goal model, context
transition graph, and structural validation."""

from __future__ import annotations

from dataclasses import dataclass, field


class ModelError(Exception):
    """Raised when a model file cannot be parsed or violates a structural
    invariant. Carries the source position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.format())

    def format(self) -> str:
        if self.line is not None:
            col = self.column if self.column is not None else 1
            return f"line {self.line}, column {col}: {self.message}"
        return self.message


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str  # "error" | "warning"
    subjects: tuple[str, ...]
    message: str

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "severity": self.severity,
            "subjects": list(self.subjects),
            "message": self.message,
        }


# relation-to-parent values
ROOT = "root"
MANDATORY = "mandatory"
OPTIONAL = "optional"
OR_MEMBER = "or"
XOR_MEMBER = "xor"


@dataclass(frozen=True)
class Feature:
    id: str
    name: str
    parent: str | None
    relation: str  # root | mandatory | optional | or | xor
    group: str | None = None  # group id for or/xor members


@dataclass(frozen=True)
class ContextGroup:
    id: str
    name: str
    relation: str  # xor | or | optional


@dataclass(frozen=True)
class ContextFeature:
    id: str
    name: str
    group: str


@dataclass(frozen=True)
class AdaptationRule:
    source: str  # context feature id
    target: str  # feature id
    kind: str  # require | exclude


@dataclass(frozen=True)
class FeatureConstraint:
    a: str
    b: str
    kind: str  # require | exclude


@dataclass(frozen=True)
class Goal:
    id: str
    name: str


@dataclass(frozen=True)
class HardGoal:
    id: str
    goal: str
    decomposition: str  # and | or
    feature: str


@dataclass(frozen=True)
class SoftGoal:
    id: str
    name: str


# satisfaction levels for hard-goal -> soft-goal links
LINK_LEVELS = ("++", "+", "?", "-", "--")


@dataclass(frozen=True)
class Link:
    hardgoal: str
    softgoal: str
    level: str


@dataclass(frozen=True)
class GoalModel:
    goals: tuple[Goal, ...] = ()
    hardgoals: tuple[HardGoal, ...] = ()
    softgoals: tuple[SoftGoal, ...] = ()
    links: tuple[Link, ...] = ()


@dataclass(frozen=True)
class DeclaredCCF:
    id: str
    members: tuple[str, ...]  # context feature ids, declaration order


@dataclass(frozen=True)
class CKS:
    states: tuple[DeclaredCCF, ...] = ()
    initial: str | None = None
    transitions: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Model:
    name: str
    features: tuple[Feature, ...] = ()
    context_groups: tuple[ContextGroup, ...] = ()
    context_features: tuple[ContextFeature, ...] = ()
    rules: tuple[AdaptationRule, ...] = ()
    constraints: tuple[FeatureConstraint, ...] = ()
    goal_model: GoalModel = field(default_factory=GoalModel)
    cks: CKS | None = None

    # -- lookup helpers (computed, not part of equality) --

    def feature_index(self, fid: str) -> int:
        for i, f in enumerate(self.features):
            if f.id == fid:
                return i
        raise KeyError(fid)

    def feature(self, fid: str) -> Feature:
        for f in self.features:
            if f.id == fid:
                return f
        raise KeyError(fid)

    def context_group(self, gid: str) -> ContextGroup:
        for g in self.context_groups:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def context_feature(self, cid: str) -> ContextFeature:
        for c in self.context_features:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def group_members(self, gid: str) -> list[ContextFeature]:
        return [c for c in self.context_features if c.group == gid]

    def children(self, fid: str) -> list[Feature]:
        return [f for f in self.features if f.parent == fid]

    def root(self) -> Feature:
        for f in self.features:
            if f.relation == ROOT:
                return f
        raise ModelError("model has no root feature")

    def is_variable(self, fid: str) -> bool:
        """Optional features and or/xor group members are variable; the root
        and mandatory features are not."""
        return self.feature(fid).relation in (OPTIONAL, OR_MEMBER, XOR_MEMBER)

    def variable_features(self) -> list[Feature]:
        return [f for f in self.features if f.relation in (OPTIONAL, OR_MEMBER, XOR_MEMBER)]

    def hardgoal_for_feature(self, fid: str) -> HardGoal | None:
        for hg in self.goal_model.hardgoals:
            if hg.feature == fid:
                return hg
        return None

    def goal(self, gid: str) -> Goal:
        for g in self.goal_model.goals:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def hardgoals_of_goal(self, gid: str) -> list[HardGoal]:
        return [hg for hg in self.goal_model.hardgoals if hg.goal == gid]

    def links_of_hardgoal(self, hgid: str) -> list[Link]:
        return [ln for ln in self.goal_model.links if ln.hardgoal == hgid]

    def rules_for_feature(self, fid: str) -> list[AdaptationRule]:
        return [r for r in self.rules if r.target == fid]

    def declared_ccf(self, ccf_id: str) -> DeclaredCCF:
        if self.cks is not None:
            for s in self.cks.states:
                if s.id == ccf_id:
                    return s
        raise KeyError(ccf_id)

    def ancestors(self, fid: str) -> list[str]:
        out = []
        cur = self.feature(fid).parent
        while cur is not None:
            out.append(cur)
            cur = self.feature(cur).parent
        return out


def check_structure(m: Model) -> None:
    """Enforce the type invariants a parsed model must satisfy.

    Raises ModelError on the first violation. Referential integrity
    (duplicates, dangling ids) is assumed to have been checked already by
    the parser; this covers shape constraints such as the tree property and
    group cardinalities.
    """
    roots = [f for f in m.features if f.relation == ROOT]
    if len(roots) != 1:
        raise ModelError(f"model must declare exactly one root feature, found {len(roots)}")
    if roots[0].parent is not None:
        raise ModelError(f"root feature {roots[0].id} must not have a parent")
    for f in m.features:
        if f.relation != ROOT and f.parent is None:
            raise ModelError(f"feature {f.id} has no parent")
    # acyclicity: walk each feature to the root, bounded by feature count
    limit = len(m.features)
    for f in m.features:
        seen = 0
        cur = f.parent
        while cur is not None:
            seen += 1
            if seen > limit:
                raise ModelError(f"feature parent graph has a cycle through {f.id}")
            cur = m.feature(cur).parent
    # feature groups: >= 2 members sharing one parent
    groups: dict[str, list[Feature]] = {}
    for f in m.features:
        if f.group is not None:
            groups.setdefault(f.group, []).append(f)
    for gid, members in groups.items():
        if len(members) < 2:
            raise ModelError(f"feature group {gid} must have at least 2 members")
        parents = {f.parent for f in members}
        if len(parents) != 1:
            raise ModelError(f"feature group {gid} members must share one parent")
        kinds = {f.relation for f in members}
        if len(kinds) != 1:
            raise ModelError(f"feature group {gid} mixes or/xor members")
    # context groups
    for g in m.context_groups:
        members = m.group_members(g.id)
        if not members:
            raise ModelError(f"context group {g.id} has no context features")
        if g.relation == "xor" and len(members) < 2:
            raise ModelError(f"xor context group {g.id} needs at least 2 context features")
    # rules: no duplicate (source, target), single kind per pair
    pairs: dict[tuple[str, str], str] = {}
    for r in m.rules:
        key = (r.source, r.target)
        if key in pairs:
            raise ModelError(f"duplicate adaptation rule for ({r.source}, {r.target})")
        pairs[key] = r.kind
    for c in m.constraints:
        if c.a == c.b:
            raise ModelError(f"feature constraint relates {c.a} to itself")
    # goal model shape
    for g in m.goal_model.goals:
        decos = {hg.decomposition for hg in m.hardgoals_of_goal(g.id)}
        if len(decos) > 1:
            raise ModelError(f"hard goals of {g.id} mix and/or decomposition")
    link_pairs = set()
    for ln in m.goal_model.links:
        key = (ln.hardgoal, ln.softgoal)
        if key in link_pairs:
            raise ModelError(f"duplicate link ({ln.hardgoal}, {ln.softgoal})")
        link_pairs.add(key)
    bound: dict[str, str] = {}
    for hg in m.goal_model.hardgoals:
        if hg.feature in bound:
            raise ModelError(f"feature {hg.feature} bound by both {bound[hg.feature]} and {hg.id}")
        bound[hg.feature] = hg.id
    # C-KS endpoints
    if m.cks is not None:
        state_ids = {s.id for s in m.cks.states}
        for a, b in m.cks.transitions:
            if a not in state_ids or b not in state_ids:
                raise ModelError(f"transition {a} -> {b} references an undeclared CCF state")
        if m.cks.initial is not None and m.cks.initial not in state_ids:
            raise ModelError(f"initial state {m.cks.initial} is not declared")


def validate_model(m: Model) -> list[Diagnostic]:
    """Full semantic validation of a parsed model.

    Returns an empty list when the model is clean. Hard goals must bind
    variable features (error). A context rule set that targets both a
    feature and one of its descendants is fault-prone and reported as a
    warning.
    """
    out: list[Diagnostic] = []
    try:
        check_structure(m)
    except ModelError as e:
        out.append(Diagnostic("structure", "error", (), e.message))
        return out

    for hg in m.goal_model.hardgoals:
        if not m.is_variable(hg.feature):
            out.append(
                Diagnostic(
                    "hardgoal-binding",
                    "error",
                    (hg.id, hg.feature),
                    f"hard goal {hg.id} must bind a variable feature, {hg.feature} is not variable",
                )
            )

    # rules targeting both a parent and one of its children from one context
    by_source: dict[str, list[AdaptationRule]] = {}
    for r in m.rules:
        by_source.setdefault(r.source, []).append(r)
    for source, rules in sorted(by_source.items()):
        targets = {r.target for r in rules}
        for r in rules:
            overlap = targets.intersection(m.ancestors(r.target))
            for parent in sorted(overlap):
                out.append(
                    Diagnostic(
                        "parent-child-rule",
                        "warning",
                        (source, parent, r.target),
                        f"rules of context {source} target both {parent} and its descendant "
                        f"{r.target}; avoid adaptation rules over a feature and its children",
                    )
                )
    return out
