"""Line-oriented model DSL: parsing, canonical serialization, and the
structured export used by the CLI and the HTTP service."""

from __future__ import annotations

import re

from .model import (
    CKS,
    AdaptationRule,
    ContextFeature,
    ContextGroup,
    DeclaredCCF,
    Feature,
    FeatureConstraint,
    Goal,
    GoalModel,
    HardGoal,
    Link,
    Model,
    ModelError,
    SoftGoal,
    check_structure,
)

_ID = r"[A-Za-z_][A-Za-z0-9_]*"
_STR = r'"([^"]*)"'

_PATTERNS = {
    "model": re.compile(rf"^model\s+{_STR}$"),
    "feature_root": re.compile(rf"^feature\s+({_ID})\s+{_STR}\s+root$"),
    "feature": re.compile(rf"^feature\s+({_ID})\s+{_STR}\s+(mandatory|optional)\s+of\s+({_ID})$"),
    "group": re.compile(rf"^group\s+({_ID})\s+(xor|or)\s+of\s+({_ID})\s*\{{(.*)\}}$"),
    "group_member": re.compile(rf"^({_ID})\s+{_STR}$"),
    "contextgroup": re.compile(rf"^contextgroup\s+({_ID})\s+{_STR}\s+(xor|or|optional)$"),
    "context": re.compile(rf"^context\s+({_ID})\s+{_STR}\s+in\s+({_ID})$"),
    "rule": re.compile(rf"^rule\s+({_ID})\s+(requires|excludes)\s+({_ID})$"),
    "constraint": re.compile(rf"^constraint\s+({_ID})\s+(requires|excludes)\s+({_ID})$"),
    "goal": re.compile(rf"^goal\s+({_ID})\s+{_STR}$"),
    "hardgoal": re.compile(rf"^hardgoal\s+({_ID})\s+of\s+({_ID})\s+(and|or)\s+binds\s+({_ID})$"),
    "softgoal": re.compile(rf"^softgoal\s+({_ID})\s+{_STR}$"),
    "link": re.compile(rf"^link\s+({_ID})\s+({_ID})\s+(\+\+|\+|\?|\-\-|\-)$"),
    "ccf": re.compile(rf"^ccf\s+({_ID})\s*\{{(.*)\}}$"),
    "initial": re.compile(rf"^initial\s+({_ID})$"),
    "transition": re.compile(rf"^transition\s+({_ID})\s*->\s*({_ID})$"),
}

_KIND = {"requires": "require", "excludes": "exclude"}
_KIND_WORD = {"require": "requires", "exclude": "excludes"}


class _Builder:
    def __init__(self) -> None:
        self.name: str | None = None
        self.features: list[Feature] = []
        self.context_groups: list[ContextGroup] = []
        self.context_features: list[ContextFeature] = []
        self.rules: list[AdaptationRule] = []
        self.constraints: list[FeatureConstraint] = []
        self.goals: list[Goal] = []
        self.hardgoals: list[HardGoal] = []
        self.softgoals: list[SoftGoal] = []
        self.links: list[Link] = []
        self.ccfs: list[DeclaredCCF] = []
        self.initial: str | None = None
        self.transitions: list[tuple[str, str]] = []
        self.ids: dict[str, str] = {}  # id -> namespace

    def declare(self, ident: str, namespace: str, line: int) -> None:
        if ident in self.ids:
            raise ModelError(f"duplicate id {ident}", line)
        self.ids[ident] = namespace


def parse_model(text: str) -> Model:
    """Parse model DSL source into a validated Model.

    Raises ModelError with line/column information on syntax errors,
    duplicate ids, dangling references, or invariant violations.
    """
    b = _Builder()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        _parse_line(b, line, lineno)
    if b.name is None:
        raise ModelError("missing 'model' declaration", 1)
    _resolve(b)
    m = Model(
        name=b.name,
        features=tuple(b.features),
        context_groups=tuple(b.context_groups),
        context_features=tuple(b.context_features),
        rules=tuple(b.rules),
        constraints=tuple(b.constraints),
        goal_model=GoalModel(
            goals=tuple(b.goals),
            hardgoals=tuple(b.hardgoals),
            softgoals=tuple(b.softgoals),
            links=tuple(b.links),
        ),
        cks=(
            CKS(states=tuple(b.ccfs), initial=b.initial, transitions=tuple(b.transitions))
            if (b.ccfs or b.transitions)
            else None
        ),
    )
    try:
        check_structure(m)
    except ModelError as e:
        raise ModelError(e.message) from None
    return m


def _parse_line(b: _Builder, line: str, n: int) -> None:
    head = line.split(None, 1)[0]
    if head == "model":
        mm = _PATTERNS["model"].match(line)
        if not mm:
            raise ModelError("malformed model declaration", n)
        if b.name is not None:
            raise ModelError("duplicate model declaration", n)
        b.name = mm.group(1)
    elif head == "feature":
        mm = _PATTERNS["feature_root"].match(line)
        if mm:
            b.declare(mm.group(1), "feature", n)
            b.features.append(Feature(mm.group(1), mm.group(2), None, "root"))
            return
        mm = _PATTERNS["feature"].match(line)
        if not mm:
            raise ModelError("malformed feature declaration", n)
        b.declare(mm.group(1), "feature", n)
        b.features.append(Feature(mm.group(1), mm.group(2), mm.group(4), mm.group(3)))
    elif head == "group":
        mm = _PATTERNS["group"].match(line)
        if not mm:
            raise ModelError("malformed group declaration", n)
        gid, relation, parent, body = mm.groups()
        b.declare(gid, "feature-group", n)
        members = [p.strip() for p in body.split(",") if p.strip()]
        if len(members) < 2:
            raise ModelError(f"group {gid} must list at least 2 members", n)
        for part in members:
            pm = _PATTERNS["group_member"].match(part)
            if not pm:
                raise ModelError(f"malformed group member '{part}'", n)
            b.declare(pm.group(1), "feature", n)
            b.features.append(Feature(pm.group(1), pm.group(2), parent, relation, group=gid))
    elif head == "contextgroup":
        mm = _PATTERNS["contextgroup"].match(line)
        if not mm:
            raise ModelError("malformed contextgroup declaration", n)
        b.declare(mm.group(1), "context-group", n)
        b.context_groups.append(ContextGroup(mm.group(1), mm.group(2), mm.group(3)))
    elif head == "context":
        mm = _PATTERNS["context"].match(line)
        if not mm:
            raise ModelError("malformed context declaration", n)
        b.declare(mm.group(1), "context", n)
        b.context_features.append(ContextFeature(mm.group(1), mm.group(2), mm.group(3)))
    elif head == "rule":
        mm = _PATTERNS["rule"].match(line)
        if not mm:
            raise ModelError("malformed rule declaration", n)
        b.rules.append(AdaptationRule(mm.group(1), mm.group(3), _KIND[mm.group(2)]))
    elif head == "constraint":
        mm = _PATTERNS["constraint"].match(line)
        if not mm:
            raise ModelError("malformed constraint declaration", n)
        b.constraints.append(FeatureConstraint(mm.group(1), mm.group(3), _KIND[mm.group(2)]))
    elif head == "goal":
        mm = _PATTERNS["goal"].match(line)
        if not mm:
            raise ModelError("malformed goal declaration", n)
        b.declare(mm.group(1), "goal", n)
        b.goals.append(Goal(mm.group(1), mm.group(2)))
    elif head == "hardgoal":
        mm = _PATTERNS["hardgoal"].match(line)
        if not mm:
            raise ModelError("malformed hardgoal declaration", n)
        b.declare(mm.group(1), "hardgoal", n)
        b.hardgoals.append(HardGoal(mm.group(1), mm.group(2), mm.group(3), mm.group(4)))
    elif head == "softgoal":
        mm = _PATTERNS["softgoal"].match(line)
        if not mm:
            raise ModelError("malformed softgoal declaration", n)
        b.declare(mm.group(1), "softgoal", n)
        b.softgoals.append(SoftGoal(mm.group(1), mm.group(2)))
    elif head == "link":
        mm = _PATTERNS["link"].match(line)
        if not mm:
            raise ModelError("malformed link declaration", n)
        b.links.append(Link(mm.group(1), mm.group(2), mm.group(3)))
    elif head == "ccf":
        mm = _PATTERNS["ccf"].match(line)
        if not mm:
            raise ModelError("malformed ccf declaration", n)
        b.declare(mm.group(1), "ccf", n)
        members = tuple(p.strip() for p in mm.group(2).split(",") if p.strip())
        if not members:
            raise ModelError(f"ccf {mm.group(1)} lists no contexts", n)
        b.ccfs.append(DeclaredCCF(mm.group(1), members))
    elif head == "initial":
        mm = _PATTERNS["initial"].match(line)
        if not mm:
            raise ModelError("malformed initial declaration", n)
        if b.initial is not None:
            raise ModelError("duplicate initial declaration", n)
        b.initial = mm.group(1)
    elif head == "transition":
        mm = _PATTERNS["transition"].match(line)
        if not mm:
            raise ModelError("malformed transition declaration", n)
        b.transitions.append((mm.group(1), mm.group(2)))
    else:
        raise ModelError(f"unknown declaration '{head}'", n)


def _resolve(b: _Builder) -> None:
    def require(ident: str, namespace: str, what: str) -> None:
        if b.ids.get(ident) != namespace:
            raise ModelError(f"dangling reference {ident} ({what} expected)")

    for f in b.features:
        if f.parent is not None:
            require(f.parent, "feature", "parent feature")
    for c in b.context_features:
        require(c.group, "context-group", "context group")
    for r in b.rules:
        require(r.source, "context", "context feature")
        require(r.target, "feature", "feature")
    for c in b.constraints:
        require(c.a, "feature", "feature")
        require(c.b, "feature", "feature")
    for hg in b.hardgoals:
        require(hg.goal, "goal", "goal")
        require(hg.feature, "feature", "feature")
    for ln in b.links:
        require(ln.hardgoal, "hardgoal", "hard goal")
        require(ln.softgoal, "softgoal", "soft goal")
    for ccf in b.ccfs:
        for member in ccf.members:
            require(member, "context", "context feature")
    for a, z in b.transitions:
        require(a, "ccf", "ccf state")
        require(z, "ccf", "ccf state")
    if b.initial is not None:
        require(b.initial, "ccf", "ccf state")


def serialize_model(m: Model) -> str:
    """Emit canonical DSL text; parse_model(serialize_model(m)) == m."""
    lines = [f'model "{m.name}"']
    emitted_groups: set[str] = set()
    for f in m.features:
        if f.group is not None:
            if f.group in emitted_groups:
                continue
            members = [g for g in m.features if g.group == f.group]
            body = ", ".join(f'{g.id} "{g.name}"' for g in members)
            lines.append(f"group {f.group} {f.relation} of {f.parent} {{ {body} }}")
            emitted_groups.add(f.group)
        elif f.relation == "root":
            lines.append(f'feature {f.id} "{f.name}" root')
        else:
            lines.append(f'feature {f.id} "{f.name}" {f.relation} of {f.parent}')
    for g in m.context_groups:
        lines.append(f'contextgroup {g.id} "{g.name}" {g.relation}')
    for c in m.context_features:
        lines.append(f'context {c.id} "{c.name}" in {c.group}')
    for r in m.rules:
        lines.append(f"rule {r.source} {_KIND_WORD[r.kind]} {r.target}")
    for c in m.constraints:
        lines.append(f"constraint {c.a} {_KIND_WORD[c.kind]} {c.b}")
    for g in m.goal_model.goals:
        lines.append(f'goal {g.id} "{g.name}"')
    for hg in m.goal_model.hardgoals:
        lines.append(f"hardgoal {hg.id} of {hg.goal} {hg.decomposition} binds {hg.feature}")
    for sg in m.goal_model.softgoals:
        lines.append(f'softgoal {sg.id} "{sg.name}"')
    for ln in m.goal_model.links:
        lines.append(f"link {ln.hardgoal} {ln.softgoal} {ln.level}")
    if m.cks is not None:
        for s in m.cks.states:
            lines.append(f"ccf {s.id} {{ {', '.join(s.members)} }}")
        if m.cks.initial is not None:
            lines.append(f"initial {m.cks.initial}")
        for a, z in m.cks.transitions:
            lines.append(f"transition {a} -> {z}")
    return "\n".join(lines) + "\n"


def model_to_dict(m: Model) -> dict:
    """Structured export with stable key order, shared by CLI and service."""
    return {
        "name": m.name,
        "features": [
            {
                "id": f.id,
                "name": f.name,
                "parent": f.parent,
                "relation": f.relation,
                "group": f.group,
                "variable": f.relation in ("optional", "or", "xor"),
            }
            for f in m.features
        ],
        "context_groups": [
            {"id": g.id, "name": g.name, "relation": g.relation} for g in m.context_groups
        ],
        "context_features": [
            {"id": c.id, "name": c.name, "group": c.group} for c in m.context_features
        ],
        "rules": [{"source": r.source, "target": r.target, "kind": r.kind} for r in m.rules],
        "constraints": [{"a": c.a, "b": c.b, "kind": c.kind} for c in m.constraints],
        "goal_model": {
            "goals": [{"id": g.id, "name": g.name} for g in m.goal_model.goals],
            "hardgoals": [
                {
                    "id": hg.id,
                    "goal": hg.goal,
                    "decomposition": hg.decomposition,
                    "feature": hg.feature,
                }
                for hg in m.goal_model.hardgoals
            ],
            "softgoals": [{"id": sg.id, "name": sg.name} for sg in m.goal_model.softgoals],
            "links": [
                {"hardgoal": ln.hardgoal, "softgoal": ln.softgoal, "level": ln.level}
                for ln in m.goal_model.links
            ],
        },
        "cks": (
            {
                "states": [{"id": s.id, "members": list(s.members)} for s in m.cks.states],
                "initial": m.cks.initial,
                "transitions": [{"from": a, "to": z} for a, z in m.cks.transitions],
            }
            if m.cks is not None
            else None
        ),
    }
