"""Context-combination enumeration, transition-graph checks, and
adaptation-rule interleaving fault detection."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .model import Diagnostic, Model

DEFAULT_CCF_CAP = 100_000


class CombinatorialLimitError(Exception):
    """The model would produce more context combinations than the cap."""


@dataclass(frozen=True)
class CCF:
    id: str
    members: tuple[str, ...]  # context feature ids, declaration order

    @property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.members)


@dataclass(frozen=True)
class InterleavingConflict:
    ccf: str
    feature: str
    requiring: tuple[str, ...]
    excluding: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "ccf": self.ccf,
            "feature": self.feature,
            "requiring": list(self.requiring),
            "excluding": list(self.excluding),
        }


def _group_choices(m: Model, gid: str, relation: str) -> list[tuple[str, ...]]:
    """Member combinations one group contributes: xor picks exactly one,
    or picks any non-empty subset, optional any subset (empty included).
    Subsets are ordered by the members' declaration order read as binary
    counting with the first member as the low bit."""
    members = [c.id for c in m.group_members(gid)]
    if relation == "xor":
        return [(mid,) for mid in members]
    n = len(members)
    start = 0 if relation == "optional" else 1
    out = []
    for bits in range(start, 1 << n):
        out.append(tuple(members[j] for j in range(n) if bits >> j & 1))
    return out


def enumerate_ccfs(m: Model, cap: int = DEFAULT_CCF_CAP) -> list[CCF]:
    """All valid context combinations in deterministic order.

    Groups combine conjunctively; the combination order varies the first
    declared group fastest, so two xor groups of sizes 3 and 2 come out as
    (a1,b1), (a2,b1), (a3,b1), (a1,b2), ... Ids are assigned positionally
    as ccf1, ccf2, ...
    """
    per_group = [_group_choices(m, g.id, g.relation) for g in m.context_groups]
    total = 1
    for choices in per_group:
        total *= len(choices)
        if total > cap:
            raise CombinatorialLimitError(
                f"model yields more than {cap} context combinations; "
                "raise the cap only if exhaustive analysis is really wanted"
            )
    out: list[CCF] = []
    for i in range(total):
        members: list[str] = []
        k = i
        for choices in per_group:
            members.extend(choices[k % len(choices)])
            k //= len(choices)
        out.append(CCF(f"ccf{i + 1}", tuple(members)))
    return out


def ccf_for_members(m: Model, members: frozenset[str]) -> CCF | None:
    """Find the enumerated CCF with the given member set, if valid."""
    for ccf in enumerate_ccfs(m):
        if ccf.member_set == members:
            return ccf
    return None


def resolve_ccf(m: Model, ccf_id: str) -> CCF:
    """Look up a CCF by declared C-KS state id, falling back to the
    enumerated positional ids."""
    if m.cks is not None:
        for s in m.cks.states:
            if s.id == ccf_id:
                return CCF(s.id, s.members)
    for ccf in enumerate_ccfs(m):
        if ccf.id == ccf_id:
            return ccf
    raise KeyError(f"unknown CCF {ccf_id}")


def model_ccfs(m: Model) -> list[CCF]:
    """The CCFs trade-off analysis iterates over: the declared C-KS states
    when present, else the full enumeration."""
    if m.cks is not None and m.cks.states:
        return [CCF(s.id, s.members) for s in m.cks.states]
    return enumerate_ccfs(m)


def detect_interleaving_faults(m: Model, ccf: CCF) -> list[InterleavingConflict]:
    """Features that one active context requires while another active
    context of the same CCF excludes, in feature-index order."""
    active = set(ccf.members)
    out: list[InterleavingConflict] = []
    for f in m.features:
        requiring = tuple(
            r.source for r in m.rules if r.target == f.id and r.kind == "require" and r.source in active
        )
        excluding = tuple(
            r.source for r in m.rules if r.target == f.id and r.kind == "exclude" and r.source in active
        )
        if requiring and excluding:
            out.append(InterleavingConflict(ccf.id, f.id, requiring, excluding))
    return out


def check_cks(m: Model) -> list[Diagnostic]:
    """Diagnose the declared C-KS against the enumeration: invalid states
    (error), states unreachable from the declared initial (warning), and
    enumerated CCFs missing from the C-KS (warning)."""
    if m.cks is None:
        return [Diagnostic("cks-missing", "error", (), "model declares no C-KS section")]
    out: list[Diagnostic] = []
    valid_sets = {ccf.member_set for ccf in enumerate_ccfs(m)}
    for s in m.cks.states:
        if frozenset(s.members) not in valid_sets:
            out.append(
                Diagnostic(
                    "invalid-ccf",
                    "error",
                    (s.id,),
                    f"invalid CCF {s.id}: {{{', '.join(s.members)}}} violates the context group relations",
                )
            )
    if m.cks.initial is not None:
        reachable = reachable_ccfs(m, m.cks.initial)
        for s in m.cks.states:
            if s.id not in reachable:
                out.append(
                    Diagnostic(
                        "unreachable-state",
                        "warning",
                        (s.id,),
                        f"state {s.id} is unreachable from {m.cks.initial}",
                    )
                )
    declared_sets = {frozenset(s.members) for s in m.cks.states}
    for ccf in enumerate_ccfs(m):
        if ccf.member_set not in declared_sets:
            out.append(
                Diagnostic(
                    "ccf-not-in-cks",
                    "warning",
                    (ccf.id,),
                    f"enumerated CCF {{{', '.join(ccf.members)}}} has no C-KS state",
                )
            )
    return out


def reachable_ccfs(m: Model, start: str) -> set[str]:
    """Transitive closure over C-KS transitions, including the start state."""
    if m.cks is None:
        raise KeyError("model declares no C-KS section")
    state_ids = {s.id for s in m.cks.states}
    if start not in state_ids:
        raise KeyError(f"unknown CCF state {start}")
    succ: dict[str, list[str]] = {}
    for a, b in m.cks.transitions:
        succ.setdefault(a, []).append(b)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in succ.get(cur, []):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen
