"""0-1 integer program encoding of configuration selection, an exhaustive
oracle, and an exact branch-and-bound solver with a shared tie-break."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ccf import CCF
from .contribution import ScenarioWeights, UtilityTable, utility_table
from .model import MANDATORY, OPTIONAL, OR_MEMBER, ROOT, XOR_MEMBER, Model

EXHAUSTIVE_VAR_CAP = 25
DEFAULT_NODE_LIMIT = 10_000_000


class VariableCapExceeded(Exception):
    pass


class NodeLimitExceeded(Exception):
    pass


class Infeasible(Exception):
    """No assignment satisfies the constraints. Carries a minimal
    conflicting constraint subset found by greedy deletion."""

    def __init__(self, conflict: list["Constraint"]):
        self.conflict = conflict
        names = "; ".join(c.dump() for c in conflict)
        super().__init__(f"infeasible problem; conflicting constraints: {names}")


@dataclass(frozen=True)
class Constraint:
    terms: tuple[tuple[int, str], ...]  # (coefficient, variable id)
    relation: str  # "=", "<=", ">="
    rhs: int
    origin: str

    def dump(self) -> str:
        lhs = " ".join(f"{c:+d}·X{v}" for c, v in self.terms)
        return f"{lhs} {self.relation} {self.rhs} # {self.origin}"


@dataclass(frozen=True)
class IlpProblem:
    variables: tuple[str, ...]  # feature ids, index order
    objective: tuple[float, ...]  # coefficient per variable
    constraints: tuple[Constraint, ...]

    def dump(self) -> str:
        obj = " ".join(
            f"{c:+g}·X{v}" for c, v in zip(self.objective, self.variables)
        )
        lines = [f"max {obj}"]
        lines.extend(c.dump() for c in self.constraints)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Configuration:
    assignment: dict[str, bool]
    objective: float

    def active(self) -> list[str]:
        return [v for v, on in self.assignment.items() if on]

    def key(self) -> tuple[int, ...]:
        return tuple(1 if on else 0 for on in self.assignment.values())

    def notation(self) -> str:
        parts = [(v if on else f"¬{v}") for v, on in self.assignment.items()]
        return "{" + ", ".join(parts) + "}"

    def to_dict(self) -> dict:
        return {
            "assignment": {v: bool(on) for v, on in self.assignment.items()},
            "active": self.active(),
            "objective": self.objective,
            "notation": self.notation(),
        }


def build_ilp(m: Model, u: UtilityTable, strict_context: CCF | None = None) -> IlpProblem:
    """Encode the feature model over binary feature variables.

    Root pinned to 1; mandatory children equal their parent; optional
    children bounded by it; or groups cover an active parent; xor groups
    pick exactly one child of an active parent; feature require/exclude
    constraints as usual. Context rules stay out of the constraint set and
    act through the utility coefficients, unless strict_context supplies a
    CCF whose active rules should be hardened.
    """
    variables = tuple(f.id for f in m.features)
    objective = tuple(u.utility(v) for v in variables)
    cons: list[Constraint] = []
    root = m.root()
    cons.append(Constraint(((1, root.id),), "=", 1, "root"))
    for f in m.features:
        if f.relation == MANDATORY:
            cons.append(Constraint(((1, f.id), (-1, f.parent)), "=", 0, "mandatory"))
        elif f.relation == OPTIONAL:
            cons.append(Constraint(((1, f.id), (-1, f.parent)), "<=", 0, "optional"))
    seen_groups: set[str] = set()
    for f in m.features:
        if f.relation in (OR_MEMBER, XOR_MEMBER) and f.group not in seen_groups:
            seen_groups.add(f.group)
            members = [g for g in m.features if g.group == f.group]
            terms = tuple((1, g.id) for g in members) + ((-1, f.parent),)
            if f.relation == OR_MEMBER:
                cons.append(Constraint(terms, ">=", 0, "or-group"))
            else:
                cons.append(Constraint(terms, "=", 0, "xor-group"))
    for c in m.constraints:
        if c.kind == "require":
            cons.append(Constraint(((1, c.a), (-1, c.b)), "<=", 0, "require"))
        else:
            cons.append(Constraint(((1, c.a), (1, c.b)), "<=", 1, "exclude"))
    if strict_context is not None:
        active = set(strict_context.members)
        for r in m.rules:
            if r.source not in active:
                continue
            if r.kind == "require":
                cons.append(Constraint(((1, r.target),), ">=", 1, "context-require"))
            else:
                cons.append(Constraint(((1, r.target),), "<=", 0, "context-exclude"))
    _ = ROOT  # relation constants imported for documentation of the mapping
    return IlpProblem(variables, objective, tuple(cons))


def _objective_value(p: IlpProblem, bits: tuple[int, ...]) -> float:
    """Exactly-rounded objective, identical for oracle and solver."""
    return math.fsum(c for c, b in zip(p.objective, bits) if b)


def _configuration(p: IlpProblem, bits) -> Configuration:
    assignment = {v: bool(b) for v, b in zip(p.variables, bits)}
    return Configuration(assignment, _objective_value(p, tuple(int(b) for b in bits)))


def solve_exhaustive(p: IlpProblem) -> Configuration:
    """Enumerate every assignment and return the feasible maximum; ties go
    to the lexicographically greatest assignment in variable index order
    (which activates the lowest-index undecided feature)."""
    n = len(p.variables)
    if n > EXHAUSTIVE_VAR_CAP:
        raise VariableCapExceeded(f"{n} variables exceed the exhaustive cap of {EXHAUSTIVE_VAR_CAP}")
    index = {v: i for i, v in enumerate(p.variables)}
    codes = np.arange(1 << n, dtype=np.int64)
    # bit for variable i sits at position n-1-i, so the code itself orders
    # assignments lexicographically
    shifts = np.array([n - 1 - i for i in range(n)], dtype=np.int64)
    x = (codes[:, None] >> shifts[None, :]) & 1
    feasible = np.ones(len(codes), dtype=bool)
    for c in p.constraints:
        vec = np.zeros(n, dtype=np.int64)
        for coef, var in c.terms:
            vec[index[var]] += coef
        lhs = x @ vec
        if c.relation == "<=":
            feasible &= lhs <= c.rhs
        elif c.relation == ">=":
            feasible &= lhs >= c.rhs
        else:
            feasible &= lhs == c.rhs
    if not feasible.any():
        raise Infeasible(minimal_conflict(p))
    obj = x @ np.array(p.objective, dtype=np.float64)
    obj[~feasible] = -np.inf
    best = obj.max()
    best_code = codes[obj == best].max()
    bits = tuple(int(best_code >> (n - 1 - i) & 1) for i in range(n))
    return _configuration(p, bits)


def count_feasible(p: IlpProblem) -> int:
    """Number of feasible assignments (oracle-side helper)."""
    n = len(p.variables)
    if n > EXHAUSTIVE_VAR_CAP:
        raise VariableCapExceeded(str(n))
    index = {v: i for i, v in enumerate(p.variables)}
    codes = np.arange(1 << n, dtype=np.int64)
    shifts = np.array([n - 1 - i for i in range(n)], dtype=np.int64)
    x = (codes[:, None] >> shifts[None, :]) & 1
    feasible = np.ones(len(codes), dtype=bool)
    for c in p.constraints:
        vec = np.zeros(n, dtype=np.int64)
        for coef, var in c.terms:
            vec[index[var]] += coef
        lhs = x @ vec
        feasible &= (
            lhs <= c.rhs if c.relation == "<=" else lhs >= c.rhs if c.relation == ">=" else lhs == c.rhs
        )
    return int(feasible.sum())


def solve_topk(p: IlpProblem, k: int) -> list[Configuration]:
    """Best k feasible assignments under the shared tie-break (exhaustive)."""
    n = len(p.variables)
    if n > EXHAUSTIVE_VAR_CAP:
        raise VariableCapExceeded(str(n))
    index = {v: i for i, v in enumerate(p.variables)}
    codes = np.arange(1 << n, dtype=np.int64)
    shifts = np.array([n - 1 - i for i in range(n)], dtype=np.int64)
    x = (codes[:, None] >> shifts[None, :]) & 1
    feasible = np.ones(len(codes), dtype=bool)
    for c in p.constraints:
        vec = np.zeros(n, dtype=np.int64)
        for coef, var in c.terms:
            vec[index[var]] += coef
        lhs = x @ vec
        feasible &= (
            lhs <= c.rhs if c.relation == "<=" else lhs >= c.rhs if c.relation == ">=" else lhs == c.rhs
        )
    if not feasible.any():
        raise Infeasible(minimal_conflict(p))
    obj = x @ np.array(p.objective, dtype=np.float64)
    order = sorted(
        (int(code) for code in codes[feasible]),
        key=lambda code: (obj[code], code),
        reverse=True,
    )
    out = []
    for code in order[:k]:
        bits = tuple(int(code >> (n - 1 - i) & 1) for i in range(n))
        out.append(_configuration(p, bits))
    return out


class _Search:
    """Depth-first 0-1 search in variable index order, value 1 before 0,
    with integer interval pruning on every constraint."""

    def __init__(self, p: IlpProblem, node_limit: int):
        self.p = p
        self.n = len(p.variables)
        self.node_limit = node_limit
        self.nodes = 0
        index = {v: i for i, v in enumerate(p.variables)}
        self.cons = []
        for c in p.constraints:
            vec = [0] * self.n
            for coef, var in c.terms:
                vec[index[var]] += coef
            sufmin = [0] * (self.n + 1)
            sufmax = [0] * (self.n + 1)
            for i in range(self.n - 1, -1, -1):
                sufmin[i] = sufmin[i + 1] + min(0, vec[i])
                sufmax[i] = sufmax[i + 1] + max(0, vec[i])
            self.cons.append((vec, sufmin, sufmax, c.relation, c.rhs))
        self.pos_suffix = [0.0] * (self.n + 1)
        for i in range(self.n - 1, -1, -1):
            self.pos_suffix[i] = self.pos_suffix[i + 1] + max(0.0, p.objective[i])
        self.best_bits: tuple[int, ...] | None = None
        self.best_obj = -math.inf
        self.bits = [0] * self.n

    def _consistent(self, depth: int, sums: list[int]) -> bool:
        for (vec, sufmin, sufmax, rel, rhs), s in zip(self.cons, sums):
            lo = s + sufmin[depth]
            hi = s + sufmax[depth]
            if rel == "<=" and lo > rhs:
                return False
            if rel == ">=" and hi < rhs:
                return False
            if rel == "=" and not (lo <= rhs <= hi):
                return False
        return True

    def run(self) -> tuple[int, ...] | None:
        self._dfs(0, [0] * len(self.cons), 0.0)
        return self.best_bits

    def _dfs(self, depth: int, sums: list[int], partial: float) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise NodeLimitExceeded(f"search exceeded {self.node_limit} nodes")
        if not self._consistent(depth, sums):
            return
        if self.best_bits is not None and partial + self.pos_suffix[depth] <= self.best_obj:
            # equal-valued assignments found later are lexicographically
            # smaller, so pruning at equality keeps the tie-break intact
            return
        if depth == self.n:
            obj = _objective_value(self.p, tuple(self.bits))
            if self.best_bits is None or obj > self.best_obj:
                self.best_bits = tuple(self.bits)
                self.best_obj = obj
            return
        for value in (1, 0):
            self.bits[depth] = value
            if value:
                nxt = [s + con[0][depth] for s, con in zip(sums, self.cons)]
                self._dfs(depth + 1, nxt, partial + self.p.objective[depth])
            else:
                self._dfs(depth + 1, sums, partial)
        self.bits[depth] = 0


def solve_bb(p: IlpProblem, node_limit: int = DEFAULT_NODE_LIMIT) -> Configuration:
    """Exact branch-and-bound; agrees with solve_exhaustive in assignment
    and objective on every instance, including the tie-break."""
    search = _Search(p, node_limit)
    bits = search.run()
    if bits is None:
        raise Infeasible(minimal_conflict(p))
    return _configuration(p, bits)


def _has_feasible(variables: tuple[str, ...], constraints: list[Constraint], node_limit: int) -> bool:
    probe = IlpProblem(variables, tuple(0.0 for _ in variables), tuple(constraints))
    return _Search(probe, node_limit).run() is not None


def minimal_conflict(p: IlpProblem, node_limit: int = DEFAULT_NODE_LIMIT) -> list[Constraint]:
    """Greedy-deletion minimal infeasible constraint subset: every retained
    constraint is necessary for the conflict."""
    subset = list(p.constraints)
    if _has_feasible(p.variables, subset, node_limit):
        return []
    for c in list(subset):
        trial = [x for x in subset if x is not c]
        if not _has_feasible(p.variables, trial, node_limit):
            subset = trial
    return subset


def optimal_configuration(
    m: Model,
    weights: ScenarioWeights,
    ccf: CCF | None = None,
    strict_context: bool = False,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> tuple[Configuration, UtilityTable]:
    """Utility table -> ILP -> branch and bound, returning the table used
    so callers can audit the coefficients."""
    table = utility_table(m, weights, ccf)
    problem = build_ilp(m, table, strict_context=ccf if strict_context else None)
    return solve_bb(problem, node_limit), table
