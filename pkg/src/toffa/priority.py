"""Stakeholder prioritization: rank weights from total orders and
importance values from pairwise comparison matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

_RECIPROCITY_TOL = 1e-9
# Saaty scale plus reciprocals; entries off this grid are tolerated with a warning
_SCALE = [float(k) for k in range(1, 10)] + [1.0 / k for k in range(2, 10)]
# random consistency index, indexed by matrix size
RANDOM_INDEX = {2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45}

CR_THRESHOLD = 0.1


class PriorityError(ValueError):
    pass


@dataclass(frozen=True)
class PriorityRanking:
    kind: str  # "goals" | "contexts"
    order: tuple[str, ...]
    equal: bool = False


@dataclass(frozen=True)
class WeightAssignment:
    weights: dict[str, float]
    provenance: str  # "bst" | "ahp" | "equal"

    def __getitem__(self, key: str) -> float:
        return self.weights[key]

    def scaled(self, k: float) -> "WeightAssignment":
        return WeightAssignment({i: w * k for i, w in self.weights.items()}, self.provenance)


@dataclass(frozen=True)
class AhpMatrix:
    subjects: tuple[str, ...]
    entries: tuple[tuple[float, ...], ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.subjects)


def make_ahp_matrix(subjects: list[str], entries: list[list[float]]) -> AhpMatrix:
    """Validate and freeze a pairwise comparison matrix.

    Raises PriorityError on shape, positivity, diagonal, or reciprocity
    violations; off-Saaty-scale entries only produce warnings.
    """
    n = len(subjects)
    if len(entries) != n or any(len(row) != n for row in entries):
        raise PriorityError(f"comparison matrix must be {n}x{n}")
    warnings: list[str] = []
    for i in range(n):
        if entries[i][i] != 1:
            raise PriorityError(f"diagonal entry [{i}][{i}] must be 1")
        for j in range(n):
            v = entries[i][j]
            if v <= 0:
                raise PriorityError(f"non-positive entry at [{i}][{j}]")
            if i < j:
                if abs(entries[j][i] - 1.0 / v) > _RECIPROCITY_TOL:
                    raise PriorityError(
                        f"reciprocity violated at [{i}][{j}]: {v} vs {entries[j][i]}"
                    )
                if min(abs(v - s) for s in _SCALE) > 1e-6:
                    warnings.append(f"entry [{i}][{j}] = {v} is off the 1..9 comparison scale")
    return AhpMatrix(tuple(subjects), tuple(tuple(row) for row in entries), tuple(warnings))


def synthetic_ahp_matrix(order: list[str]) -> AhpMatrix:
    """Consistent comparison matrix for a plain preference order: each step
    down the order is a 'moderate' (3x) preference, so subject i over
    subject j rates 3^(j-i). Consistent by construction (CR = 0)."""
    n = len(order)
    entries = [[3.0 ** (j - i) for j in range(n)] for i in range(n)]
    return AhpMatrix(tuple(order), tuple(tuple(row) for row in entries))


def bst_rank_values(r: PriorityRanking, subjects: list[str]) -> WeightAssignment:
    """Rank weights from a total order: the item at rank k (1-based) gets
    1/(1+k); under equal priority every weight is 1."""
    if r.equal:
        return WeightAssignment({s: 1.0 for s in subjects}, "equal")
    if sorted(r.order) != sorted(subjects):
        raise PriorityError(
            f"order {list(r.order)} is not a permutation of {sorted(subjects)}"
        )
    return WeightAssignment(
        {ident: 1.0 / (1 + rank) for rank, ident in enumerate(r.order, start=1)}, "bst"
    )


def ahp_ivalues(a: AhpMatrix) -> WeightAssignment:
    """Importance values: normalize each column by its sum, then take row
    means. Weights sum to 1."""
    n = a.n
    col_sums = [sum(a.entries[i][j] for i in range(n)) for j in range(n)]
    weights = {
        a.subjects[i]: sum(a.entries[i][j] / col_sums[j] for j in range(n)) / n for i in range(n)
    }
    return WeightAssignment(weights, "ahp")


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    cr: float
    acceptable: bool

    def to_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "ci": self.ci,
            "cr": self.cr,
            "acceptable": self.acceptable,
        }


def ahp_consistency(a: AhpMatrix) -> ConsistencyReport:
    """Consistency ratio against the random-index table, using the same
    column-normalization weight estimate as ahp_ivalues."""
    n = a.n
    if n < 2:
        raise PriorityError("consistency needs at least 2 subjects")
    if n > 9:
        raise PriorityError(f"no random index for n = {n}; matrices above 9x9 are unsupported")
    w = ahp_ivalues(a)
    wv = [w[s] for s in a.subjects]
    products = [sum(a.entries[i][j] * wv[j] for j in range(n)) for i in range(n)]
    lambda_max = sum(products[i] / wv[i] for i in range(n)) / n
    if n == 2:
        # a 2x2 reciprocal matrix is always consistent
        return ConsistencyReport(lambda_max, 0.0, 0.0, True)
    ci = (lambda_max - n) / (n - 1)
    cr = ci / RANDOM_INDEX[n]
    return ConsistencyReport(lambda_max, ci, cr, cr <= CR_THRESHOLD)
