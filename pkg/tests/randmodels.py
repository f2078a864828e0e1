"""Seeded random feature-model problems for solver cross-checks.

Utilities are dyadic (multiples of 1/16) so the exhaustive and the
branch-and-bound solver accumulate bit-identical objectives.
"""

import random

from toffa import IlpProblem, build_ilp
from toffa.contribution import UtilityRow, UtilityTable
from toffa.model import Feature, FeatureConstraint, Model, check_structure


def random_problem(rng: random.Random, max_vars: int = 20) -> IlpProblem:
    n = rng.randint(2, max_vars)
    features = [Feature("f0", "F0", None, "root")]
    group_no = 0
    i = 1
    while i < n:
        parent = features[rng.randrange(len(features))].id
        roll = rng.random()
        if roll < 0.5 or n - i < 2:
            relation = rng.choice(["mandatory", "optional"])
            features.append(Feature(f"f{i}", f"F{i}", parent, relation))
            i += 1
        else:
            relation = rng.choice(["or", "xor"])
            size = rng.randint(2, min(4, n - i))
            group_no += 1
            for _ in range(size):
                features.append(Feature(f"f{i}", f"F{i}", parent, relation, group=f"g{group_no}"))
                i += 1
    constraints = []
    for _ in range(rng.randint(0, 4)):
        a, b = rng.sample(range(1, n), 2) if n > 2 else (1, 1)
        if a == b:
            continue
        constraints.append(FeatureConstraint(f"f{a}", f"f{b}", rng.choice(["require", "exclude"])))
    m = Model("random", tuple(features), constraints=tuple(constraints))
    check_structure(m)
    rows = []
    for f in m.features:
        variable = m.is_variable(f.id)
        u = rng.randint(-48, 48) / 16 if variable else 0.0
        rows.append(UtilityRow(f.id, u, 0.0, 0.0, u, variable))
    return build_ilp(m, UtilityTable(tuple(rows)))
