import pytest

from toffa import (
    MissingWeightError,
    ScenarioWeights,
    WeightAssignment,
    cont_context,
    cont_goal,
    cont_softgoal,
    parse_model,
    resolve_ccf,
    resolve_weights,
    utility_table,
)

# frozen oracle: rank weights g2>g1>g3 / c2>c6, pairwise soft-goal weights
# (0.6, 0.2, 0.2), contributions worked out by hand from the fixture rules
EXPECTED = {
    "f2": (5 / 6, 1 / 3, 0.5),
    "f3": (-1 / 3, 1 / 3, -0.1),
    "f5": (0.0, 0.5, 0.1),
    "f6": (0.0, 0.5, -0.1),
    "f8": (5 / 6, 1 / 4, 0.5),
    "f9": (-5 / 6, 1 / 4, -0.1),
}


@pytest.fixture(scope="module")
def weights(gridstix, base_scenario):
    w, _ = resolve_weights(gridstix, base_scenario)
    return w


def test_component_contributions(gridstix, weights):
    for fid, (cc, cg, csg) in EXPECTED.items():
        assert cont_context(gridstix, fid, weights.contexts) == pytest.approx(cc, abs=1e-12)
        assert cont_goal(gridstix, fid, weights.goals) == pytest.approx(cg, abs=1e-12)
        assert cont_softgoal(gridstix, fid, weights.softgoals) == pytest.approx(csg, abs=1e-9)


def test_utility_is_row_sum(gridstix, weights):
    table = utility_table(gridstix, weights)
    for r in table.rows:
        assert r.utility == r.cont_c + r.cont_g + r.cont_sg


def test_non_variable_rows_pinned_to_zero(gridstix, weights):
    table = utility_table(gridstix, weights)
    for fid in ("f0", "f1", "f4", "f7", "f10"):
        r = table.row(fid)
        assert not r.variable
        assert (r.cont_c, r.cont_g, r.cont_sg, r.utility) == (0.0, 0.0, 0.0, 0.0)


def test_context_restriction(gridstix, weights):
    # under {c3, c7} only the Emergency and High rules act on f3
    ccf1 = resolve_ccf(gridstix, "ccf1")
    assert cont_context(gridstix, "f3", weights.contexts, ccf1) == pytest.approx(
        -0.5 + 1 / 3, abs=1e-12
    )
    # under {c4, c7} Normal excludes f3 while High requires it
    ccf2 = resolve_ccf(gridstix, "ccf2")
    assert cont_context(gridstix, "f3", weights.contexts, ccf2) == pytest.approx(
        -0.5 + 1 / 3, abs=1e-12
    )
    # under {c5, c7} only High acts on f3
    ccf3 = resolve_ccf(gridstix, "ccf3")
    assert cont_context(gridstix, "f3", weights.contexts, ccf3) == pytest.approx(1 / 3, abs=1e-12)


def test_and_decomposition_splits_satisfaction():
    m = parse_model(
        'model "X"\nfeature r "Root" root\n'
        'group g1 or of r { a "A", b "B" }\n'
        'goal g "G"\n'
        "hardgoal h1 of g and binds a\nhardgoal h2 of g and binds b\n"
    )
    goals = WeightAssignment({"g": 0.5}, "bst")
    assert cont_goal(m, "a", goals) == 0.25
    assert cont_goal(m, "b", goals) == 0.25


def test_unbound_feature_contributes_nothing(gridstix, weights):
    # f10 has no hard goal and no rules
    assert cont_goal(gridstix, "f10", weights.goals) == 0.0
    assert cont_softgoal(gridstix, "f10", weights.softgoals) == 0.0
    assert cont_context(gridstix, "f10", weights.contexts) == 0.0


def test_missing_weight_raises(gridstix, weights):
    empty = ScenarioWeights(
        WeightAssignment({}, "bst"), weights.contexts, weights.softgoals
    )
    with pytest.raises(MissingWeightError):
        utility_table(gridstix, empty)
