import random

import pytest

from toffa import (
    scenario_from_dict,
    Infeasible,
    NodeLimitExceeded,
    build_ilp,
    optimal_configuration,
    parse_model,
    resolve_ccf,
    resolve_weights,
    solve_bb,
    solve_exhaustive,
    solve_topk,
    utility_table,
)
from toffa.ilp import count_feasible

from randmodels import random_problem


@pytest.fixture(scope="module")
def gridstix_problem(gridstix, base_scenario):
    w, _ = resolve_weights(gridstix, base_scenario)
    return build_ilp(gridstix, utility_table(gridstix, w))


def test_encoding_shape(gridstix_problem):
    p = gridstix_problem
    assert p.variables == tuple(f"f{i}" for i in range(11))
    origins = [c.origin for c in p.constraints]
    assert origins.count("root") == 1
    assert origins.count("mandatory") == 4
    assert origins.count("xor-group") == 3
    assert origins.count("exclude") == 1
    assert len(p.constraints) == 9


def test_gridstix_optimum(gridstix_problem):
    cfg = solve_bb(gridstix_problem)
    assert cfg.active() == ["f0", "f1", "f2", "f4", "f5", "f7", "f8", "f10"]
    assert cfg.objective == pytest.approx(3.85, abs=1e-9)
    assert solve_exhaustive(gridstix_problem) == cfg


def test_feasible_count_gridstix(gridstix_problem):
    # 2*2*2 xor products minus the single excluded pair (f2, f9)
    assert count_feasible(gridstix_problem) == 6


def test_tie_break_prefers_lower_index():
    m = parse_model(
        'model "X"\nfeature r "Root" root\ngroup g xor of r { a "A", b "B" }\n'
    )
    w, _ = resolve_weights(m, scenario_from_dict({}))
    table = utility_table(m, w)
    p = build_ilp(m, table)
    # both members score 0; the lower-index member wins
    assert solve_bb(p).active() == ["r", "a"]
    assert solve_exhaustive(p).active() == ["r", "a"]


def test_topk_ordering(gridstix_problem):
    top = solve_topk(gridstix_problem, 3)
    assert len(top) == 3
    assert top[0] == solve_bb(gridstix_problem)
    assert top[0].objective >= top[1].objective >= top[2].objective


def test_infeasible_reports_minimal_conflict():
    m = parse_model(
        'model "X"\nfeature r "Root" root\n'
        'feature a "A" mandatory of r\nfeature b "B" mandatory of r\n'
        "constraint a excludes b\n"
    )
    w, _ = resolve_weights(m, scenario_from_dict({}))
    p = build_ilp(m, utility_table(m, w))
    with pytest.raises(Infeasible) as e:
        solve_bb(p)
    origins = sorted(c.origin for c in e.value.conflict)
    assert origins == ["exclude", "mandatory", "mandatory", "root"]
    # every retained constraint is necessary
    for c in e.value.conflict:
        sub = [x for x in e.value.conflict if x is not c]
        probe = type(p)(p.variables, p.objective, tuple(sub))
        solve_bb(probe)  # must not raise


def test_node_limit(gridstix_problem):
    with pytest.raises(NodeLimitExceeded):
        solve_bb(gridstix_problem, node_limit=3)


def test_strict_context_constraints():
    m = parse_model(
        'model "X"\nfeature r "Root" root\n'
        'group g1 xor of r { a "A", b "B" }\n'
        'contextgroup cg "G" xor\ncontext c1 "C1" in cg\ncontext c2 "C2" in cg\n'
        "rule c1 requires b\n"
        'goal g "G"\nhardgoal h of g or binds a\n'
    )
    w, _ = resolve_weights(m, scenario_from_dict({"goals": ["g"], "contexts": ["cg"]}))
    ccf1 = resolve_ccf(m, "ccf1")  # {c1}
    soft, _ = optimal_configuration(m, w, ccf1, strict_context=False)
    assert soft.active() == ["r", "a"]  # rule only nudges, tie-break keeps a
    hard, _ = optimal_configuration(m, w, ccf1, strict_context=True)
    assert hard.active() == ["r", "b"]  # rule is now a constraint


def test_solver_equivalence_sample():
    rng = random.Random(7)
    for _ in range(40):
        p = random_problem(rng, max_vars=14)
        try:
            oracle = solve_exhaustive(p)
        except Infeasible:
            with pytest.raises(Infeasible):
                solve_bb(p)
            continue
        got = solve_bb(p)
        assert got.assignment == oracle.assignment
        assert got.objective == oracle.objective
