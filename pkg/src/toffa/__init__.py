"""Design-time trade-off analysis for context-aware, reconfigurable
feature models: prioritization, utility derivation, exact 0-1 optimization
per context combination, and adaptation-model synthesis."""

from .ccf import (
    CCF,
    CombinatorialLimitError,
    InterleavingConflict,
    check_cks,
    detect_interleaving_faults,
    enumerate_ccfs,
    model_ccfs,
    reachable_ccfs,
    resolve_ccf,
)
from .contribution import (
    MissingWeightError,
    ScenarioWeights,
    UtilityRow,
    UtilityTable,
    cont_context,
    cont_goal,
    cont_softgoal,
    utility_table,
)
from .dsl import model_to_dict, parse_model, serialize_model
from .ilp import (
    Configuration,
    Constraint,
    IlpProblem,
    Infeasible,
    NodeLimitExceeded,
    build_ilp,
    optimal_configuration,
    solve_bb,
    solve_exhaustive,
    solve_topk,
)
from .model import Diagnostic, Model, ModelError, check_structure, validate_model
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
from .scenario import (
    Scenario,
    ScenarioError,
    parse_scenario,
    parse_scenarios,
    resolve_weights,
    scenario_from_dict,
)
from .tradeoff import (
    AdaptationModel,
    ComparisonReport,
    TradeoffResult,
    build_adaptation_model,
    compare_scenarios,
    run_scenario,
)

__version__ = "1.0.0"

__all__ = [
    "CCF",
    "AdaptationModel",
    "AhpMatrix",
    "CombinatorialLimitError",
    "ComparisonReport",
    "Configuration",
    "ConsistencyReport",
    "Constraint",
    "Diagnostic",
    "IlpProblem",
    "Infeasible",
    "InterleavingConflict",
    "MissingWeightError",
    "Model",
    "ModelError",
    "NodeLimitExceeded",
    "PriorityError",
    "PriorityRanking",
    "Scenario",
    "ScenarioError",
    "ScenarioWeights",
    "TradeoffResult",
    "UtilityRow",
    "UtilityTable",
    "WeightAssignment",
    "ahp_consistency",
    "ahp_ivalues",
    "bst_rank_values",
    "build_adaptation_model",
    "build_ilp",
    "check_cks",
    "check_structure",
    "compare_scenarios",
    "cont_context",
    "cont_goal",
    "cont_softgoal",
    "detect_interleaving_faults",
    "enumerate_ccfs",
    "make_ahp_matrix",
    "model_ccfs",
    "model_to_dict",
    "optimal_configuration",
    "parse_model",
    "parse_scenario",
    "parse_scenarios",
    "reachable_ccfs",
    "resolve_ccf",
    "resolve_weights",
    "run_scenario",
    "scenario_from_dict",
    "serialize_model",
    "solve_bb",
    "solve_exhaustive",
    "solve_topk",
    "synthetic_ahp_matrix",
    "utility_table",
    "validate_model",
]
