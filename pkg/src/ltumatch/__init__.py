"""Exact stable matching with linearly transferable utility.

The package revolves around one reduction: a matching problem whose pairs
split output by fixed bargaining weights becomes a hide-and-seek game whose
Nash equilibria are, after an explicit rescaling, exactly the stable
outcomes. Everything is computed over rationals; nothing is approximate.
"""
from .errors import (
    BudgetExceeded,
    CapExceeded,
    DegenerateOutcome,
    DimensionMismatch,
    EmptyTypeSet,
    FormatError,
    InputNotStable,
    InternalError,
    IsTU,
    IterationLimit,
    LambdaOutOfRange,
    LTUError,
    NonpositiveCoefficient,
    NonpositiveMass,
    NonpositiveOutput,
    NotAnEquilibrium,
    NotTU,
    RayTermination,
    TaxOutOfRange,
    ZeroValue,
)
from .fuzz import (
    CampaignReport,
    FuzzConfig,
    random_non_tu_problem,
    random_problem,
    random_tu_problem,
    run_campaign,
    run_pipeline_checks,
)
from .games import BimatrixGame, MixedProfile
from .gamesolve import (
    Deviation,
    EquilibriumReport,
    enumerate_equilibria,
    expected_values,
    is_equilibrium,
    lemke_howson,
    require_equilibrium,
)
from .model import (
    Arrangement,
    ArrangementOutcome,
    LTUProblem,
    ManyToOneProblem,
    Outcome,
    SubproblemSpec,
    expand_linear_constraints,
    from_linear_constraints,
    from_tax_schedule,
    validate_m2o_problem,
    validate_problem,
)
from .oracle import (
    ComplementarityPattern,
    OracleCaps,
    PatternResult,
    enumerate_stable,
    induced_pattern,
    linear_feasibility,
)
from .reduction import (
    equilibrium_to_outcome,
    equilibrium_to_outcome_n,
    make_subproblem,
    normalize_outputs,
    outcome_to_equilibrium,
    outcome_to_equilibrium_n,
    solve_stable,
    solve_stable_m2o,
    to_game,
    to_game_n,
)
from .stability import (
    StabilityReport,
    Violation,
    blocking_pairs,
    verify_stable,
    verify_stable_m2o,
)
from .tu import (
    Counterexample,
    ExchangeReport,
    TuReport,
    TuRescaling,
    TuWitness,
    build_counterexample,
    check_tu,
    exchange_test,
    omega,
    rescale_to_tu,
)

__all__ = [
    "Arrangement",
    "ArrangementOutcome",
    "BimatrixGame",
    "BudgetExceeded",
    "CampaignReport",
    "CapExceeded",
    "ComplementarityPattern",
    "Counterexample",
    "DegenerateOutcome",
    "Deviation",
    "DimensionMismatch",
    "EmptyTypeSet",
    "EquilibriumReport",
    "ExchangeReport",
    "FormatError",
    "FuzzConfig",
    "InputNotStable",
    "InternalError",
    "IsTU",
    "IterationLimit",
    "LTUError",
    "LTUProblem",
    "LambdaOutOfRange",
    "ManyToOneProblem",
    "MixedProfile",
    "NonpositiveCoefficient",
    "NonpositiveMass",
    "NonpositiveOutput",
    "NotAnEquilibrium",
    "NotTU",
    "OracleCaps",
    "Outcome",
    "PatternResult",
    "RayTermination",
    "StabilityReport",
    "SubproblemSpec",
    "TaxOutOfRange",
    "TuReport",
    "TuRescaling",
    "TuWitness",
    "Violation",
    "ZeroValue",
    "blocking_pairs",
    "build_counterexample",
    "check_tu",
    "enumerate_equilibria",
    "enumerate_stable",
    "equilibrium_to_outcome",
    "equilibrium_to_outcome_n",
    "exchange_test",
    "expand_linear_constraints",
    "expected_values",
    "from_linear_constraints",
    "from_tax_schedule",
    "induced_pattern",
    "is_equilibrium",
    "lemke_howson",
    "linear_feasibility",
    "make_subproblem",
    "normalize_outputs",
    "omega",
    "outcome_to_equilibrium",
    "outcome_to_equilibrium_n",
    "random_non_tu_problem",
    "random_problem",
    "random_tu_problem",
    "require_equilibrium",
    "rescale_to_tu",
    "run_campaign",
    "run_pipeline_checks",
    "solve_stable",
    "solve_stable_m2o",
    "to_game",
    "to_game_n",
    "validate_m2o_problem",
    "validate_problem",
    "verify_stable",
    "verify_stable_m2o",
]
