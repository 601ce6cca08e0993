"""Resilience analysis for finite discrete-time control systems under uncertainty."""

from .errors import (
    CrossReferenceError,
    EnumerationTooLarge,
    InputError,
    LabelError,
    MissingScenarioError,
    ModelError,
    NoResilientStrategyError,
    RangeError,
    ReskitError,
    SchemaError,
    StrategyDomainError,
    UnsupportedModelError,
)
from .model import CEMETERY, SystemModel, TimeGrid, ValidationReport, step, validate
from .probability import TOL, AmbiguitySet, WeightedScenarios, WhiteNoise
from .regimes import (
    Bounded,
    ConstraintMap,
    ControlPredicate,
    DeterministicViability,
    ExitCountLimit,
    ExitProbability,
    RiskBound,
    RobustRecovery,
    StochasticViability,
    counter_extension,
    exit_count,
    path_satisfies,
    recovery_time,
    regime_membership,
    success_probability,
)
from .risk import (
    CVaR,
    AmbiguitySup,
    DiscreteRandomVariable,
    ExitCountCost,
    Expectation,
    ExtendedRiskSpec,
    FunctionCost,
    IndicatorExit,
    RecoveryTimeCost,
    TableCost,
    WorstCase,
    cost,
    extended_risk,
    risk,
)
from .solvers import (
    brute_force_resilient,
    resilience_indicator,
    resilient_states,
    robust_recovery_sets,
    robust_viability_kernel,
    stochastic_viability_values,
)
from .strategies import (
    AdaptedPolicy,
    MarkovPolicy,
    check_admissible,
    count_adapted,
    count_markov,
    enumerate_adapted,
    enumerate_markov,
)
from .trajectory import PathBundle, bundle, closed_loop, flow

__version__ = "0.1.0"
