"""Path costs, risk measures on finite distributions, and extended risk.

An extended risk is a risk measure applied to a per-scenario path cost:
``G(bundle) = F(scenario -> cost(path(scenario)))``. Time is folded into
the cost; the risk measure only aggregates across scenarios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .errors import MissingScenarioError
from .model import CEMETERY, SystemModel
from .probability import TOL, AmbiguitySet, WeightedScenarios, WhiteNoise
from .regimes import ConstraintMap, exit_count, recovery_time

# costs -----------------------------------------------------------------------


@dataclass(frozen=True)
class IndicatorExit:
    """1 if the path ever violates the constraints from its start, else 0."""

    constraints: ConstraintMap


@dataclass(frozen=True)
class ExitCountCost:
    """Number of constraint violations along the path."""

    constraints: ConstraintMap


@dataclass(frozen=True)
class RecoveryTimeCost:
    """Recovery delay ``tau - t``; an infinite delay costs ``sentinel``.

    The default sentinel is the path length ``T - t + 1``, one more than
    any finite delay.
    """

    constraints: ConstraintMap
    sentinel: float | None = None


@dataclass(frozen=True)
class TableCost:
    """Sum of ``stage[(t, x, u)]`` over the path plus ``final[x_T]``.

    Missing entries use ``default``; with ``default=None`` they raise
    ``KeyError``. Cemetery stages and a cemetery final state cost
    ``cemetery_cost``.
    """

    stage: Mapping
    final: Mapping
    default: float | None = None
    cemetery_cost: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "stage", MappingProxyType(dict(self.stage)))
        object.__setattr__(self, "final", MappingProxyType(dict(self.final)))

    def _lookup(self, table, key):
        if key in table:
            return table[key]
        if self.default is None:
            raise KeyError(f"no cost entry for {key!r}")
        return self.default


@dataclass(frozen=True)
class FunctionCost:
    """Arbitrary ``fn(states, controls, scenario, start) -> float``."""

    fn: Callable


CostSpec = IndicatorExit | ExitCountCost | RecoveryTimeCost | TableCost | FunctionCost


def cost(spec, states, controls, scenario=(), start: int = 0) -> float:
    """Cost of one path starting at time ``start``."""
    if isinstance(spec, IndicatorExit):
        return 1.0 if exit_count(states, controls, spec.constraints, start) else 0.0
    if isinstance(spec, ExitCountCost):
        return float(exit_count(states, controls, spec.constraints, start))
    if isinstance(spec, RecoveryTimeCost):
        tau = recovery_time(states, controls, spec.constraints, start)
        if tau == math.inf:
            return float(len(states) if spec.sentinel is None else spec.sentinel)
        return float(tau - start)
    if isinstance(spec, TableCost):
        terms = []
        for k, u in enumerate(controls):
            x = states[k]
            if x is CEMETERY:
                terms.append(spec.cemetery_cost)
            else:
                terms.append(spec._lookup(spec.stage, (start + k, x, u)))
        last = states[-1]
        terms.append(spec.cemetery_cost if last is CEMETERY else spec._lookup(spec.final, last))
        return math.fsum(terms)
    if isinstance(spec, FunctionCost):
        return float(spec.fn(states, controls, scenario, start))
    raise TypeError(f"unknown cost spec {spec!r}")


# random variables and risk measures -------------------------------------------


class DiscreteRandomVariable:
    """Finitely supported real random variable given as ``(value, weight)`` atoms."""

    def __init__(self, values, weights):
        self.values = np.asarray(values, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        if self.values.shape != self.weights.shape or self.values.ndim != 1:
            raise ValueError("values and weights must be 1-d arrays of equal length")
        if len(self.values) == 0:
            raise ValueError("a random variable needs at least one atom")
        if np.any(self.weights < 0) or not np.all(np.isfinite(self.weights)):
            raise ValueError("weights must be finite and nonnegative")
        total = math.fsum(self.weights.tolist())
        if abs(total - 1.0) > TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")

    @classmethod
    def from_pairs(cls, pairs) -> "DiscreteRandomVariable":
        pairs = list(pairs)
        return cls([v for v, _ in pairs], [w for _, w in pairs])

    def pairs(self) -> list:
        return list(zip(self.values.tolist(), self.weights.tolist()))

    def shift(self, c: float) -> "DiscreteRandomVariable":
        return DiscreteRandomVariable(self.values + c, self.weights)

    def __repr__(self):
        return f"DiscreteRandomVariable({self.pairs()!r})"


@dataclass(frozen=True)
class Expectation:
    probability: WhiteNoise | WeightedScenarios | None = None


@dataclass(frozen=True)
class WorstCase:
    """Maximum over ``scenarios`` (all available scenarios when None)."""

    scenarios: tuple | None = None

    def __post_init__(self):
        if self.scenarios is not None:
            object.__setattr__(self, "scenarios", tuple(tuple(s) for s in self.scenarios))


@dataclass(frozen=True)
class CVaR:
    """Mean of the worst ``1 - beta`` probability mass of the cost."""

    beta: float
    probability: WhiteNoise | WeightedScenarios | None = None

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(
                f"CVaR level {self.beta!r} must lie in [0, 1); use WorstCase for beta = 1"
            )


@dataclass(frozen=True)
class AmbiguitySup:
    """Worst value of ``inner`` over every probability model in ``ambiguity``."""

    ambiguity: AmbiguitySet
    inner: Expectation | WorstCase | CVaR


RiskMeasureSpec = Expectation | WorstCase | CVaR | AmbiguitySup


def _with_probability(inner, probability):
    if isinstance(inner, Expectation):
        return Expectation(probability)
    if isinstance(inner, CVaR):
        return CVaR(inner.beta, probability)
    if isinstance(inner, WorstCase):
        return WorstCase(probability.support())
    raise TypeError(f"{inner!r} cannot be nested in an ambiguity set")


def cvar_sorted_tail(z: DiscreteRandomVariable, beta: float) -> float:
    """CVaR by averaging the top ``1 - beta`` mass of the sorted atoms."""
    tail = 1.0 - beta
    atoms = [(v, w) for v, w in z.pairs() if w > 0]
    # stable sort: equal values keep insertion order
    atoms.sort(key=lambda a: -a[0])
    remaining = tail
    terms = []
    for v, w in atoms:
        take = min(w, remaining)
        terms.append(take * v)
        remaining -= take
        if remaining <= 0:
            break
    return math.fsum(terms) / tail


def _law(values: Mapping, probability) -> DiscreteRandomVariable:
    if probability is None:
        raise ValueError("a scenario-indexed variable needs a probability model")
    pairs = []
    for s, p in probability.weighted_scenarios():
        if s not in values:
            raise MissingScenarioError(f"no value for scenario {s!r}")
        pairs.append((values[s], p))
    return DiscreteRandomVariable.from_pairs(pairs)


def risk(spec, z) -> float:
    """Apply a risk measure to ``z``.

    ``z`` is either a :class:`DiscreteRandomVariable` (its own weights are
    used) or a ``{scenario: value}`` mapping (the measure's probability
    model or scenario set decides the law). Ambiguity sets need the mapping
    form since every member model reweights the scenarios.
    """
    if isinstance(z, DiscreteRandomVariable):
        if isinstance(spec, Expectation):
            return math.fsum((z.values * z.weights).tolist())
        if isinstance(spec, WorstCase):
            return float(z.values[z.weights > 0].max())
        if isinstance(spec, CVaR):
            return cvar_sorted_tail(z, spec.beta)
        raise TypeError("ambiguity sets need a scenario-indexed variable")
    if isinstance(spec, AmbiguitySup):
        return max(risk(_with_probability(spec.inner, p), z) for p in spec.ambiguity)
    if isinstance(spec, WorstCase):
        scope = list(z) if spec.scenarios is None else spec.scenarios
        missing = [s for s in scope if s not in z]
        if missing:
            raise MissingScenarioError(f"no value for scenario {missing[0]!r}")
        return float(max(z[s] for s in scope))
    return risk(spec, _law(z, spec.probability))


def risk_scope(spec, model: SystemModel) -> list:
    """Scenarios whose values the measure reads, in canonical order."""
    if isinstance(spec, WorstCase):
        if spec.scenarios is None:
            return list(model.scenarios())
        return model.sort_scenarios(spec.scenarios)
    if isinstance(spec, AmbiguitySup):
        found = []
        for p in spec.ambiguity:
            found.extend(risk_scope(_with_probability(spec.inner, p), model))
        return model.sort_scenarios(found)
    if spec.probability is None:
        return list(model.scenarios())
    return model.sort_scenarios(spec.probability.support())


@dataclass(frozen=True)
class ExtendedRiskSpec:
    """Risk measure applied to a per-scenario path cost."""

    cost: CostSpec
    measure: RiskMeasureSpec


def scenario_costs(spec: ExtendedRiskSpec, bundle) -> dict:
    return {
        s: cost(spec.cost, states, controls, s, bundle.start)
        for s, states, controls in bundle
    }


def extended_risk(spec: ExtendedRiskSpec, bundle) -> float:
    """Risk of the bundle's state-control process under ``spec``."""
    measure = spec.measure
    values = scenario_costs(spec, bundle)
    if isinstance(measure, (Expectation, CVaR)) and measure.probability is None:
        raise ValueError("extended risk needs an explicit probability model")
    return risk(measure, values)
