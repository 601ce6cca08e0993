"""Resilient states, witness strategies and resilience indicators.

Backward induction handles the time-by-time regimes (robust viability,
robust recovery, stochastic viability under white noise). Everything else
goes through :func:`brute_force_resilient`, an exhaustive search over
strategy behaviours that also serves as the ground-truth oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import (
    EnumerationTooLarge,
    LabelError,
    NoResilientStrategyError,
    UnsupportedModelError,
)
from .model import CEMETERY, Label, SystemModel, step
from .probability import TOL, WhiteNoise
from .regimes import (
    ConstraintMap,
    DeterministicViability,
    RobustRecovery,
    StochasticViability,
    path_test,
    product_closure,
    recovery_time,
    regime_membership,
    regime_scope,
)
from .risk import ExtendedRiskSpec, extended_risk, risk_scope
from .strategies import AdaptedPolicy, MarkovPolicy, count_adapted, default_budget
from .trajectory import PathBundle, bundle


@dataclass(frozen=True)
class KernelTable:
    """Per-time state sets, with a Markov witness policy from the DP argmax."""

    sets: Mapping
    witness: MarkovPolicy | None = None
    delays: Mapping = field(default_factory=dict)

    def __post_init__(self):
        sets = {t: frozenset(v) for t, v in self.sets.items()}
        object.__setattr__(self, "sets", MappingProxyType(sets))

    def __getitem__(self, t: int) -> frozenset:
        return self.sets[t]


@dataclass(frozen=True)
class ValueTable:
    """Maximal success probability per ``(t, x)`` and an optimal Markov policy."""

    values: Mapping
    witness: MarkovPolicy | None = None

    def __getitem__(self, key) -> float:
        return self.values[key]


@dataclass(frozen=True)
class ResilienceResult:
    resilient: bool
    witness: MarkovPolicy | AdaptedPolicy | None = None
    recovery_times: Mapping = field(default_factory=dict)
    indicator: float | None = None


@dataclass(frozen=True)
class ResilientStates:
    states: frozenset
    witnesses: Mapping
    method: str


@dataclass(frozen=True)
class IndicatorResult:
    value: float
    strategy: MarkovPolicy | AdaptedPolicy
    evaluated: int


# dynamic programming -----------------------------------------------------------


def _subsets(model: SystemModel, uncertainty_subsets) -> tuple:
    if uncertainty_subsets is None:
        return model.uncertainties
    subsets = tuple(tuple(ws) for ws in uncertainty_subsets)
    if len(subsets) != model.grid.horizon:
        raise ValueError(f"need {model.grid.horizon} per-epoch uncertainty subsets")
    return subsets


def _fill(model: SystemModel, chosen: dict) -> MarkovPolicy:
    """Total witness: unchosen states get their first hard-allowed control."""
    table = {}
    for t in model.grid.epochs:
        for x in model.states_at(t):
            if (t, x) in chosen:
                table[(t, x)] = chosen[(t, x)]
            else:
                allowed = model.allowed_controls(t, x)
                if allowed:
                    table[(t, x)] = allowed[0]
    return MarkovPolicy(table)


def _robust_kernel(model, constraints, subsets):
    T = model.grid.T
    sets = {T: {x for x in model.states_at(T) if constraints.state_ok(T, x)}}
    chosen = {}
    for t in reversed(model.grid.epochs):
        nxt = sets[t + 1]
        ws = subsets[t - model.grid.t0]
        sets[t] = set()
        for x in model.states_at(t):
            if not constraints.state_ok(t, x):
                continue
            for u in constraints.allowed(model, t, x):
                if all(step(model, t, x, u, w) in nxt for w in ws):
                    sets[t].add(x)
                    chosen[(t, x)] = u
                    break
    return sets, chosen


def robust_viability_kernel(
    model: SystemModel, constraints: ConstraintMap, uncertainty_subsets=None
) -> KernelTable:
    """States from which some control keeps the constraints satisfied robustly.

    ``V_T = K_T`` and ``V_t`` keeps ``x`` in ``K_t`` having an allowed ``u``
    that sends every uncertainty of the epoch's subset into ``V_{t+1}``.
    """
    sets, chosen = _robust_kernel(model, constraints, _subsets(model, uncertainty_subsets))
    return KernelTable(sets, _fill(model, chosen))


def robust_recovery_sets(
    model: SystemModel, constraints: ConstraintMap, uncertainty_subsets=None
) -> KernelTable:
    """States from which every scenario reaches constraint satisfaction and stays.

    Before recovery only the model's hard constraints bind:
    ``R_t = V_t ∪ {x : ∃u hard-allowed, ∀w, step(t, x, u, w) ∈ R_{t+1}}``.
    The witness plays the viability control inside ``V_t`` and elsewhere
    the control minimising the worst-case delay before entering the
    kernel; ``delays[(t, x)]`` records that delay.
    """
    subsets = _subsets(model, uncertainty_subsets)
    viable, chosen = _robust_kernel(model, constraints, subsets)
    T = model.grid.T
    # worst-case delay before the path enters the viability kernel
    delay = {(T, x): 0 for x in viable[T]}
    for t in reversed(model.grid.epochs):
        ws = subsets[t - model.grid.t0]
        for x in model.states_at(t):
            if x in viable[t]:
                delay[(t, x)] = 0
                continue
            best = None
            for u in model.allowed_controls(t, x):
                worst = max(delay.get((t + 1, step(model, t, x, u, w)), math.inf) for w in ws)
                if worst < math.inf and (best is None or worst < best):
                    best = worst
                    chosen[(t, x)] = u
            if best is not None:
                delay[(t, x)] = best + 1
    sets = {t: {x for x in model.states_at(t) if (t, x) in delay} for t in model.grid.times}
    return KernelTable(sets, _fill(model, chosen), MappingProxyType(delay))


def stochastic_viability_values(
    model: SystemModel, constraints: ConstraintMap, noise
) -> ValueTable:
    """Maximal probability of satisfying the constraints until ``T`` from each ``(t, x)``."""
    if not isinstance(noise, WhiteNoise):
        raise UnsupportedModelError(
            "dynamic programming needs stage-wise independent (white) noise"
        )
    if len(noise.distributions) != model.grid.horizon:
        raise ValueError("noise horizon does not match the model")
    T, t0 = model.grid.T, model.grid.t0
    values = {(T, x): float(constraints.state_ok(T, x)) for x in model.states_at(T)}
    chosen = {}
    for t in reversed(model.grid.epochs):
        dist = noise.distributions[t - t0]
        for x in model.states_at(t):
            best = 0.0
            if constraints.state_ok(t, x):
                best_u = None
                for u in constraints.allowed(model, t, x):
                    terms = []
                    for w, p in dist:
                        nxt = step(model, t, x, u, w)
                        if nxt is not CEMETERY:
                            terms.append(p * values[(t + 1, nxt)])
                    v = math.fsum(terms)
                    if best_u is None or v > best:
                        best, best_u = v, u
                if best_u is not None:
                    chosen[(t, x)] = best_u
            values[(t, x)] = best
    return ValueTable(MappingProxyType(values), _fill(model, chosen))


# exhaustive search -------------------------------------------------------------


def _behaviours(model, t, x0, scenarios, adapted, path_ok, budget) -> Iterator[tuple]:
    """Every distinct closed-loop behaviour over ``scenarios``, depth first.

    A control is chosen for a decision node only when the closed loop first
    reaches it, so policies that differ only off-path are visited once.
    Decision nodes are ``(r, x)`` for Markov and ``(r, x, prefix)`` for
    adapted strategies. ``path_ok(scenario, states, controls)`` returning
    False prunes every completion of the current partial strategy.

    Yields ``(table, paths)``.
    """
    t0, T = model.grid.t0, model.grid.T
    n = len(scenarios)
    assign: dict = {}
    paths: list = [None] * n
    leaves = [0]

    def leaf():
        leaves[0] += 1
        if leaves[0] > budget:
            raise EnumerationTooLarge(leaves[0], budget)

    def run(i, r, states, controls):
        sc = scenarios[i]
        x = states[-1]
        while r < T:
            if x is CEMETERY:
                u = CEMETERY
            else:
                key = (r, x, sc[: r - t0]) if adapted else (r, x)
                if key not in assign:
                    for choice in model.allowed_controls(r, x):
                        assign[key] = choice
                        yield from run(i, r, states, controls)
                    assign.pop(key, None)
                    return
                u = assign[key]
                x = step(model, r, x, u, sc[r - t0])
            states += (x,)
            controls += (u,)
            r += 1
        if path_ok is not None and not path_ok(sc, states, controls):
            leaf()
            return
        paths[i] = (sc, states, controls)
        if i + 1 < n:
            yield from run(i + 1, t, (x0,), ())
        else:
            leaf()
            yield dict(assign), tuple(paths)

    yield from run(0, t, (x0,), ())


def _as_strategy(table, adapted, t0):
    return AdaptedPolicy(table, t0) if adapted else MarkovPolicy(table)


def _constraints_of(regime):
    if isinstance(regime, (DeterministicViability, RobustRecovery, StochasticViability)):
        return regime.constraints
    return None


def _pruner(regime, scope_set, t):
    test = path_test(regime) if regime is not None else None
    if test is None:
        return None
    return lambda sc, states, controls: sc not in scope_set or test(states, controls, t)


def _search(model, t, x, scenarios, strategy_class, path_ok, budget):
    if strategy_class not in ("adapted", "markov"):
        raise ValueError(f"strategy_class must be 'adapted' or 'markov', not {strategy_class!r}")
    if x not in model.states_at(t):
        raise LabelError(f"state {x!r} not in X_{t}")
    budget = default_budget() if budget is None else budget
    adapted = strategy_class == "adapted"
    if adapted:
        count = count_adapted(model, t, x, scenarios)
        if count > budget:
            raise EnumerationTooLarge(count, budget)
    return _behaviours(model, t, x, scenarios, adapted, path_ok, budget), adapted


def brute_force_resilient(
    model: SystemModel,
    regime,
    t: int,
    x: Label,
    strategy_class: str = "adapted",
    budget: int | None = None,
) -> ResilienceResult:
    """Search strategies exhaustively for one whose bundle lies in ``regime``.

    Bundles cover :func:`regime_scope`. The first witness in enumeration
    order is returned; conjunctive regimes prune failing partial strategies.
    """
    scope = regime_scope(regime, model)
    path_ok = _pruner(regime, set(scope), t)
    behaviours, adapted = _search(model, t, x, scope, strategy_class, path_ok, budget)
    for table, paths in behaviours:
        candidate = PathBundle(t, x, paths)
        if regime_membership(regime, candidate):
            taus = {}
            constraints = _constraints_of(regime)
            if constraints is not None:
                taus = {s: recovery_time(xs, us, constraints, t) for s, xs, us in paths}
            return ResilienceResult(True, _as_strategy(table, adapted, model.grid.t0), taus)
    return ResilienceResult(False)


def _restrict(policy: MarkovPolicy, t: int) -> MarkovPolicy:
    return MarkovPolicy({k: u for k, u in policy.table.items() if k[0] >= t})


def resilient_states(
    model: SystemModel,
    regime,
    t: int,
    strategy_class: str = "adapted",
    budget: int | None = None,
) -> ResilientStates:
    """States at ``t`` admitting a resilient strategy, with one witness each.

    Viability and robust-recovery regimes over a product scenario set and
    stochastic viability under white noise use dynamic programming; other
    regimes fall back to :func:`brute_force_resilient` per state.
    """
    if isinstance(regime, (DeterministicViability, RobustRecovery)):
        closure = product_closure(regime_scope(regime, model), model)
        if closure is not None:
            solve = (
                robust_viability_kernel
                if isinstance(regime, DeterministicViability)
                else robust_recovery_sets
            )
            table = solve(model, regime.constraints, closure)
            witness = _restrict(table.witness, t)
            states = table[t]
            return ResilientStates(states, {x: witness for x in states}, "dp")
    if isinstance(regime, StochasticViability) and isinstance(regime.probability, WhiteNoise):
        values = stochastic_viability_values(model, regime.constraints, regime.probability)
        witness = _restrict(values.witness, t)
        states = frozenset(
            x for x in model.states_at(t) if values[(t, x)] >= regime.beta - TOL
        )
        return ResilientStates(states, {x: witness for x in states}, "dp")
    found = {}
    for x in model.states_at(t):
        result = brute_force_resilient(model, regime, t, x, strategy_class, budget)
        if result.resilient:
            found[x] = result.witness
    return ResilientStates(frozenset(found), found, "search")


def resilience_indicator(
    model: SystemModel,
    regime,
    risk: ExtendedRiskSpec,
    t: int,
    x: Label,
    strategy_class: str = "adapted",
    budget: int | None = None,
) -> IndicatorResult:
    """Minimal extended risk over the resilient strategies from ``(t, x)``.

    With ``regime=None`` the minimum runs over every strategy. Ties keep
    the first strategy in enumeration order.
    """
    scope = risk_scope(risk.measure, model)
    regime_set = set()
    if regime is not None:
        regime_set = set(regime_scope(regime, model))
        scope = model.sort_scenarios(set(scope) | regime_set)
    path_ok = _pruner(regime, regime_set, t)
    behaviours, adapted = _search(model, t, x, scope, strategy_class, path_ok, budget)
    best, best_table, n = math.inf, None, 0
    for table, paths in behaviours:
        n += 1
        candidate = PathBundle(t, x, paths)
        if regime is not None and not regime_membership(regime, candidate):
            continue
        value = extended_risk(risk, candidate)
        if best_table is None or value < best:
            best, best_table = value, table
    if best_table is None:
        raise NoResilientStrategyError(f"no resilient strategy from t={t}, x={x!r}")
    return IndicatorResult(best, _as_strategy(best_table, adapted, model.grid.t0), n)


def witness_bundle(model: SystemModel, regime, strategy, t: int, x: Label) -> PathBundle:
    """Closed-loop bundle of ``strategy`` over the regime's scenario scope."""
    return bundle(model, strategy, t, x, regime_scope(regime, model))
