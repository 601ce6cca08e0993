"""Recovery regimes and exact membership tests for path bundles.

A regime describes which closed-loop state-control processes count as
acceptable from a start time. Paths that visit the cemetery never satisfy a
path-level requirement, so inadmissible controls can never pass as recovery.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping, Sequence

from .errors import MissingScenarioError
from .model import CEMETERY, Label, SystemModel
from .probability import TOL, WeightedScenarios, WhiteNoise

INF = math.inf


@dataclass(frozen=True)
class ConstraintMap:
    """Acceptable states per time plus an optional control constraint map.

    ``states`` is either one set used at every time or a ``{t: set}``
    mapping (times absent from the mapping accept nothing). ``controls`` is
    a ``{(t, x): allowed}`` mapping, where missing keys allow every control,
    or a callable ``(t, x) -> allowed``.
    """

    states: frozenset | Mapping
    controls: Mapping | Callable | None = None

    def __post_init__(self):
        if isinstance(self.states, Mapping):
            per_t = {t: frozenset(v) for t, v in self.states.items()}
            object.__setattr__(self, "states", MappingProxyType(per_t))
        else:
            object.__setattr__(self, "states", frozenset(self.states))
        if isinstance(self.controls, Mapping):
            ctl = {k: frozenset(v) for k, v in self.controls.items()}
            object.__setattr__(self, "controls", MappingProxyType(ctl))

    def acceptable(self, t: int) -> frozenset:
        if isinstance(self.states, frozenset):
            return self.states
        return self.states.get(t, frozenset())

    def state_ok(self, t: int, x: Label) -> bool:
        return x is not CEMETERY and x in self.acceptable(t)

    def control_ok(self, t: int, x: Label, u: Label) -> bool:
        if u is CEMETERY:
            return False
        if self.controls is None:
            return True
        if callable(self.controls):
            return u in self.controls(t, x)
        allowed = self.controls.get((t, x))
        return allowed is None or u in allowed

    def allowed(self, model: SystemModel, t: int, x: Label) -> tuple:
        """Controls at ``(t, x)`` meeting both these and the model's hard constraints."""
        return tuple(u for u in model.allowed_controls(t, x) if self.control_ok(t, x, u))


def as_constraints(region) -> ConstraintMap:
    return region if isinstance(region, ConstraintMap) else ConstraintMap(region)


def _flags(constraints: ConstraintMap, states, controls, start: int) -> list:
    """Per index: does ``(x_s, u_s)`` satisfy the constraints at time ``s``?"""
    out = []
    for k, x in enumerate(states):
        s = start + k
        ok = constraints.state_ok(s, x)
        if ok and k < len(controls):
            ok = constraints.control_ok(s, x, controls[k])
        out.append(ok)
    return out


def path_satisfies(
    constraints: ConstraintMap, states, controls, from_time: int, start: int = 0
) -> bool:
    """True iff every ``x_s`` in ``K_s`` and every ``u_s`` allowed, for ``s >= from_time``.

    ``start`` is the time of ``states[0]``.
    """
    flags = _flags(constraints, states, controls, start)
    return all(flags[max(0, from_time - start):])


def recovery_time(states, controls, constraints: ConstraintMap, t: int) -> float:
    """Smallest ``r >= t`` from which the path satisfies the constraints; ``inf`` if none."""
    flags = _flags(constraints, states, controls, t)
    if not flags:
        return t
    if not flags[-1]:
        return INF
    last_bad = max((k for k, ok in enumerate(flags) if not ok), default=-1)
    return t + last_bad + 1


def exit_count(states, controls, constraints: ConstraintMap, t: int) -> int:
    """Number of times ``s >= t`` at which the state or control is out of bounds."""
    return sum(1 for ok in _flags(constraints, states, controls, t) if not ok)


# regime variants -------------------------------------------------------------


def _scenarios(value):
    return None if value is None else tuple(tuple(s) for s in value)


def _check_beta(beta):
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"probability level {beta!r} outside [0, 1]")


@dataclass(frozen=True)
class Bounded:
    """States stay in ``region`` at every time from the start, on every scenario."""

    region: ConstraintMap
    scenarios: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "region", as_constraints(self.region))
        object.__setattr__(self, "scenarios", _scenarios(self.scenarios))


@dataclass(frozen=True)
class DeterministicViability:
    """State and control constraints hold at every time, on every scenario."""

    constraints: ConstraintMap
    scenarios: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "scenarios", _scenarios(self.scenarios))


@dataclass(frozen=True)
class RobustRecovery:
    """Every scenario in ``scenarios`` recovers at a finite per-scenario time."""

    constraints: ConstraintMap
    scenarios: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "scenarios", _scenarios(self.scenarios))


@dataclass(frozen=True)
class StochasticViability:
    """Constraints hold throughout with probability at least ``beta``."""

    constraints: ConstraintMap
    probability: WhiteNoise | WeightedScenarios
    beta: float

    def __post_init__(self):
        _check_beta(self.beta)


@dataclass(frozen=True)
class ExitProbability:
    """The state leaves ``region`` at least once with probability at most ``beta``."""

    region: ConstraintMap
    probability: WhiteNoise | WeightedScenarios
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "region", as_constraints(self.region))
        _check_beta(self.beta)


@dataclass(frozen=True)
class ExitCountLimit:
    """Almost surely no more than ``max_exits`` exits from ``region``."""

    region: ConstraintMap
    max_exits: int
    probability: WhiteNoise | WeightedScenarios

    def __post_init__(self):
        object.__setattr__(self, "region", as_constraints(self.region))
        if self.max_exits < 0:
            raise ValueError("max_exits must be nonnegative")


@dataclass(frozen=True)
class RiskBound:
    """Extended risk of the process at most ``alpha``."""

    risk: object  # risk.ExtendedRiskSpec
    alpha: float


@dataclass(frozen=True)
class ExistsControl:
    """Path predicate: some control along the path equals ``value``."""

    value: Label

    def __call__(self, states, controls) -> bool:
        return any(u == self.value for u in controls)


@dataclass(frozen=True)
class ControlPredicate:
    """A per-path predicate over controls, required on every scenario."""

    predicate: Callable
    scenarios: tuple | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "scenarios", _scenarios(self.scenarios))

    @classmethod
    def exists_control(cls, value, scenarios=None) -> "ControlPredicate":
        return cls(ExistsControl(value), scenarios, f"exists u_s = {value!r}")


Regime = (
    Bounded
    | DeterministicViability
    | RobustRecovery
    | StochasticViability
    | ExitProbability
    | ExitCountLimit
    | RiskBound
    | ControlPredicate
)

_PROBABILISTIC = (StochasticViability, ExitProbability, ExitCountLimit)


def path_test(regime) -> Callable | None:
    """Per-path check for regimes that are a conjunction over scenarios.

    Returns ``f(states, controls, start) -> bool``, or None when membership
    aggregates across scenarios (probability levels, risk bounds).
    """
    if isinstance(regime, Bounded):
        return lambda xs, us, t: all(regime.region.state_ok(t + k, x) for k, x in enumerate(xs))
    if isinstance(regime, DeterministicViability):
        return lambda xs, us, t: path_satisfies(regime.constraints, xs, us, t, start=t)
    if isinstance(regime, RobustRecovery):
        return lambda xs, us, t: recovery_time(xs, us, regime.constraints, t) < INF
    if isinstance(regime, ExitCountLimit):
        return lambda xs, us, t: exit_count(xs, us, regime.region, t) <= regime.max_exits
    if isinstance(regime, ControlPredicate):
        return lambda xs, us, t: CEMETERY not in xs and bool(regime.predicate(xs, us))
    return None


def regime_scope(regime, model: SystemModel) -> list:
    """Scenarios a bundle must cover to decide membership, in canonical order."""
    if isinstance(regime, _PROBABILISTIC):
        return model.sort_scenarios(regime.probability.support())
    if isinstance(regime, RiskBound):
        from .risk import risk_scope

        return risk_scope(regime.risk.measure, model)
    if regime.scenarios is None:
        return list(model.scenarios())
    return model.sort_scenarios(regime.scenarios)


def _require(bundle, scenarios):
    missing = [s for s in scenarios if s not in bundle]
    if missing:
        raise MissingScenarioError(f"bundle lacks {len(missing)} scenario(s), e.g. {missing[0]!r}")


def regime_membership(regime, bundle) -> bool:
    """Exact test of whether the bundle's process belongs to the regime.

    Regimes with ``scenarios=None`` are checked on every bundle entry.
    """
    t = bundle.start
    if isinstance(regime, RiskBound):
        from .risk import extended_risk

        return extended_risk(regime.risk, bundle) <= regime.alpha + TOL
    if isinstance(regime, _PROBABILISTIC):
        weighted = regime.probability.weighted_scenarios()
        _require(bundle, [s for s, _ in weighted])
        if isinstance(regime, StochasticViability):
            good = [
                p
                for s, p in weighted
                if path_satisfies(regime.constraints, *bundle[s], t, start=t)
            ]
            return math.fsum(good) >= regime.beta - TOL
        if isinstance(regime, ExitProbability):
            bad = [p for s, p in weighted if exit_count(*bundle[s], regime.region, t) > 0]
            return math.fsum(bad) <= regime.beta + TOL
    test = path_test(regime)
    scope = bundle.scenarios if _scope_is_bundle(regime) else _explicit_scope(regime)
    _require(bundle, scope)
    return all(test(*bundle[s], t) for s in scope)


def _scope_is_bundle(regime) -> bool:
    return not isinstance(regime, _PROBABILISTIC) and getattr(regime, "scenarios", 0) is None


def _explicit_scope(regime) -> list:
    if isinstance(regime, _PROBABILISTIC):
        return regime.probability.support()
    return list(regime.scenarios)


def success_probability(constraints: ConstraintMap, probability, bundle) -> float:
    """Probability that the bundle's paths satisfy the constraints from its start."""
    t = bundle.start
    weighted = probability.weighted_scenarios()
    _require(bundle, [s for s, _ in weighted])
    return math.fsum(
        p for s, p in weighted if path_satisfies(constraints, *bundle[s], t, start=t)
    )


def counter_extension(model: SystemModel, value: Label, scenarios=None):
    """Rewrite "some control equals ``value``" as a final-time state constraint.

    The extended state is ``(x, c)`` where ``c`` counts the epochs at which
    ``value`` was played. Returns ``(extended_model, regime, embed)`` where
    ``regime`` requires ``c >= 1`` at the final time and ``embed(x)`` maps an
    original state to its counter-zero copy.
    """
    t0, T = model.grid.t0, model.grid.T
    cap = T - t0
    counts = range(cap + 1)
    ext_states = {t: [(x, c) for x in model.states_at(t) for c in counts] for t in model.grid.times}
    table = {}
    for (t, x, u, w), nxt in model.dynamics.items():
        for c in counts:
            table[(t, (x, c), u, w)] = (
                CEMETERY if nxt is CEMETERY else (nxt, min(cap, c + (u == value)))
            )
    hard = None
    if model.hard_constraints is not None:
        hard = {(t, (x, c)): us for (t, x), us in model.hard_constraints.items() for c in counts}
    ext = SystemModel.build(
        t0,
        T,
        ext_states,
        {t: model.controls_at(t) for t in model.grid.epochs},
        {t: model.uncertainties_at(t) for t in model.grid.epochs},
        table,
        hard,
    )
    acceptable = {t: ext_states[t] for t in model.grid.times if t < T}
    acceptable[T] = [(x, c) for x, c in ext_states[T] if c >= 1]
    regime = DeterministicViability(ConstraintMap(acceptable), scenarios)
    return ext, regime, lambda x: (x, 0)


def product_closure(scenarios: Sequence, model: SystemModel) -> tuple | None:
    """Per-epoch uncertainty subsets if ``scenarios`` is exactly their product, else None."""
    scenarios = {tuple(s) for s in scenarios}
    per_epoch = []
    for k, ws in enumerate(model.uncertainties):
        used = {s[k] for s in scenarios}
        per_epoch.append(tuple(w for w in ws if w in used))
    if len(scenarios) != math.prod(len(ws) for ws in per_epoch):
        return None
    if set(itertools.product(*per_epoch)) != scenarios:
        return None
    return tuple(per_epoch)
