"""Finite discrete-time control systems with a cemetery state.

A :class:`SystemModel` stores everything as explicit tables: per-time label
sets for states, controls and uncertainties, a transition table, and an
optional hard-constraint map. Controls that leave the hard-constraint set
send the state to :data:`CEMETERY`, which absorbs every later transition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import LabelError, ModelError, RangeError

Label = Hashable
Scenario = tuple


class _Cemetery:
    """Absorbing sink state; a singleton that survives pickling."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "∂"

    def __reduce__(self):
        return (_Cemetery, ())


CEMETERY = _Cemetery()


@dataclass(frozen=True)
class TimeGrid:
    """Integer times ``t0..T``; decisions are taken at ``t0..T-1``."""

    t0: int
    T: int

    def __post_init__(self):
        if self.t0 > self.T:
            raise ModelError(f"t0={self.t0} exceeds final time T={self.T}")

    @property
    def times(self) -> range:
        return range(self.t0, self.T + 1)

    @property
    def epochs(self) -> range:
        return range(self.t0, self.T)

    @property
    def horizon(self) -> int:
        return self.T - self.t0

    def segment(self, s: int, t: int) -> range:
        """Times ``s..t`` inclusive; empty exactly when ``s > t``."""
        return range(s, t + 1)


def _labels(values: Iterable[Label], what: str) -> tuple:
    labels = tuple(values)
    if not labels:
        raise ModelError(f"{what} is empty")
    if len(set(labels)) != len(labels):
        raise ModelError(f"{what} has duplicate labels: {labels!r}")
    if any(v is CEMETERY for v in labels):
        raise ModelError(f"{what} contains the cemetery state")
    return labels


def _per_time(spec, times: range, what: str) -> tuple:
    """Expand a constant label list or a ``{t: labels}`` mapping."""
    if isinstance(spec, Mapping):
        missing = [t for t in times if t not in spec]
        if missing:
            raise ModelError(f"{what} missing for times {missing}")
        return tuple(_labels(spec[t], f"{what}[{t}]") for t in times)
    const = _labels(spec, what)
    return tuple(const for _ in times)


@dataclass(frozen=True)
class Issue:
    kind: str
    where: tuple
    detail: str = ""

    def __str__(self):
        loc = ", ".join(repr(v) for v in self.where)
        text = f"{self.kind} at ({loc})"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def __len__(self):
        return len(self.issues)

    def __iter__(self) -> Iterator[Issue]:
        return iter(self.issues)

    def kinds(self) -> set:
        return {i.kind for i in self.issues}


@dataclass(frozen=True, eq=False)
class SystemModel:
    """Tabulated discrete-time dynamics over a finite time grid.

    ``states`` has one label tuple per time ``t0..T``; ``controls`` and
    ``uncertainties`` have one per decision epoch ``t0..T-1``. ``dynamics``
    maps ``(t, x, u, w)`` to the next state (possibly :data:`CEMETERY`).
    ``hard_constraints``, when given, maps ``(t, x)`` to the controls allowed
    there; any other control leads to the cemetery.

    Use :meth:`build` to tabulate from callables or constant label lists.
    """

    grid: TimeGrid
    states: tuple
    controls: tuple
    uncertainties: tuple
    dynamics: Mapping = field(repr=False)
    hard_constraints: Mapping | None = field(default=None, repr=False)

    def __post_init__(self):
        g = self.grid
        if len(self.states) != g.horizon + 1:
            raise ModelError(
                f"expected {g.horizon + 1} state sets, got {len(self.states)}"
            )
        for name in ("controls", "uncertainties"):
            if len(getattr(self, name)) != g.horizon:
                raise ModelError(
                    f"expected {g.horizon} {name} sets, got {len(getattr(self, name))}"
                )
        object.__setattr__(self, "dynamics", MappingProxyType(dict(self.dynamics)))
        if self.hard_constraints is not None:
            hc = {k: frozenset(v) for k, v in self.hard_constraints.items()}
            object.__setattr__(self, "hard_constraints", MappingProxyType(hc))

    @classmethod
    def build(
        cls,
        t0: int,
        T: int,
        states,
        controls,
        uncertainties,
        dynamics: Mapping | Callable,
        hard_constraints: Mapping | Callable | None = None,
    ) -> "SystemModel":
        """Assemble a model, tabulating callables over the label sets.

        Label-set arguments are either one sequence used at every time or a
        mapping from time to sequence. A callable ``dynamics(t, x, u, w)``
        is evaluated on every non-cemetery triple; a callable
        ``hard_constraints(t, x)`` returns the allowed controls.
        """
        grid = TimeGrid(t0, T)
        xs = _per_time(states, grid.times, "states")
        us = _per_time(controls, grid.epochs, "controls")
        ws = _per_time(uncertainties, grid.epochs, "uncertainties")
        if callable(dynamics):
            table = {}
            for i, t in enumerate(grid.epochs):
                for x, u, w in itertools.product(xs[i], us[i], ws[i]):
                    table[(t, x, u, w)] = dynamics(t, x, u, w)
        else:
            table = dict(dynamics)
        hc = hard_constraints
        if callable(hc):
            hc = {
                (t, x): frozenset(u for u in us[i] if u in set(hard_constraints(t, x)))
                for i, t in enumerate(grid.epochs)
                for x in xs[i]
            }
        return cls(grid, xs, us, ws, table, hc)

    # label sets -----------------------------------------------------------

    def states_at(self, t: int) -> tuple:
        if t not in self.grid.times:
            raise RangeError(f"time {t} outside {self.grid.t0}..{self.grid.T}")
        return self.states[t - self.grid.t0]

    def controls_at(self, t: int) -> tuple:
        if t not in self.grid.epochs:
            raise RangeError(f"{t} is not a decision epoch")
        return self.controls[t - self.grid.t0]

    def uncertainties_at(self, t: int) -> tuple:
        if t not in self.grid.epochs:
            raise RangeError(f"{t} is not a decision epoch")
        return self.uncertainties[t - self.grid.t0]

    @cached_property
    def _state_index(self) -> tuple:
        return tuple({x: i for i, x in enumerate(xs)} for xs in self.states)

    @cached_property
    def _control_index(self) -> tuple:
        return tuple({u: i for i, u in enumerate(us)} for us in self.controls)

    @cached_property
    def _noise_index(self) -> tuple:
        return tuple({w: i for i, w in enumerate(ws)} for ws in self.uncertainties)

    def state_order(self, t: int, x: Label) -> int:
        """Position of ``x`` in the state labels at ``t``; cemetery sorts last."""
        if x is CEMETERY:
            return len(self.states_at(t))
        return self._state_index[t - self.grid.t0][x]

    def sort_states(self, t: int, xs: Iterable[Label]) -> list:
        return sorted(xs, key=lambda x: self.state_order(t, x))

    def scenario_key(self, scenario: Sequence[Label]) -> tuple:
        """Sort key giving the lexicographic order of scenarios by label rank."""
        idx = self._noise_index
        return tuple(idx[i][w] for i, w in enumerate(scenario))

    def sort_scenarios(self, scenarios: Iterable[Sequence[Label]]) -> list:
        return sorted({tuple(s) for s in scenarios}, key=self.scenario_key)

    def scenarios(self) -> Iterator[Scenario]:
        """All scenarios ``(w_t0, ..., w_{T-1})`` in lexicographic order."""
        return itertools.product(*self.uncertainties)

    def allowed_controls(self, t: int, x: Label) -> tuple:
        """Controls at ``(t, x)`` that do not trigger the cemetery, in label order."""
        us = self.controls_at(t)
        if x is CEMETERY:
            return us
        if self.hard_constraints is None:
            return us
        allowed = self.hard_constraints.get((t, x), frozenset())
        return tuple(u for u in us if u in allowed)

    def check_scenario(self, scenario: Sequence[Label], start: int | None = None):
        """Raise unless ``scenario`` assigns a valid uncertainty per epoch."""
        start = self.grid.t0 if start is None else start
        for k, w in enumerate(scenario):
            t = start + k
            if t not in self.grid.epochs:
                raise RangeError(f"scenario too long: epoch {t} past T={self.grid.T}")
            if w not in self._noise_index[t - self.grid.t0]:
                raise LabelError(f"uncertainty {w!r} not in W_{t}")


def validate(model: SystemModel) -> ValidationReport:
    """List totality, constraint and label problems in ``model``'s tables."""
    issues = []
    g = model.grid
    for (t, x, u, w), nxt in model.dynamics.items():
        where = (t, x, u, w)
        if t not in g.epochs:
            issues.append(Issue("unknown-time", where))
            continue
        if x not in model._state_index[t - g.t0]:
            issues.append(Issue("unknown-state", where, f"{x!r} not in X_{t}"))
        if u not in model._control_index[t - g.t0]:
            issues.append(Issue("unknown-control", where, f"{u!r} not in U_{t}"))
        if w not in model._noise_index[t - g.t0]:
            issues.append(Issue("unknown-uncertainty", where, f"{w!r} not in W_{t}"))
        if nxt is not CEMETERY and nxt not in model._state_index[t + 1 - g.t0]:
            issues.append(Issue("unknown-next-state", where, f"{nxt!r} not in X_{t + 1}"))
    for i, t in enumerate(g.epochs):
        for x, u, w in itertools.product(
            model.states[i], model.controls[i], model.uncertainties[i]
        ):
            if (t, x, u, w) not in model.dynamics:
                issues.append(Issue("missing-transition", (t, x, u, w)))
    if model.hard_constraints is not None:
        for (t, x), us in model.hard_constraints.items():
            if t not in g.epochs or x not in model._state_index[t - g.t0]:
                issues.append(Issue("unknown-constraint-key", (t, x)))
                continue
            bad = [u for u in us if u not in model._control_index[t - g.t0]]
            if bad:
                issues.append(
                    Issue("unknown-control", (t, x), f"constraint lists {bad!r}")
                )
        for i, t in enumerate(g.epochs):
            for x in model.states[i]:
                if not model.allowed_controls(t, x):
                    issues.append(Issue("empty-admissible-set", (t, x)))
    return ValidationReport(tuple(issues))


def step(model: SystemModel, t: int, x: Label, u: Label, w: Label) -> Label:
    """One transition, with cemetery absorption and hard-constraint exits."""
    g = model.grid
    if t not in g.epochs:
        raise RangeError(f"{t} is not a decision epoch of {g.t0}..{g.T - 1}")
    i = t - g.t0
    if u not in model._control_index[i]:
        raise LabelError(f"control {u!r} not in U_{t}")
    if w not in model._noise_index[i]:
        raise LabelError(f"uncertainty {w!r} not in W_{t}")
    if x is CEMETERY:
        return CEMETERY
    if x not in model._state_index[i]:
        raise LabelError(f"state {x!r} not in X_{t}")
    if model.hard_constraints is not None:
        if u not in model.hard_constraints.get((t, x), ()):
            return CEMETERY
    try:
        return model.dynamics[(t, x, u, w)]
    except KeyError:
        raise ModelError(f"no transition for {(t, x, u, w)!r}") from None
