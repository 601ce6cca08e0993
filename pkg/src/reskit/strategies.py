"""Markovian and adapted policy tables, admissibility, and enumeration.

An adapted policy decides at epoch ``t`` from the current state and the
uncertainty prefix ``(w_t0, ..., w_{t-1})``; keys are checked at
construction so a table can never peek at current or future uncertainties.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterator, Mapping

from .errors import EnumerationTooLarge, RangeError, StrategyDomainError
from .model import CEMETERY, Label, SystemModel, step

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    """Enumeration budget, overridable through ``RESKIT_BUDGET``."""
    raw = os.environ.get("RESKIT_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class MarkovPolicy:
    """State feedback: ``table[(t, x)] = u``."""

    table: Mapping

    def __post_init__(self):
        object.__setattr__(self, "table", MappingProxyType(dict(self.table)))

    @classmethod
    def constant(cls, model: SystemModel, u: Label, start: int | None = None):
        """Play ``u`` in every state at every epoch from ``start`` on."""
        start = model.grid.t0 if start is None else start
        return cls(
            {(t, x): u for t in range(start, model.grid.T) for x in model.states_at(t)}
        )

    def control(self, t: int, x: Label, prefix=()) -> Label:
        try:
            return self.table[(t, x)]
        except KeyError:
            raise StrategyDomainError(f"Markov policy undefined at t={t}, x={x!r}") from None

    @property
    def window(self) -> tuple | None:
        if not self.table:
            return None
        ts = [t for t, _ in self.table]
        return min(ts), max(ts) + 1


@dataclass(frozen=True)
class AdaptedPolicy:
    """Scenario-prefix feedback: ``table[(t, x, prefix)] = u``.

    ``prefix`` holds the uncertainties of epochs ``t0..t-1``, so its length
    must be ``t - t0``.
    """

    table: Mapping
    t0: int = 0

    def __post_init__(self):
        table = {}
        for (t, x, prefix), u in dict(self.table).items():
            prefix = tuple(prefix)
            if len(prefix) != t - self.t0:
                raise RangeError(
                    f"prefix {prefix!r} at t={t} must have length {t - self.t0}"
                )
            table[(t, x, prefix)] = u
        object.__setattr__(self, "table", MappingProxyType(table))

    def control(self, t: int, x: Label, prefix=()) -> Label:
        prefix = tuple(prefix)
        if len(prefix) != t - self.t0:
            raise RangeError(f"prefix at t={t} must have length {t - self.t0}")
        try:
            return self.table[(t, x, prefix)]
        except KeyError:
            raise StrategyDomainError(
                f"adapted policy undefined at t={t}, x={x!r}, prefix={prefix!r}"
            ) from None

    @property
    def window(self) -> tuple | None:
        if not self.table:
            return None
        ts = [t for t, _, _ in self.table]
        return min(ts), max(ts) + 1


Strategy = MarkovPolicy | AdaptedPolicy


def evaluate_policy(strategy: Strategy, t: int, x: Label, prefix=()) -> Label:
    """Control chosen at epoch ``t`` in state ``x`` after uncertainties ``prefix``."""
    return strategy.control(t, x, prefix)


def to_adapted(policy: MarkovPolicy, model: SystemModel) -> AdaptedPolicy:
    """Embed a Markov policy as an adapted table over every prefix."""
    t0 = model.grid.t0
    table = {}
    for (t, x), u in policy.table.items():
        for prefix in itertools.product(*model.uncertainties[: t - t0]):
            table[(t, x, prefix)] = u
    return AdaptedPolicy(table, t0)


def to_markov(policy: AdaptedPolicy) -> MarkovPolicy:
    """Inverse of :func:`to_adapted`; fails if decisions depend on the prefix."""
    table = {}
    for (t, x, _), u in policy.table.items():
        if table.setdefault((t, x), u) != u:
            raise ValueError(f"policy depends on the uncertainty prefix at t={t}, x={x!r}")
    return MarkovPolicy(table)


def _control_checker(constraints) -> Callable:
    if constraints is None:
        return lambda t, x, u: True
    if hasattr(constraints, "control_ok"):
        return constraints.control_ok
    if callable(constraints):
        return lambda t, x, u: u in constraints(t, x)
    return lambda t, x, u: (t, x) not in constraints or u in constraints[(t, x)]


def check_admissible(strategy: Strategy, model: SystemModel, constraints=None) -> list:
    """Every ``(t, x, prefix)`` whose control leaves the constraint set.

    ``constraints`` may be a ``{(t, x): allowed}`` mapping (missing keys
    allow everything), a callable ``(t, x) -> allowed``, or an object with a
    ``control_ok(t, x, u)`` method. Controls outside ``U_t`` are always
    violations. Markov entries report ``prefix=None``.
    """
    ok = _control_checker(constraints)
    out = []
    for key, u in strategy.table.items():
        if isinstance(strategy, MarkovPolicy):
            (t, x), prefix = key, None
        else:
            t, x, prefix = key
        if u not in model.controls_at(t) or not ok(t, x, u):
            out.append((t, x, prefix))
    return out


def _markov_slots(model, window, restrict_to):
    start, end = window if window is not None else (model.grid.t0, model.grid.T)
    slots = []
    for t in range(start, end):
        states = model.states_at(t)
        if restrict_to is not None:
            keep = set(restrict_to.get(t, ()))
            states = [x for x in states if x in keep]
        for x in states:
            slots.append(((t, x), model.allowed_controls(t, x)))
    return slots


def count_markov(model: SystemModel, window=None, restrict_to=None) -> int:
    return math.prod(len(c) for _, c in _markov_slots(model, window, restrict_to))


def enumerate_markov(
    model: SystemModel,
    window: tuple | None = None,
    restrict_to: Mapping | None = None,
    budget: int | None = None,
) -> Iterator[MarkovPolicy]:
    """Every Markov policy on epochs ``window = (start, end)``, lexicographically.

    Choices per ``(t, x)`` are the hard-constraint-allowed controls in label
    order; ``restrict_to`` limits the states per epoch. Raises
    :class:`EnumerationTooLarge` up front when the count exceeds ``budget``.
    """
    slots = _markov_slots(model, window, restrict_to)
    budget = default_budget() if budget is None else budget
    count = math.prod(len(c) for _, c in slots)
    if count > budget:
        raise EnumerationTooLarge(count, budget)
    keys = [k for k, _ in slots]
    return (
        MarkovPolicy(dict(zip(keys, combo)))
        for combo in itertools.product(*(c for _, c in slots))
    )


def _prefix_tree(scenarios, t0: int, t: int) -> dict:
    """Children of each ``(r, prefix)`` node of the scenario tree from ``t`` on."""
    children: dict = {}
    for s in scenarios:
        for r in range(t, t0 + len(s)):
            node = (r, tuple(s[: r - t0]))
            kids = children.setdefault(node, [])
            w = s[r - t0]
            if w not in kids:
                kids.append(w)
    return children


def _tree_roots(scenarios, t0, t):
    roots = []
    for s in scenarios:
        p = tuple(s[: t - t0])
        if p not in roots:
            roots.append(p)
    return roots


def count_adapted(model: SystemModel, t: int, x: Label, scenarios) -> int:
    """Number of distinct scenario-tree policies from ``(t, x)`` over ``scenarios``."""
    t0, T = model.grid.t0, model.grid.T
    scenarios = model.sort_scenarios(scenarios)
    children = _prefix_tree(scenarios, t0, t)
    memo: dict = {}

    def count(r, prefix, state):
        if r == T or state is CEMETERY:
            return 1
        key = (r, prefix, state)
        if key not in memo:
            memo[key] = sum(
                math.prod(
                    count(r + 1, prefix + (w,), step(model, r, state, u, w))
                    for w in children[(r, prefix)]
                )
                for u in model.allowed_controls(r, state)
            )
        return memo[key]

    return math.prod(count(t, p, x) for p in _tree_roots(scenarios, t0, t))


def enumerate_adapted(
    model: SystemModel, t: int, x: Label, scenarios, budget: int | None = None
) -> Iterator[AdaptedPolicy]:
    """Every scenario-tree policy from ``(t, x)``: one choice per reachable node.

    Nodes are ``(r, state, prefix)`` reached along ``scenarios``; the
    enumeration is exhaustive over behaviours on those scenarios and gated
    by ``budget`` using the exact count.
    """
    budget = default_budget() if budget is None else budget
    count = count_adapted(model, t, x, scenarios)
    if count > budget:
        raise EnumerationTooLarge(count, budget)
    t0, T = model.grid.t0, model.grid.T
    scenarios = model.sort_scenarios(scenarios)
    children = _prefix_tree(scenarios, t0, t)

    def subtree(r, prefix, state):
        if r == T or state is CEMETERY:
            yield {}
            return
        for u in model.allowed_controls(r, state):
            branches = [
                list(subtree(r + 1, prefix + (w,), step(model, r, state, u, w)))
                for w in children[(r, prefix)]
            ]
            for combo in itertools.product(*branches):
                table = {(r, state, prefix): u}
                for part in combo:
                    table.update(part)
                yield table

    roots = [list(subtree(t, p, x)) for p in _tree_roots(scenarios, t0, t)]
    for combo in itertools.product(*roots):
        table = {}
        for part in combo:
            table.update(part)
        yield AdaptedPolicy(table, t0)
