"""Open-loop flow, closed-loop flow and scenario-indexed path bundles.

States run over times ``s..t`` and controls over epochs ``s..t-1``. Flow
arguments are aligned on the segment; closed-loop scenarios are full
scenarios starting at ``t0`` so adapted policies can read their prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import RangeError
from .model import CEMETERY, Label, SystemModel, step
from .strategies import Strategy


def _check_times(model: SystemModel, s: int, t: int):
    times = model.grid.times
    if s not in times or t not in times:
        raise RangeError(f"segment {s}..{t} outside the grid {times.start}..{times.stop - 1}")


def flow(
    model: SystemModel,
    s: int,
    t: int,
    x_s: Label,
    controls: Sequence[Label],
    uncertainties: Sequence[Label],
) -> tuple:
    """State path ``x_s..x_t`` under open-loop ``controls`` and ``uncertainties``.

    Both sequences cover epochs ``s..t-1``. Returns ``()`` when ``s > t``.
    """
    if s > t:
        return ()
    _check_times(model, s, t)
    if len(controls) != t - s or len(uncertainties) != t - s:
        raise RangeError(
            f"segment {s}..{t} needs {t - s} controls and uncertainties, "
            f"got {len(controls)} and {len(uncertainties)}"
        )
    path = [x_s]
    x = x_s
    for r, u, w in zip(range(s, t), controls, uncertainties):
        x = step(model, r, x, u, w)
        path.append(x)
    return tuple(path)


def closed_loop(
    model: SystemModel,
    strategy: Strategy,
    s: int,
    t: int,
    x_s: Label,
    scenario: Sequence[Label],
) -> tuple:
    """``(states, controls)`` produced by ``strategy`` from ``x_s`` at time ``s``.

    ``scenario`` starts at ``t0`` and must cover epochs up to ``t-1``. Once
    the state reaches the cemetery no policy is consulted and the recorded
    controls are :data:`CEMETERY` as well. In discrete time the closed loop
    has exactly one solution, so nothing needs checking.
    """
    if s > t:
        return (), ()
    _check_times(model, s, t)
    t0 = model.grid.t0
    scenario = tuple(scenario)
    if len(scenario) < t - t0:
        raise RangeError(f"scenario of length {len(scenario)} does not reach epoch {t - 1}")
    states, controls = [x_s], []
    x = x_s
    for r in range(s, t):
        if x is CEMETERY:
            controls.append(CEMETERY)
            states.append(CEMETERY)
            continue
        u = strategy.control(r, x, scenario[: r - t0])
        x = step(model, r, x, u, scenario[r - t0])
        controls.append(u)
        states.append(x)
    return tuple(states), tuple(controls)


@dataclass(frozen=True)
class PathBundle:
    """Closed-loop paths from a common ``(start, initial)``, one per scenario."""

    start: int
    initial: Label
    paths: tuple  # ((scenario, states, controls), ...) in canonical order

    def __len__(self):
        return len(self.paths)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.paths)

    def __contains__(self, scenario) -> bool:
        return tuple(scenario) in self._index

    def __getitem__(self, scenario) -> tuple:
        _, states, controls = self.paths[self._index[tuple(scenario)]]
        return states, controls

    @cached_property
    def _index(self) -> dict:
        return {s: i for i, (s, _, _) in enumerate(self.paths)}

    @property
    def scenarios(self) -> list:
        return [s for s, _, _ in self.paths]

    def rows(self) -> Iterator[tuple]:
        """``(scenario_id, time, state, control)`` rows; no control at the final time."""
        for i, (_, states, controls) in enumerate(self.paths):
            for k, x in enumerate(states):
                u = controls[k] if k < len(controls) else None
                yield i, self.start + k, x, u


def bundle(
    model: SystemModel,
    strategy: Strategy,
    t: int,
    x: Label,
    scenarios: Iterable[Sequence[Label]],
) -> PathBundle:
    """Closed-loop paths from ``(t, x)`` to ``T`` for each scenario, in lexicographic order."""
    scenarios = [tuple(sc) for sc in scenarios]
    if not scenarios:
        raise ValueError("a bundle needs at least one scenario")
    for sc in scenarios:
        model.check_scenario(sc)
    T = model.grid.T
    paths = []
    for sc in model.sort_scenarios(scenarios):
        states, controls = closed_loop(model, strategy, t, T, x, sc)
        paths.append((sc, states, controls))
    return PathBundle(t, x, tuple(paths))
