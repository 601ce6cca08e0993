"""Finitely supported probability models over scenarios."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

TOL = 1e-12


def _check_weights(weights, what):
    if any(p < 0 or not math.isfinite(p) for p in weights):
        raise ValueError(f"{what}: weights must be finite and nonnegative")
    total = math.fsum(weights)
    if abs(total - 1.0) > TOL:
        raise ValueError(f"{what}: weights sum to {total!r}, not 1")


@dataclass(frozen=True)
class WhiteNoise:
    """Independent per-epoch distributions; ``distributions[k]`` is for epoch ``t0 + k``."""

    distributions: tuple

    def __init__(self, distributions: Sequence[Mapping]):
        dists = tuple(tuple(dict(d).items()) for d in distributions)
        for k, d in enumerate(dists):
            _check_weights([p for _, p in d], f"epoch {k}")
        object.__setattr__(self, "distributions", dists)

    def weight(self, scenario) -> float:
        if len(scenario) != len(self.distributions):
            raise ValueError("scenario length does not match the noise horizon")
        p = 1.0
        for w, dist in zip(scenario, self.distributions):
            p *= dict(dist).get(w, 0.0)
        return p

    def weighted_scenarios(self) -> list:
        """``(scenario, weight)`` for every positive-weight scenario."""
        atoms = [[(w, p) for w, p in d if p > 0] for d in self.distributions]
        out = []
        for combo in itertools.product(*atoms):
            out.append((tuple(w for w, _ in combo), math.prod(p for _, p in combo)))
        return out

    def support(self) -> list:
        return [s for s, _ in self.weighted_scenarios()]


@dataclass(frozen=True)
class WeightedScenarios:
    """Explicit scenario weights, allowing arbitrary dependence across epochs."""

    weights: tuple

    def __init__(self, weights: Mapping):
        items = tuple((tuple(s), float(p)) for s, p in dict(weights).items())
        _check_weights([p for _, p in items], "scenario weights")
        object.__setattr__(self, "weights", items)

    def weight(self, scenario) -> float:
        return dict(self.weights).get(tuple(scenario), 0.0)

    def weighted_scenarios(self) -> list:
        return [(s, p) for s, p in self.weights if p > 0]

    def support(self) -> list:
        return [s for s, _ in self.weighted_scenarios()]


ProbabilityModel = WhiteNoise | WeightedScenarios


@dataclass(frozen=True)
class AmbiguitySet:
    """A finite family of probability models (disagreeing beliefs)."""

    models: tuple

    def __init__(self, models):
        models = tuple(models)
        if not models:
            raise ValueError("ambiguity set must be nonempty")
        object.__setattr__(self, "models", models)

    def __iter__(self):
        return iter(self.models)
