"""Small reference models used by the tests, notebooks and CLI data files."""

from __future__ import annotations

import numpy as np

from .model import CEMETERY, SystemModel

STOCK3_ACCEPTABLE = frozenset({2, 3})


def stock3() -> SystemModel:
    """Stock of 0..3 units: add ``u`` (only if ``u <= x``), lose ``w``.

    Times 0..3, controls {0, 1}, uncertainties {0, 1},
    ``x' = min(3, max(0, x + u - w))``.
    """
    return SystemModel.build(
        0,
        3,
        states=[0, 1, 2, 3],
        controls=[0, 1],
        uncertainties=[0, 1],
        dynamics=lambda t, x, u, w: min(3, max(0, x + u - w)),
        hard_constraints=lambda t, x: [u for u in (0, 1) if u <= x],
    )


def stock3_noise():
    """White noise with ``P(w=1) = 1/2`` at each of the three epochs."""
    from .probability import WhiteNoise

    return WhiteNoise([{0: 0.5, 1: 0.5}] * 3)


def random_micro_model(
    rng: np.random.Generator,
    max_states: int = 4,
    max_controls: int = 2,
    max_noise: int = 2,
    max_horizon: int = 3,
    cemetery_rate: float = 0.1,
    constrained: bool | None = None,
) -> SystemModel:
    """Random tabulated model with integer labels.

    Some transitions jump to the cemetery directly (rate ``cemetery_rate``);
    when ``constrained`` (random if None) every state also gets a nonempty
    random hard-constraint set.
    """
    n_x = int(rng.integers(1, max_states + 1))
    n_u = int(rng.integers(1, max_controls + 1))
    n_w = int(rng.integers(1, max_noise + 1))
    horizon = int(rng.integers(1, max_horizon + 1))
    if constrained is None:
        constrained = bool(rng.integers(0, 2))
    xs, us, ws = list(range(n_x)), list(range(n_u)), list(range(n_w))
    table = {}
    for t in range(horizon):
        for x in xs:
            for u in us:
                for w in ws:
                    if rng.random() < cemetery_rate:
                        table[(t, x, u, w)] = CEMETERY
                    else:
                        table[(t, x, u, w)] = int(rng.integers(0, n_x))
    hard = None
    if constrained:
        hard = {}
        for t in range(horizon):
            for x in xs:
                mask = rng.random(n_u) < 0.6
                mask[int(rng.integers(0, n_u))] = True
                hard[(t, x)] = frozenset(u for u, keep in zip(us, mask) if keep)
    return SystemModel.build(0, horizon, xs, us, ws, table, hard)


def random_subset(rng: np.random.Generator, labels, p: float = 0.6) -> frozenset:
    return frozenset(v for v in labels if rng.random() < p)


def random_white_noise(rng: np.random.Generator, model: SystemModel):
    """Per-epoch random distributions, occasionally with zero-weight atoms."""
    from .probability import WhiteNoise

    dists = []
    for ws in model.uncertainties:
        raw = rng.random(len(ws))
        if len(ws) > 1 and rng.random() < 0.2:
            raw[int(rng.integers(0, len(ws)))] = 0.0
        if raw.sum() == 0:
            raw[0] = 1.0
        raw = raw / raw.sum()
        dists.append({w: float(p) for w, p in zip(ws, raw)})
    return WhiteNoise(dists)
