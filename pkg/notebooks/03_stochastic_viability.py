# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # Maximal probability of staying viable
#
# With independent demand, the best probability of meeting a target solves
# a backward recursion. The target here is only about the final time: hold
# at least 2 units at t=3, anything goes before.

# %%
import numpy as np

from reskit import ConstraintMap, StochasticViability, WhiteNoise, resilient_states
from reskit import stochastic_viability_values
from reskit.fixtures import STOCK3_ACCEPTABLE, stock3

model = stock3()
K = ConstraintMap({0: {0, 1, 2, 3}, 1: {0, 1, 2, 3}, 2: {0, 1, 2, 3}, 3: STOCK3_ACCEPTABLE})

# %%
for q in np.linspace(0.0, 1.0, 5):
    noise = WhiteNoise([{0: 1 - q, 1: q}] * 3)
    p = stochastic_viability_values(model, K, noise)
    print(f"P(demand)={q:.2f}", [round(p[(0, x)], 4) for x in model.states_at(0)], "1-q^3 =", round(1 - q**3, 4))

# %% [markdown]
# From one unit, always adding succeeds unless demand hits every period,
# hence 1 - q^3. An empty stock cannot restock, so it stays at zero.
# Raising the level beta can only shrink the resilient set.

# %%
noise = WhiteNoise([{0: 0.5, 1: 0.5}] * 3)
for beta in (0.0, 0.5, 0.9, 1.0):
    print(beta, sorted(resilient_states(model, StochasticViability(K, noise, beta), 0).states))
