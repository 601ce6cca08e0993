# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # Recovery time along closed-loop paths

# %%
import numpy as np

from reskit import ConstraintMap, MarkovPolicy, bundle, recovery_time
from reskit.fixtures import STOCK3_ACCEPTABLE, stock3

model = stock3()
K = ConstraintMap(STOCK3_ACCEPTABLE)
always_add = MarkovPolicy.constant(model, 1)

# %%
paths = bundle(model, always_add, 0, 1, list(model.scenarios()))
taus = {s: recovery_time(xs, us, K, 0) for s, xs, us in paths}
for s, tau in taus.items():
    print(s, paths[s][0], tau)

# %% [markdown]
# Starting from one unit, recovery happens at t=1 when the first demand is
# zero. Persistent demand of one unit per period keeps the stock at 1 and
# the path never recovers.

# %%
finite = np.array([tau for tau in taus.values() if np.isfinite(tau)])
print("recovered on", len(finite), "of", len(taus), "scenarios; mean time", finite.mean())
