# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # Risk of recovery delays and resilience indicators

# %%
import numpy as np

from reskit import (
    CVaR,
    ConstraintMap,
    DiscreteRandomVariable,
    Expectation,
    ExtendedRiskSpec,
    RecoveryTimeCost,
    RobustRecovery,
    WhiteNoise,
    WorstCase,
    resilience_indicator,
    risk,
)
from reskit.fixtures import STOCK3_ACCEPTABLE, stock3

# %% [markdown]
# CVaR interpolates between the mean and the worst case.

# %%
z = DiscreteRandomVariable([0.0, 1.0, 4.0], [0.5, 0.3, 0.2])
for beta in np.linspace(0.0, 0.9, 4):
    print(f"beta={beta:.1f}  CVaR={risk(CVaR(float(beta)), z):.4f}")
print("worst case", risk(WorstCase(), z))

# %% [markdown]
# The indicator minimises the risk of the recovery delay over the strategies
# that recover on the scenarios we insist on. Here we require recovery only
# when the first demand is zero.

# %%
model = stock3()
K = ConstraintMap(STOCK3_ACCEPTABLE)
required = [(0, w1, w2) for w1 in (0, 1) for w2 in (0, 1)]
noise = WhiteNoise([{0: 0.7, 1: 0.3}] * 3)
regime = RobustRecovery(K, required)
for measure in (Expectation(noise), CVaR(0.8, noise), WorstCase()):
    spec = ExtendedRiskSpec(RecoveryTimeCost(K), measure)
    result = resilience_indicator(model, regime, spec, 0, 1)
    print(type(measure).__name__, round(result.value, 6), "strategies evaluated:", result.evaluated)
