# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # Viability kernels and recovery sets
#
# A stock of 0..3 units. Each period we may add one unit (only if we
# already hold at least one), and demand removes 0 or 1 units. We want at
# least 2 units on hand.

# %%
from reskit import ConstraintMap, robust_recovery_sets, robust_viability_kernel
from reskit.fixtures import STOCK3_ACCEPTABLE, stock3

model = stock3()
K = ConstraintMap(STOCK3_ACCEPTABLE)

# %%
kernel = robust_viability_kernel(model, K)
recovery = robust_recovery_sets(model, K)
for t in model.grid.times:
    print(t, sorted(kernel[t]), sorted(recovery[t]))

# %% [markdown]
# Against every demand sequence, only states already in {2, 3} are safe,
# and nothing outside can be guaranteed to recover: demand can always match
# the single unit we add.
#
# If demand is known to be zero, the recovery set grows.

# %%
calm = robust_recovery_sets(model, K, [(0,), (0,), (0,)])
for t in model.grid.times:
    print(t, sorted(calm[t]), "delays:", {x: calm.delays[(t, x)] for x in sorted(calm[t])})

# %%
print(kernel.witness.table[(0, 2)], kernel.witness.table[(0, 3)])
