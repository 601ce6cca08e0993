# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # "Rest at least once" is not a time-by-time constraint
#
# Requiring that every path plays control 0 at some point is a property of
# whole paths. Two bundles can occupy exactly the same (time, state,
# control) triples while only one of them satisfies it.

# %%
from reskit import ControlPredicate, bundle, counter_extension, regime_membership
from reskit import resilient_states
from reskit.fixtures import stock3
from reskit.strategies import AdaptedPolicy

model = stock3()
w1, w2 = (0, 0, 0), (1, 0, 0)


def adapted(c1, c2):
    table = {(0, 3, ()): c1[0]}
    for k in (1, 2):
        table[(k, 3, w1[:k])] = c1[k]
        table[(k, 3, w2[:k])] = c2[k]
    return bundle(model, AdaptedPolicy(table), 0, 3, [w1, w2])


a = adapted((1, 0, 1), (1, 1, 0))
b = adapted((1, 0, 0), (1, 1, 1))
for name, bb in (("A", a), ("B", b)):
    print(name, [us for _, _, us in bb])

# %%
triples = lambda bb: sorted({(k, xs[k], us[k]) for _, xs, us in bb for k in range(len(us))})
print(triples(a) == triples(b))
regime = ControlPredicate.exists_control(0, [w1, w2])
print(regime_membership(regime, a), regime_membership(regime, b))

# %% [markdown]
# Adding a counter to the state turns the requirement into a final-time
# state constraint, which dynamic programming handles.

# %%
ext, ext_regime, embed = counter_extension(model, 0)
via_counter = {x for x in model.states_at(0) if embed(x) in resilient_states(ext, ext_regime, 0).states}
direct = resilient_states(model, ControlPredicate.exists_control(0), 0).states
print(sorted(via_counter), sorted(direct))
