import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import micro
from reskit import (
    AdaptedPolicy,
    MarkovPolicy,
    bundle,
    check_admissible,
    count_adapted,
    count_markov,
    enumerate_adapted,
    enumerate_markov,
)
from reskit.errors import EnumerationTooLarge, StrategyDomainError
from reskit.strategies import default_budget, to_adapted, to_markov


def test_markov_count_on_stock3(model):
    # x=0 admits only u=0; the other three states admit two controls, over 3 epochs
    assert count_markov(model) == 2 ** 9 == 512
    assert sum(1 for _ in enumerate_markov(model)) == 512


def test_adapted_count_matches_enumeration(model):
    scen = list(model.scenarios())
    n = count_adapted(model, 0, 2, scen)
    assert n == 112
    assert sum(1 for _ in enumerate_adapted(model, 0, 2, scen)) == n


def test_budget_is_enforced_up_front(model):
    with pytest.raises(EnumerationTooLarge):
        enumerate_markov(model, budget=100)
    with pytest.raises(EnumerationTooLarge):
        list(enumerate_adapted(model, 0, 2, list(model.scenarios()), budget=10))


def test_budget_environment_override(monkeypatch):
    monkeypatch.setenv("RESKIT_BUDGET", "42")
    assert default_budget() == 42


def test_markov_policy_domain_error(model):
    pi = MarkovPolicy({(0, 1): 1})
    assert pi.control(0, 1, (0, 1)) == 1
    with pytest.raises(StrategyDomainError):
        pi.control(1, 1)


def test_adapted_policy_checks_prefix_lengths():
    with pytest.raises(ValueError):
        AdaptedPolicy({(1, 0, ()): 0})


def test_admissibility_reports_violations(model):
    pi = MarkovPolicy.constant(model, 1)
    bad = check_admissible(pi, model, model.allowed_controls)
    assert bad == [(t, 0, None) for t in range(3)]
    assert check_admissible(pi, model, {(0, 2): [0]}) == [(0, 2, None)]


def test_markov_round_trip(model):
    pi = MarkovPolicy.constant(model, 0)
    assert to_markov(to_adapted(pi, model)).table == pi.table
    with pytest.raises(ValueError):
        to_markov(AdaptedPolicy({(0, 1, ()): 0, (1, 1, (0,)): 0, (1, 1, (1,)): 1}))


@given(st.integers(0, 2**32 - 1))
def test_adapted_enumeration_is_exhaustive_over_behaviours(seed):
    _, m = micro(seed, max_states=3, max_horizon=2)
    scen = list(m.scenarios())
    x = m.states_at(0)[0]
    seen = set()
    for pi in enumerate_adapted(m, 0, x, scen):
        b = bundle(m, pi, 0, x, scen)
        seen.add(tuple(b[s] for s in scen))
    # every Markov policy's behaviour must appear among the adapted ones
    for pi in enumerate_markov(m):
        b = bundle(m, pi, 0, x, scen)
        assert tuple(b[s] for s in scen) in seen
    assert len(seen) == count_adapted(m, 0, x, scen)


@given(st.integers(0, 2**32 - 1))
def test_markov_count_is_product_of_choices(seed):
    _, m = micro(seed, max_states=3, max_horizon=2)
    expected = 1
    for t in m.grid.epochs:
        for x in m.states_at(t):
            expected *= len(m.allowed_controls(t, x))
    assert count_markov(m) == expected
    assert len({tuple(sorted(p.table.items())) for p in enumerate_markov(m)}) == expected
