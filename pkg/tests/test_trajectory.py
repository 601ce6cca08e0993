import pytest
from hypothesis import given, strategies as st

from conftest import micro
from reskit import CEMETERY, MarkovPolicy, bundle, closed_loop, flow
from reskit.errors import RangeError
from reskit.strategies import AdaptedPolicy


def test_flow_examples(model):
    assert flow(model, 0, 3, 1, (1, 1, 0), (0, 0, 0)) == (1, 2, 3, 3)
    # u=1 exceeds the stock at x=0, so the hard constraint kills the path
    assert flow(model, 0, 3, 0, (1, 0, 0), (0, 0, 0)) == (0, CEMETERY, CEMETERY, CEMETERY)


def test_flow_degenerate_segments(model):
    assert flow(model, 2, 2, 1, (), ()) == (1,)
    assert flow(model, 2, 1, 1, (), ()) == ()
    with pytest.raises(RangeError):
        flow(model, 0, 2, 1, (1,), (0, 0))


def test_closed_loop_constant_policy(model):
    pi = MarkovPolicy.constant(model, 1)
    assert closed_loop(model, pi, 0, 3, 1, (1, 1, 1)) == ((1, 1, 1, 1), (1, 1, 1))
    assert closed_loop(model, pi, 0, 3, 1, (0, 0, 0)) == ((1, 2, 3, 3), (1, 1, 1))


def test_closed_loop_records_cemetery_controls(model):
    pi = MarkovPolicy.constant(model, 1)
    states, controls = closed_loop(model, pi, 0, 3, 0, (0, 0, 0))
    assert states == (0, CEMETERY, CEMETERY, CEMETERY)
    assert controls == (1, CEMETERY, CEMETERY)


def test_adapted_policy_reads_prefix(model):
    table = {(0, 2, ()): 1}
    for w in (0, 1):
        for x in model.states_at(1):
            table[(1, x, (w,))] = w
    pi = AdaptedPolicy(table)
    _, us = closed_loop(model, pi, 0, 2, 2, (1, 0, 0))
    assert us == (1, 1)
    _, us = closed_loop(model, pi, 0, 2, 2, (0, 0, 0))
    assert us == (1, 0)


def test_bundle_is_canonical(model):
    pi = MarkovPolicy.constant(model, 0)
    b = bundle(model, pi, 0, 3, [(1, 1, 1), (0, 0, 0), (1, 1, 1)])
    assert list(b.scenarios) == [(0, 0, 0), (1, 1, 1)]
    assert b[(1, 1, 1)] == ((3, 2, 1, 0), (0, 0, 0))
    rows = list(b.rows())
    assert rows[0] == (0, 0, 3, 0) and rows[3] == (0, 3, 3, None)
    with pytest.raises(ValueError):
        bundle(model, pi, 0, 3, [])


def _draw_path(data, m):
    us = [data.draw(st.sampled_from(m.controls_at(t))) for t in m.grid.epochs]
    ws = [data.draw(st.sampled_from(m.uncertainties_at(t))) for t in m.grid.epochs]
    return us, ws


@given(st.integers(0, 2**32 - 1), st.data())
def test_flow_semigroup(seed, data):
    _, m = micro(seed)
    us, ws = _draw_path(data, m)
    T = m.grid.T
    x = data.draw(st.sampled_from(m.states_at(0)))
    mid = data.draw(st.integers(0, T))
    whole = flow(m, 0, T, x, us, ws)
    head = flow(m, 0, mid, x, us[:mid], ws[:mid])
    tail = flow(m, mid, T, head[-1], us[mid:], ws[mid:])
    assert whole == head + tail[1:]


@given(st.integers(0, 2**32 - 1), st.data())
def test_open_loop_equals_closed_loop_replay(seed, data):
    _, m = micro(seed)
    us, ws = _draw_path(data, m)
    x = data.draw(st.sampled_from(m.states_at(0)))
    table = {}
    states = flow(m, 0, m.grid.T, x, us, ws)
    for t in m.grid.epochs:
        for y in m.states_at(t):
            table[(t, y, tuple(ws[:t]))] = us[t]
    xs, _ = closed_loop(m, AdaptedPolicy(table), 0, m.grid.T, x, ws)
    assert xs == states
