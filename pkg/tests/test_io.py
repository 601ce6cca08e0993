import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from conftest import micro
from reskit import MarkovPolicy, bundle, validate
from reskit import io as rio
from reskit.errors import CrossReferenceError, InputError, SchemaError
from reskit.fixtures import STOCK3_ACCEPTABLE, stock3_noise
from reskit.regimes import ConstraintMap, RobustRecovery, StochasticViability
from reskit.risk import CVaR, RecoveryTimeCost

DATA = Path(__file__).resolve().parent.parent / "data"


def test_fixture_file_round_trips(model):
    loaded = rio.load_model(DATA / "stock3.json")
    assert validate(loaded).ok
    assert rio.dump_model(loaded) == rio.dump_model(model)
    assert loaded.dynamics == model.dynamics


def test_unknown_key_is_named(model):
    doc = rio.dump_model(model)
    doc["bogus"] = 1
    with pytest.raises(SchemaError, match="bogus"):
        rio.parse_model(doc)


def test_unknown_state_in_regime(model):
    with pytest.raises(CrossReferenceError, match="9"):
        rio.parse_regime({"type": "robust_recovery", "constraints": {"states": [9]}}, model)


def test_json_syntax_errors_carry_location(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('{\n "times": {"t0": 0,\n}')
    with pytest.raises(InputError, match=r"m\.json:3:1"):
        rio.load_model(p)


def test_scenario_file_parsing(model):
    assert rio.parse_scenarios("0,0,0\n\n1, 1, 1\n", model) == [(0, 0, 0), (1, 1, 1)]
    with pytest.raises(CrossReferenceError, match="scenarios:1"):
        rio.parse_scenarios("0,0\n", model)
    with pytest.raises(CrossReferenceError):
        rio.parse_scenarios("0,0,7\n", model)


def test_regime_round_trip(model):
    regimes = [
        RobustRecovery(ConstraintMap(STOCK3_ACCEPTABLE, {(0, 2): [1]}), [(0, 0, 0)]),
        StochasticViability(ConstraintMap(STOCK3_ACCEPTABLE), stock3_noise(), 0.25),
    ]
    for regime in regimes:
        doc = json.loads(rio.dumps(rio.dump_regime(regime, model)))
        again = rio.parse_regime(doc, model).regime
        assert rio.dump_regime(again, model) == rio.dump_regime(regime, model)


def test_indicator_document(model):
    doc = rio.read_json(DATA / "indicator.json")
    parsed = rio.parse_regime(doc, model)
    assert isinstance(parsed.indicator.cost, RecoveryTimeCost)
    with pytest.raises(SchemaError, match="CVaR level"):
        rio.parse_risk(
            {"cost": {"type": "indicator_exit", "constraints": {"states": [2]}},
             "measure": {"type": "cvar", "beta": 1.0, "probability": {
                 "type": "weighted", "scenarios": [[[0, 0, 0], 1.0]]}}},
            model,
        )


def test_number_formatting_is_fixed():
    assert rio.format_number(1 / 3) == "0.333333333333"
    assert rio.number_json(float("inf")) == "inf"
    assert rio.dumps({"b": 1, "a": [1, 2]}) == rio.dumps({"a": [1, 2], "b": 1})


def test_bundle_csv(model):
    b = bundle(model, MarkovPolicy.constant(model, 1), 0, 0, [(0, 0, 0)])
    text = rio.bundle_csv(b)
    assert text.splitlines()[0] == "scenario_id,time,state,control"
    assert "0,1,∂,∂" in text.splitlines()


@given(st.integers(0, 2**32 - 1))
def test_random_model_round_trip(seed):
    _, m = micro(seed)
    again = rio.parse_model(json.loads(rio.dumps(rio.dump_model(m))))
    assert again.dynamics == m.dynamics
    assert rio.dump_model(again) == rio.dump_model(m)


@given(st.integers(0, 2**32 - 1))
def test_strategy_round_trip_reproduces_bundles(seed):
    from reskit.solvers import robust_recovery_sets
    from reskit.fixtures import random_subset

    rng, m = micro(seed)
    table = robust_recovery_sets(m, ConstraintMap(random_subset(rng, m.states_at(0))))
    text = rio.dumps(rio.dump_strategy(table.witness, m))
    again = rio.parse_strategy(json.loads(text), m)
    scen = list(m.scenarios())
    for x in m.states_at(0):
        assert list(bundle(m, again, 0, x, scen)) == list(bundle(m, table.witness, 0, x, scen))
