"""JSON model, regime, risk and policy documents; scenario and CSV files.

Labels are JSON scalars; JSON arrays used as labels become tuples and
``null`` stands for the cemetery state wherever a state may be one.
Schema errors name the offending field; syntax errors carry line and column.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import CrossReferenceError, InputError, SchemaError
from .model import CEMETERY, SystemModel, validate
from .probability import AmbiguitySet, WeightedScenarios, WhiteNoise
from .regimes import (
    Bounded,
    ConstraintMap,
    ControlPredicate,
    DeterministicViability,
    ExistsControl,
    ExitCountLimit,
    ExitProbability,
    RiskBound,
    RobustRecovery,
    StochasticViability,
)
from .risk import (
    CVaR,
    ExitCountCost,
    Expectation,
    ExtendedRiskSpec,
    IndicatorExit,
    RecoveryTimeCost,
    TableCost,
    AmbiguitySup,
    WorstCase,
)
from .strategies import AdaptedPolicy, MarkovPolicy

# generic helpers -------------------------------------------------------------


def read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _label(v):
    if isinstance(v, list):
        return tuple(_label(i) for i in v)
    if isinstance(v, (dict, float)) or v is None:
        raise SchemaError(f"invalid label {v!r}")
    return v


def _state(v):
    return CEMETERY if v is None else _label(v)


def label_json(v):
    if v is CEMETERY:
        return None
    if isinstance(v, tuple):
        return [label_json(i) for i in v]
    return v


def number_json(v):
    """Numbers rounded to 12 significant digits; infinities as strings."""
    if isinstance(v, bool) or isinstance(v, int):
        return v
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return float(f"{v:.12g}")


def format_number(v) -> str:
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.12g}"


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _keys(doc, allowed, where, required=()):
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise SchemaError(f"{where}: unknown key {unknown[0]!r}")
    for key in required:
        if key not in doc:
            raise SchemaError(f"{where}: missing key {key!r}")


def _list(doc, where):
    if not isinstance(doc, list):
        raise SchemaError(f"{where}: expected a list")
    return doc


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{where}: expected an integer")
    return v


def _real(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{where}: expected a number")
    return float(v)


# model ------------------------------------------------------------------------

_MODEL_KEYS = ("times", "states", "controls", "uncertainties", "dynamics", "hard_constraints")


def _label_sets(doc, where):
    if isinstance(doc, dict):
        out = {}
        for key, labels in doc.items():
            try:
                t = int(key)
            except ValueError:
                raise SchemaError(f"{where}: time key {key!r} is not an integer") from None
            out[t] = [_label(v) for v in _list(labels, f"{where}[{key}]")]
        return out
    return [_label(v) for v in _list(doc, where)]


def parse_model(doc) -> SystemModel:
    _keys(doc, _MODEL_KEYS, "model", _MODEL_KEYS[:5])
    _keys(doc["times"], ("t0", "T"), "model.times", ("t0", "T"))
    t0 = _int(doc["times"]["t0"], "model.times.t0")
    T = _int(doc["times"]["T"], "model.times.T")
    sets = {
        name: _label_sets(doc[name], f"model.{name}")
        for name in ("states", "controls", "uncertainties")
    }
    table = {}
    for i, rec in enumerate(_list(doc["dynamics"], "model.dynamics")):
        where = f"model.dynamics[{i}]"
        if not isinstance(rec, list) or len(rec) != 5:
            raise SchemaError(f"{where}: expected [t, x, u, w, x_next]")
        t, x, u, w, nxt = rec
        key = (_int(t, where), _label(x), _label(u), _label(w))
        if key in table:
            raise SchemaError(f"{where}: duplicate transition {key!r}")
        table[key] = _state(nxt)
    hard = None
    if "hard_constraints" in doc:
        hard = {}
        for i, rec in enumerate(_list(doc["hard_constraints"], "model.hard_constraints")):
            where = f"model.hard_constraints[{i}]"
            if not isinstance(rec, list) or len(rec) != 3:
                raise SchemaError(f"{where}: expected [t, x, [u, ...]]")
            t, x, us = rec
            hard[(_int(t, where), _label(x))] = [_label(u) for u in _list(us, where)]
    try:
        return SystemModel.build(
            t0, T, sets["states"], sets["controls"], sets["uncertainties"], table, hard
        )
    except InputError:
        raise
    except Exception as exc:
        raise SchemaError(f"model: {exc}") from None


def dump_model(model: SystemModel) -> dict:
    g = model.grid

    def sets(values, times):
        if all(v == values[0] for v in values):
            return [label_json(x) for x in values[0]]
        return {str(t): [label_json(x) for x in v] for t, v in zip(times, values)}

    doc = {
        "times": {"t0": g.t0, "T": g.T},
        "states": sets(model.states, g.times),
        "controls": sets(model.controls, g.epochs),
        "uncertainties": sets(model.uncertainties, g.epochs),
        "dynamics": [],
    }
    for i, t in enumerate(g.epochs):
        for x in model.states[i]:
            for u in model.controls[i]:
                for w in model.uncertainties[i]:
                    if (t, x, u, w) in model.dynamics:
                        nxt = model.dynamics[(t, x, u, w)]
                        doc["dynamics"].append(
                            [t, label_json(x), label_json(u), label_json(w), label_json(nxt)]
                        )
    if model.hard_constraints is not None:
        doc["hard_constraints"] = [
            [t, label_json(x), [label_json(u) for u in model.allowed_controls(t, x)]]
            for i, t in enumerate(g.epochs)
            for x in model.states[i]
            if (t, x) in model.hard_constraints
        ]
    return doc


def load_model(path, check: bool = True) -> SystemModel:
    """Read a model file; with ``check`` the model must also validate cleanly."""
    model = parse_model(read_json(path))
    if check:
        report = validate(model)
        if not report.ok:
            raise SchemaError(f"{path}: invalid model: {report.issues[0]}")
    return model


# cross-referenced pieces ------------------------------------------------------


class _Ctx:
    def __init__(self, model: SystemModel, base: Path | None):
        self.model = model
        self.base = base

    def state(self, t, x, where):
        if t not in self.model.grid.times:
            raise CrossReferenceError(f"{where}: time {t} outside the model grid")
        if x not in self.model.states_at(t):
            raise CrossReferenceError(f"{where}: unknown state label {x!r} at t={t}")

    def control(self, t, u, where):
        if t not in self.model.grid.epochs:
            raise CrossReferenceError(f"{where}: {t} is not a decision epoch")
        if u not in self.model.controls_at(t):
            raise CrossReferenceError(f"{where}: unknown control label {u!r} at t={t}")

    def scenario(self, s, where):
        s = tuple(_label(w) for w in _list(s, where))
        if len(s) != self.model.grid.horizon:
            raise CrossReferenceError(f"{where}: scenario length {len(s)} != horizon")
        for k, w in enumerate(s):
            t = self.model.grid.t0 + k
            if w not in self.model.uncertainties_at(t):
                raise CrossReferenceError(f"{where}: unknown uncertainty {w!r} at t={t}")
        return s


def _parse_constraints(doc, ctx: _Ctx, where) -> ConstraintMap:
    _keys(doc, ("states", "controls"), where, ("states",))
    states = doc["states"]
    if isinstance(states, dict):
        per_t = {}
        for key, labels in states.items():
            t = int(key)
            per_t[t] = [_label(x) for x in _list(labels, f"{where}.states[{key}]")]
            for x in per_t[t]:
                ctx.state(t, x, f"{where}.states")
        states = per_t
    else:
        states = [_label(x) for x in _list(states, f"{where}.states")]
        known = {x for t in ctx.model.grid.times for x in ctx.model.states_at(t)}
        for x in states:
            if x not in known:
                raise CrossReferenceError(f"{where}.states: unknown state label {x!r}")
    controls = None
    if "controls" in doc:
        controls = {}
        for i, rec in enumerate(_list(doc["controls"], f"{where}.controls")):
            w = f"{where}.controls[{i}]"
            if not isinstance(rec, list) or len(rec) != 3:
                raise SchemaError(f"{w}: expected [t, x, [u, ...]]")
            t, x, us = _int(rec[0], w), _label(rec[1]), [_label(u) for u in _list(rec[2], w)]
            ctx.state(t, x, w)
            for u in us:
                ctx.control(t, u, w)
            controls[(t, x)] = us
    return ConstraintMap(states, controls)


def _dump_constraints(c: ConstraintMap, model: SystemModel) -> dict:
    if isinstance(c.states, frozenset):
        known = [x for x in dict.fromkeys(x for xs in model.states for x in xs)]
        states = [label_json(x) for x in known if x in c.states]
    else:
        states = {
            str(t): [label_json(x) for x in model.sort_states(t, v)]
            for t, v in sorted(c.states.items())
        }
    doc = {"states": states}
    if c.controls is not None:
        recs = []
        for t in model.grid.epochs:
            for x in model.states_at(t):
                allowed = (
                    c.controls(t, x) if callable(c.controls) else c.controls.get((t, x))
                )
                if allowed is not None:
                    us = [u for u in model.controls_at(t) if u in set(allowed)]
                    recs.append([t, label_json(x), [label_json(u) for u in us]])
        doc["controls"] = recs
    return doc


def _scenarios_field(doc, ctx, where):
    if doc is None or doc == "all":
        return None
    return [ctx.scenario(s, f"{where}[{i}]") for i, s in enumerate(_list(doc, where))]


def _parse_probability(doc, ctx: _Ctx, where):
    if isinstance(doc, str):
        path = Path(doc) if ctx.base is None else ctx.base / doc
        return _parse_probability(read_json(path), ctx, str(path))
    _keys(doc, ("type", "distributions", "scenarios"), where, ("type",))
    try:
        if doc["type"] == "white_noise":
            dists = []
            for k, d in enumerate(_list(doc.get("distributions"), f"{where}.distributions")):
                t = ctx.model.grid.t0 + k
                pairs = {}
                for pair in _list(d, f"{where}.distributions[{k}]"):
                    w = _label(pair[0])
                    if t not in ctx.model.grid.epochs or w not in ctx.model.uncertainties_at(t):
                        raise CrossReferenceError(f"{where}: unknown uncertainty {w!r} at t={t}")
                    pairs[w] = _real(pair[1], where)
                dists.append(pairs)
            if len(dists) != ctx.model.grid.horizon:
                raise CrossReferenceError(f"{where}: need one distribution per epoch")
            return WhiteNoise(dists)
        if doc["type"] == "weighted":
            weights = {}
            for i, pair in enumerate(_list(doc.get("scenarios"), f"{where}.scenarios")):
                weights[ctx.scenario(pair[0], f"{where}.scenarios[{i}]")] = _real(pair[1], where)
            return WeightedScenarios(weights)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}: unknown probability type {doc['type']!r}")


def _dump_probability(p) -> dict:
    if isinstance(p, WhiteNoise):
        return {
            "type": "white_noise",
            "distributions": [[[label_json(w), q] for w, q in d] for d in p.distributions],
        }
    return {
        "type": "weighted",
        "scenarios": [[[label_json(w) for w in s], q] for s, q in p.weights],
    }


def _parse_measure(doc, ctx, where, nested=False):
    _keys(doc, ("type", "probability", "scenarios", "beta", "models", "inner"), where, ("type",))
    kind = doc["type"]
    prob = None
    if "probability" in doc:
        prob = _parse_probability(doc["probability"], ctx, f"{where}.probability")
    if kind == "expectation":
        return Expectation(prob)
    if kind == "worst_case":
        return WorstCase(_scenarios_field(doc.get("scenarios"), ctx, f"{where}.scenarios"))
    if kind == "cvar":
        try:
            return CVaR(_real(doc.get("beta"), f"{where}.beta"), prob)
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    if kind == "ambiguity" and not nested:
        models = [
            _parse_probability(m, ctx, f"{where}.models[{i}]")
            for i, m in enumerate(_list(doc.get("models"), f"{where}.models"))
        ]
        inner = _parse_measure(doc.get("inner"), ctx, f"{where}.inner", nested=True)
        return AmbiguitySup(AmbiguitySet(models), inner)
    raise SchemaError(f"{where}: unknown risk measure {kind!r}")


def _parse_cost(doc, ctx, where):
    _keys(
        doc,
        ("type", "constraints", "sentinel", "stage", "final", "default", "cemetery_cost"),
        where,
        ("type",),
    )
    kind = doc["type"]
    if kind in ("indicator_exit", "exit_count", "recovery_time"):
        c = _parse_constraints(doc.get("constraints"), ctx, f"{where}.constraints")
        if kind == "indicator_exit":
            return IndicatorExit(c)
        if kind == "exit_count":
            return ExitCountCost(c)
        sentinel = doc.get("sentinel")
        return RecoveryTimeCost(c, None if sentinel is None else _real(sentinel, where))
    if kind == "table":
        stage = {}
        for i, rec in enumerate(_list(doc.get("stage", []), f"{where}.stage")):
            t, x, u, v = rec
            stage[(t, _label(x), _label(u))] = _real(v, f"{where}.stage[{i}]")
        final = {_label(x): _real(v, f"{where}.final") for x, v in doc.get("final", [])}
        default = doc.get("default")
        return TableCost(
            stage,
            final,
            None if default is None else _real(default, where),
            _real(doc.get("cemetery_cost", 0.0), where),
        )
    raise SchemaError(f"{where}: unknown cost type {kind!r}")


def parse_risk(doc, model: SystemModel, base=None, where="risk") -> ExtendedRiskSpec:
    ctx = _Ctx(model, base)
    _keys(doc, ("cost", "measure"), where, ("cost", "measure"))
    return ExtendedRiskSpec(
        _parse_cost(doc["cost"], ctx, f"{where}.cost"),
        _parse_measure(doc["measure"], ctx, f"{where}.measure"),
    )


_REGIME_FIELDS = {
    "bounded": ("region", "scenarios"),
    "deterministic_viability": ("constraints", "scenarios"),
    "robust_recovery": ("constraints", "scenarios"),
    "stochastic_viability": ("constraints", "probability", "beta"),
    "exit_probability": ("region", "probability", "beta"),
    "exit_count_limit": ("region", "max_exits", "probability"),
    "risk_bound": ("risk", "alpha"),
    "control_predicate": ("exists_control", "scenarios"),
}
_OPTIONAL = {"scenarios"}


@dataclass(frozen=True)
class RegimeDocument:
    regime: object
    indicator: ExtendedRiskSpec | None


def parse_regime(doc, model: SystemModel, base=None) -> RegimeDocument:
    """Regime file: ``type`` discriminator, variant fields, optional ``indicator`` risk."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise SchemaError("regime: expected an object with a 'type'")
    kind = doc["type"]
    if kind not in _REGIME_FIELDS:
        raise SchemaError(f"regime.type: unknown regime {kind!r}")
    fields = _REGIME_FIELDS[kind]
    required = [f for f in fields if f not in _OPTIONAL]
    _keys(doc, ("type", "indicator", *fields), "regime", required)
    ctx = _Ctx(model, base)
    get = doc.get
    try:
        if kind == "bounded":
            regime = Bounded(
                _parse_constraints(doc["region"], ctx, "regime.region"),
                _scenarios_field(get("scenarios"), ctx, "regime.scenarios"),
            )
        elif kind in ("deterministic_viability", "robust_recovery"):
            cls = DeterministicViability if kind == "deterministic_viability" else RobustRecovery
            regime = cls(
                _parse_constraints(doc["constraints"], ctx, "regime.constraints"),
                _scenarios_field(get("scenarios"), ctx, "regime.scenarios"),
            )
        elif kind == "stochastic_viability":
            regime = StochasticViability(
                _parse_constraints(doc["constraints"], ctx, "regime.constraints"),
                _parse_probability(doc["probability"], ctx, "regime.probability"),
                _real(doc["beta"], "regime.beta"),
            )
        elif kind == "exit_probability":
            regime = ExitProbability(
                _parse_constraints(doc["region"], ctx, "regime.region"),
                _parse_probability(doc["probability"], ctx, "regime.probability"),
                _real(doc["beta"], "regime.beta"),
            )
        elif kind == "exit_count_limit":
            regime = ExitCountLimit(
                _parse_constraints(doc["region"], ctx, "regime.region"),
                _int(doc["max_exits"], "regime.max_exits"),
                _parse_probability(doc["probability"], ctx, "regime.probability"),
            )
        elif kind == "risk_bound":
            regime = RiskBound(
                parse_risk(doc["risk"], model, base, "regime.risk"),
                _real(doc["alpha"], "regime.alpha"),
            )
        else:
            value = _label(doc["exists_control"])
            if not any(value in us for us in model.controls):
                raise CrossReferenceError(f"regime.exists_control: unknown control {value!r}")
            regime = ControlPredicate.exists_control(
                value, _scenarios_field(get("scenarios"), ctx, "regime.scenarios")
            )
    except ValueError as exc:
        raise SchemaError(f"regime: {exc}") from None
    indicator = None
    if "indicator" in doc:
        indicator = parse_risk(doc["indicator"], model, base, "regime.indicator")
    return RegimeDocument(regime, indicator)


def load_regime(path, model: SystemModel) -> RegimeDocument:
    path = Path(path)
    return parse_regime(read_json(path), model, path.parent)


def dump_regime(regime, model: SystemModel) -> dict:
    """Inverse of :func:`parse_regime` for regimes built from tables."""

    def scen(v):
        return None if v is None else [[label_json(w) for w in s] for s in v]

    if isinstance(regime, Bounded):
        doc = {"type": "bounded", "region": _dump_constraints(regime.region, model)}
    elif isinstance(regime, (DeterministicViability, RobustRecovery)):
        kind = (
            "deterministic_viability"
            if isinstance(regime, DeterministicViability)
            else "robust_recovery"
        )
        doc = {"type": kind, "constraints": _dump_constraints(regime.constraints, model)}
    elif isinstance(regime, StochasticViability):
        doc = {
            "type": "stochastic_viability",
            "constraints": _dump_constraints(regime.constraints, model),
            "probability": _dump_probability(regime.probability),
            "beta": regime.beta,
        }
    elif isinstance(regime, ExitProbability):
        doc = {
            "type": "exit_probability",
            "region": _dump_constraints(regime.region, model),
            "probability": _dump_probability(regime.probability),
            "beta": regime.beta,
        }
    elif isinstance(regime, ExitCountLimit):
        doc = {
            "type": "exit_count_limit",
            "region": _dump_constraints(regime.region, model),
            "max_exits": regime.max_exits,
            "probability": _dump_probability(regime.probability),
        }
    elif isinstance(regime, ControlPredicate) and isinstance(regime.predicate, ExistsControl):
        doc = {"type": "control_predicate", "exists_control": label_json(regime.predicate.value)}
    else:
        raise TypeError(f"cannot serialize {regime!r}")
    scenarios = getattr(regime, "scenarios", None)
    if scenarios is not None:
        doc["scenarios"] = scen(scenarios)
    return doc


# strategies ---------------------------------------------------------------------


def parse_strategy(doc, model: SystemModel):
    _keys(doc, ("type", "t0", "records"), "strategy", ("type", "records"))
    ctx = _Ctx(model, None)
    records = _list(doc["records"], "strategy.records")
    if doc["type"] == "markov":
        table = {}
        for i, rec in enumerate(records):
            where = f"strategy.records[{i}]"
            if not isinstance(rec, list) or len(rec) != 3:
                raise SchemaError(f"{where}: expected [t, x, u]")
            t, x, u = _int(rec[0], where), _label(rec[1]), _label(rec[2])
            ctx.state(t, x, where)
            ctx.control(t, u, where)
            table[(t, x)] = u
        return MarkovPolicy(table)
    if doc["type"] == "adapted":
        t0 = _int(doc.get("t0", model.grid.t0), "strategy.t0")
        table = {}
        for i, rec in enumerate(records):
            where = f"strategy.records[{i}]"
            if not isinstance(rec, list) or len(rec) != 4:
                raise SchemaError(f"{where}: expected [t, x, [w, ...], u]")
            t, x, u = _int(rec[0], where), _label(rec[1]), _label(rec[3])
            prefix = tuple(_label(w) for w in _list(rec[2], where))
            ctx.state(t, x, where)
            ctx.control(t, u, where)
            table[(t, x, prefix)] = u
        try:
            return AdaptedPolicy(table, t0)
        except ValueError as exc:
            raise SchemaError(f"strategy: {exc}") from None
    raise SchemaError(f"strategy.type: unknown strategy type {doc['type']!r}")


def dump_strategy(strategy, model: SystemModel) -> dict:
    """Policy document with records in canonical (time, state, prefix) order."""
    if isinstance(strategy, MarkovPolicy):
        keys = sorted(strategy.table, key=lambda k: (k[0], model.state_order(k[0], k[1])))
        return {
            "type": "markov",
            "records": [[t, label_json(x), label_json(strategy.table[(t, x)])] for t, x in keys],
        }
    keys = sorted(
        strategy.table,
        key=lambda k: (k[0], model.state_order(k[0], k[1]), model.scenario_key(k[2])),
    )
    return {
        "type": "adapted",
        "t0": strategy.t0,
        "records": [
            [t, label_json(x), [label_json(w) for w in p], label_json(strategy.table[(t, x, p)])]
            for t, x, p in keys
        ],
    }


def load_strategy(path, model: SystemModel):
    return parse_strategy(read_json(path), model)


# scenarios and CSV -------------------------------------------------------------------


def parse_scenarios(text: str, model: SystemModel, where="scenarios") -> list:
    """One scenario per line, comma-separated labels matched by their text."""
    lookup = [{str(w): w for w in ws} for ws in model.uncertainties]
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [tok.strip() for tok in line.split(",")]
        if len(tokens) != model.grid.horizon:
            raise CrossReferenceError(
                f"{where}:{lineno}: expected {model.grid.horizon} labels, got {len(tokens)}"
            )
        scenario = []
        for k, tok in enumerate(tokens):
            if tok not in lookup[k]:
                raise CrossReferenceError(
                    f"{where}:{lineno}: unknown uncertainty {tok!r} at t={model.grid.t0 + k}"
                )
            scenario.append(lookup[k][tok])
        out.append(tuple(scenario))
    return out


def load_scenarios(path, model: SystemModel) -> list:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_scenarios(text, model, str(path))


def format_scenarios(scenarios) -> str:
    return "".join(",".join(str(w) for w in s) + "\n" for s in scenarios)


def _csv_label(v) -> str:
    if v is None:
        return ""
    if v is CEMETERY:
        return "∂"
    return str(v)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_number(v) if isinstance(v, float) else _csv_label(v) for v in row]
        )
    return buf.getvalue()


def bundle_csv(path_bundle) -> str:
    return csv_text(("scenario_id", "time", "state", "control"), path_bundle.rows())


def distribution_csv(z) -> str:
    return csv_text(("value", "weight"), z.pairs())


@dataclass(frozen=True)
class Inputs:
    model: SystemModel
    regime: object = None
    indicator: ExtendedRiskSpec | None = None
    strategy: object = None
    scenarios: list | None = None


def parse_inputs(model_path, regime_path=None, strategy_path=None, scenarios_path=None) -> Inputs:
    """Load and cross-check every referenced file against the model."""
    model = load_model(model_path)
    regime = indicator = strategy = scenarios = None
    if regime_path is not None:
        doc = load_regime(regime_path, model)
        regime, indicator = doc.regime, doc.indicator
    if strategy_path is not None:
        strategy = load_strategy(strategy_path, model)
    if scenarios_path is not None:
        scenarios = load_scenarios(scenarios_path, model)
    return Inputs(model, regime, indicator, strategy, scenarios)
