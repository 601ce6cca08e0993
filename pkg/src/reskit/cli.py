"""``reskit`` command line: validate models, simulate, and solve resilience problems."""

from __future__ import annotations

import argparse
import dataclasses
import re
import sys
from pathlib import Path

from . import io as rio
from .errors import ReskitError
from .model import validate
from .probability import WhiteNoise
from .regimes import (
    DeterministicViability,
    ExitProbability,
    RiskBound,
    RobustRecovery,
    StochasticViability,
    product_closure,
    recovery_time,
    regime_scope,
)
from .solvers import (
    resilience_indicator,
    resilient_states,
    robust_recovery_sets,
    robust_viability_kernel,
    stochastic_viability_values,
)
from .strategies import default_budget
from .trajectory import bundle

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = ("validate", "simulate", "kernel", "recover", "viab-prob", "resilient", "indicator")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reskit", description="Resilience analysis of finite controlled systems."
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--model", required=True, type=Path)
    parser.add_argument("--regime", type=Path)
    parser.add_argument("--strategy", type=Path)
    parser.add_argument("--scenarios", type=Path)
    parser.add_argument("--time", type=int)
    parser.add_argument("--state")
    parser.add_argument("--beta", type=float)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--budget", type=int)
    parser.add_argument("--strategy-class", choices=("adapted", "markov"), default="adapted")
    parser.add_argument("--out", type=Path)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


@dataclasses.dataclass
class RunConfig:
    subcommand: str
    model: Path
    regime: Path | None = None
    strategy: Path | None = None
    scenarios: Path | None = None
    time: int | None = None
    state: str | None = None
    beta: float | None = None
    alpha: float | None = None
    budget: int | None = None
    strategy_class: str = "adapted"
    out: Path | None = None
    format: str = "json"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        fields = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in vars(args).items() if k in fields})

    def check(self):
        for name in ("model", "regime", "strategy", "scenarios"):
            path = getattr(self, name)
            if path is not None and not path.is_file():
                raise UsageError(f"--{name}: no such file: {path}")
        if self.beta is not None and not 0.0 <= self.beta <= 1.0:
            raise UsageError("--beta must lie in [0, 1]")
        if self.budget is not None and self.budget < 1:
            raise UsageError("--budget must be positive")


def _need(cfg: RunConfig, *names):
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"{cfg.subcommand} needs --{name}")


def _parse_state(model, t, text):
    for x in model.states_at(t):
        if str(rio.label_json(x)) == text or str(x) == text:
            return x
    raise UsageError(f"--state {text!r} is not a state label at t={t}")


def _time(cfg, model):
    t = model.grid.t0 if cfg.time is None else cfg.time
    if t not in model.grid.times:
        raise UsageError(f"--time {t} outside {model.grid.t0}..{model.grid.T}")
    return t


def _override(regime, cfg):
    if cfg.beta is not None and isinstance(regime, (StochasticViability, ExitProbability)):
        regime = dataclasses.replace(regime, beta=cfg.beta)
    if cfg.alpha is not None and isinstance(regime, RiskBound):
        regime = dataclasses.replace(regime, alpha=cfg.alpha)
    return regime


def _sets_doc(model, sets):
    return {str(t): [rio.label_json(x) for x in model.sort_states(t, v)] for t, v in sets.items()}


def _sets_rows(model, sets):
    return [(t, x) for t in sorted(sets) for x in model.sort_states(t, sets[t])]


def _closure(regime, model):
    if not isinstance(regime, (DeterministicViability, RobustRecovery)):
        raise UsageError("this subcommand needs a deterministic_viability or robust_recovery regime")
    closure = product_closure(regime_scope(regime, model), model)
    if closure is None:
        raise ReskitError("regime scenarios are not a product of per-epoch uncertainty sets")
    return closure


class Output:
    """Collects the main document plus side files, written deterministically."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.files: dict[str, str] = {}

    def emit(self, doc, header=None, rows=None):
        if self.cfg.format == "csv" and rows is not None:
            text = rio.csv_text(header, rows)
            name = f"{self.cfg.subcommand}.csv"
        else:
            text = rio.dumps(doc)
            name = f"{self.cfg.subcommand}.json"
        sys.stdout.write(text)
        self.files[name] = text

    def side(self, name, text):
        self.files[name] = text

    def flush(self):
        if self.cfg.out is None:
            return
        self.cfg.out.mkdir(parents=True, exist_ok=True)
        for name, text in sorted(self.files.items()):
            (self.cfg.out / name).write_text(text, encoding="utf-8")


def _safe(label) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", str(rio.label_json(label)))


def _cmd_validate(cfg, out):
    model = rio.load_model(cfg.model, check=False)
    report = validate(model)
    issues = [
        {"kind": i.kind, "where": [rio.label_json(v) for v in i.where], "detail": i.detail}
        for i in report
    ]
    out.emit(
        {"valid": report.ok, "issues": issues},
        ("kind", "where", "detail"),
        [(i.kind, " ".join(str(v) for v in i.where), i.detail) for i in report],
    )
    return EXIT_OK if report.ok else EXIT_DOMAIN


def _cmd_simulate(cfg, out):
    _need(cfg, "strategy", "scenarios", "state")
    inputs = rio.parse_inputs(cfg.model, strategy_path=cfg.strategy, scenarios_path=cfg.scenarios)
    if not inputs.scenarios:
        raise UsageError("the scenario file contains no scenarios")
    model = inputs.model
    t = _time(cfg, model)
    x = _parse_state(model, t, cfg.state)
    b = bundle(model, inputs.strategy, t, x, inputs.scenarios)
    doc = {
        "start": t,
        "initial": rio.label_json(x),
        "paths": [
            {
                "id": i,
                "scenario": [rio.label_json(w) for w in s],
                "states": [rio.label_json(v) for v in xs],
                "controls": [rio.label_json(u) for u in us],
            }
            for i, (s, xs, us) in enumerate(b)
        ],
    }
    out.emit(doc, ("scenario_id", "time", "state", "control"), list(b.rows()))
    return EXIT_OK


def _cmd_kernel(cfg, out):
    _need(cfg, "regime")
    inputs = rio.parse_inputs(cfg.model, regime_path=cfg.regime)
    model, regime = inputs.model, inputs.regime
    table = robust_viability_kernel(model, regime.constraints, _closure(regime, model))
    doc = {"kernel": _sets_doc(model, table.sets), "witness": rio.dump_strategy(table.witness, model)}
    out.emit(doc, ("time", "state"), _sets_rows(model, table.sets))
    return EXIT_OK


def _cmd_recover(cfg, out):
    _need(cfg, "regime")
    inputs = rio.parse_inputs(cfg.model, regime_path=cfg.regime)
    model, regime = inputs.model, inputs.regime
    table = robust_recovery_sets(model, regime.constraints, _closure(regime, model))
    witness = rio.dump_strategy(table.witness, model)
    doc = {"recovery_sets": _sets_doc(model, table.sets), "witness": witness}
    if cfg.state is not None:
        t = _time(cfg, model)
        x = _parse_state(model, t, cfg.state)
        b = bundle(model, table.witness, t, x, regime_scope(regime, model))
        doc["start"] = {"time": t, "state": rio.label_json(x), "recoverable": x in table[t]}
        doc["recovery_times"] = [
            {
                "scenario": [rio.label_json(w) for w in s],
                "tau": rio.number_json(recovery_time(xs, us, regime.constraints, t)),
            }
            for s, xs, us in b
        ]
    out.side("witness_policy.json", rio.dumps(witness))
    out.emit(doc, ("time", "state"), _sets_rows(model, table.sets))
    return EXIT_OK


def _cmd_viab_prob(cfg, out):
    _need(cfg, "regime")
    inputs = rio.parse_inputs(cfg.model, regime_path=cfg.regime)
    model, regime = inputs.model, inputs.regime
    if not isinstance(regime, StochasticViability) or not isinstance(regime.probability, WhiteNoise):
        raise UsageError("viab-prob needs a stochastic_viability regime with white_noise")
    table = stochastic_viability_values(model, regime.constraints, regime.probability)
    rows = [(t, x, table[(t, x)]) for t in model.grid.times for x in model.states_at(t)]
    doc = {
        "values": [
            {"time": t, "state": rio.label_json(x), "value": rio.number_json(v)} for t, x, v in rows
        ],
        "witness": rio.dump_strategy(table.witness, model),
    }
    out.emit(doc, ("t", "x", "value"), rows)
    return EXIT_OK


def _cmd_resilient(cfg, out):
    _need(cfg, "regime")
    inputs = rio.parse_inputs(cfg.model, regime_path=cfg.regime)
    model = inputs.model
    regime = _override(inputs.regime, cfg)
    t = _time(cfg, model)
    result = resilient_states(model, regime, t, cfg.strategy_class, cfg.budget)
    ordered = model.sort_states(t, result.states)
    witnesses = []
    for x in ordered:
        policy = rio.dump_strategy(result.witnesses[x], model)
        name = f"witness_{_safe(x)}.json"
        out.side(name, rio.dumps(policy))
        witnesses.append({"state": rio.label_json(x), "policy_file": name})
    doc = {
        "time": t,
        "method": result.method,
        "resilient_states": [rio.label_json(x) for x in ordered],
        "witnesses": witnesses,
    }
    out.emit(doc, ("time", "state"), [(t, x) for x in ordered])
    return EXIT_OK


def _cmd_indicator(cfg, out):
    _need(cfg, "regime", "state")
    inputs = rio.parse_inputs(cfg.model, regime_path=cfg.regime)
    if inputs.indicator is None:
        raise UsageError("the regime file has no 'indicator' risk specification")
    model = inputs.model
    regime = _override(inputs.regime, cfg)
    t = _time(cfg, model)
    x = _parse_state(model, t, cfg.state)
    result = resilience_indicator(
        model, regime, inputs.indicator, t, x, cfg.strategy_class, cfg.budget
    )
    policy = rio.dump_strategy(result.strategy, model)
    out.side("argmin_policy.json", rio.dumps(policy))
    doc = {
        "time": t,
        "state": rio.label_json(x),
        "value": rio.number_json(result.value),
        "evaluated": result.evaluated,
        "policy_file": "argmin_policy.json",
    }
    out.emit(doc, ("time", "state", "value"), [(t, x, result.value)])
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "simulate": _cmd_simulate,
    "kernel": _cmd_kernel,
    "recover": _cmd_recover,
    "viab-prob": _cmd_viab_prob,
    "resilient": _cmd_resilient,
    "indicator": _cmd_indicator,
}


def run(cfg: RunConfig) -> int:
    """Execute one subcommand; returns the process exit status."""
    out = Output(cfg)
    try:
        cfg.check()
        if cfg.budget is None:
            cfg.budget = default_budget()
        status = _COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        print(f"reskit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReskitError as exc:
        print(f"reskit: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    out.flush()
    return status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(RunConfig.from_args(args))


if __name__ == "__main__":
    sys.exit(main())
