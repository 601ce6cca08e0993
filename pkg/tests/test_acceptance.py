"""Acceptance criteria, one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import filecmp
import math
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from cli_cases import CASES, argv, run_cli  # noqa: E402
from oracles import cvar_eta_min, markov_success_max, raw_step  # noqa: E402
from reskit import (  # noqa: E402
    CEMETERY,
    ConstraintMap,
    ControlPredicate,
    CVaR,
    DeterministicViability,
    DiscreteRandomVariable,
    Expectation,
    ExtendedRiskSpec,
    IndicatorExit,
    MarkovPolicy,
    RobustRecovery,
    StochasticViability,
    WorstCase,
    brute_force_resilient,
    bundle,
    closed_loop,
    counter_extension,
    extended_risk,
    flow,
    recovery_time,
    regime_membership,
    resilient_states,
    risk,
    robust_recovery_sets,
    robust_viability_kernel,
    step,
    stochastic_viability_values,
    success_probability,
)
from reskit.fixtures import (  # noqa: E402
    STOCK3_ACCEPTABLE,
    random_micro_model,
    random_subset,
    random_white_noise,
    stock3,
    stock3_noise,
)
from reskit.strategies import AdaptedPolicy  # noqa: E402

TOL = 1e-12
SEED = 20240611


def _instances(n, seed, **kw):
    """Deterministic (model, constraints, noise) triples, plus stock3 first."""
    rng = np.random.default_rng(seed)
    out = [(stock3(), ConstraintMap(STOCK3_ACCEPTABLE), stock3_noise())]
    for _ in range(n):
        m = random_micro_model(rng, **kw)
        c = ConstraintMap(random_subset(rng, m.states_at(0)))
        out.append((m, c, random_white_noise(rng, m)))
    return out


def _random_controls(rng, m):
    # include controls outside the hard constraints on purpose
    return [m.controls_at(t)[int(rng.integers(len(m.controls_at(t))))] for t in m.grid.epochs]


def _random_noise(rng, m):
    return [m.uncertainties_at(t)[int(rng.integers(len(m.uncertainties_at(t))))] for t in m.grid.epochs]


# 1 ------------------------------------------------------------------------------


def criterion_1():
    rng = np.random.default_rng(SEED + 1)
    violations = paths = 0
    for _ in range(1000):
        m = random_micro_model(rng, cemetery_rate=0.25)
        for _ in range(5):
            x = m.states_at(0)[int(rng.integers(len(m.states_at(0))))]
            us, ws = _random_controls(rng, m), _random_noise(rng, m)
            xs = flow(m, 0, m.grid.T, x, us, ws)
            paths += 1
            seen = False
            for y in xs:
                seen = seen or y is CEMETERY
                if seen and y is not CEMETERY:
                    violations += 1
                    break
            for t in m.grid.epochs:
                if step(m, t, CEMETERY, us[t], ws[t]) is not CEMETERY:
                    violations += 1
    return violations == 0, f"{paths} paths on 1000 models, {violations} violations"


# 2 ------------------------------------------------------------------------------


def criterion_2():
    rng = np.random.default_rng(SEED + 2)
    bad = 0
    for _ in range(1000):
        m = random_micro_model(rng)
        T = m.grid.T
        us, ws = _random_controls(rng, m), _random_noise(rng, m)
        x = m.states_at(0)[int(rng.integers(len(m.states_at(0))))]
        s = int(rng.integers(0, T + 1))
        r = int(rng.integers(s, T + 1))
        whole = flow(m, 0, T, x, us, ws)
        head = flow(m, 0, r, x, us[:r], ws[:r])
        tail = flow(m, r, T, head[-1], us[r:], ws[r:])
        mid = flow(m, s, r, whole[s], us[s:r], ws[s:r])
        if whole != head + tail[1:] or mid != whole[s : r + 1]:
            bad += 1
    return bad == 0, f"1000 triples, {bad} mismatches"


# 3 ------------------------------------------------------------------------------


def criterion_3():
    mismatches = checks = 0
    for m, c, _ in _instances(200, SEED + 3):
        kernel = robust_viability_kernel(m, c)
        recovery = robust_recovery_sets(m, c)
        for t in m.grid.times:
            for x in m.states_at(t):
                for regime, table in ((DeterministicViability(c), kernel), (RobustRecovery(c), recovery)):
                    found = brute_force_resilient(m, regime, t, x, "adapted").resilient
                    checks += 1
                    mismatches += found != (x in table[t])
    return mismatches == 0, f"{checks} (t, x) checks on stock3 + 200 models, {mismatches} mismatches"


# 4 ------------------------------------------------------------------------------


def criterion_4():
    worst = 0.0
    for m, c, noise in _instances(200, SEED + 3):
        values = stochastic_viability_values(m, c, noise)
        for t in m.grid.times:
            for x in m.states_at(t):
                worst = max(worst, abs(values[(t, x)] - markov_success_max(m, c, noise, t, x)))
    p = stochastic_viability_values(stock3(), ConstraintMap(STOCK3_ACCEPTABLE), stock3_noise())
    exact = p[(0, 2)] == 1.0 and p[(0, 1)] == 0.0
    return worst <= TOL and exact, (
        f"max |DP - Markov brute force| = {worst:.3g}; stock3 p0(2)={p[(0, 2)]}, p0(1)={p[(0, 1)]}"
    )


# 5 ------------------------------------------------------------------------------


def _random_distribution(rng):
    n = int(rng.integers(1, 9))
    values = np.round(rng.uniform(-100, 100, n), int(rng.integers(0, 4)))
    weights = rng.random(n)
    weights /= weights.sum()
    weights[-1] = 1.0 - math.fsum(weights[:-1].tolist())
    return values.tolist(), weights.tolist()


def criterion_5():
    rng = np.random.default_rng(SEED + 5)
    grid = np.linspace(0.0, 0.9, 10)
    failures = {"mean": 0, "monotone": 0, "max": 0, "shift": 0, "eta": 0}
    for _ in range(1000):
        values, weights = _random_distribution(rng)
        if min(weights) < 0:
            weights = [max(w, 0.0) for w in weights]
            weights[-1] = 1.0 - math.fsum(weights[:-1])
        z = DiscreteRandomVariable(values, weights)
        mean = math.fsum(v * p for v, p in zip(values, weights))
        failures["mean"] += abs(risk(CVaR(0.0), z) - mean) > TOL
        levels = [risk(CVaR(float(b)), z) for b in grid]
        failures["monotone"] += any(b < a - TOL for a, b in zip(levels, levels[1:]))
        failures["max"] += any(v > max(values) + TOL for v in levels)
        c = float(rng.uniform(-10, 10))
        failures["shift"] += any(
            abs(risk(CVaR(float(b)), z.shift(c)) - (risk(CVaR(float(b)), z) + c)) > TOL
            for b in grid[::3]
        )
        # support points of the level: cumulative masses of the sorted atoms
        order = sorted(range(len(values)), key=lambda i: values[i])
        cum = np.cumsum([weights[i] for i in order])[:-1]
        for beta in [0.0, *[float(b) for b in cum if b < 1.0 - 1e-9]]:
            got = risk(CVaR(beta), z)
            ref = cvar_eta_min(values, weights, beta)
            failures["eta"] += abs(got - ref) > TOL
    ok = not any(failures.values())
    return ok, "1000 distributions; failures " + ", ".join(f"{k}={v}" for k, v in failures.items())


# 6 ------------------------------------------------------------------------------


def criterion_6():
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    inclusion_failures = 0
    betas = [0.0, 0.25, 0.5, 0.75, 0.9, 1.0]
    for m, c, noise in _instances(200, SEED + 3):
        for _ in range(3):
            table = {
                (t, x): m.controls_at(t)[int(rng.integers(len(m.controls_at(t))))]
                for t in m.grid.epochs
                for x in m.states_at(t)
            }
            pi = MarkovPolicy(table)
            for x in m.states_at(0):
                b = bundle(m, pi, 0, x, noise.support())
                g = extended_risk(ExtendedRiskSpec(IndicatorExit(c), Expectation(noise)), b)
                worst = max(worst, abs(g - (1.0 - success_probability(c, noise, b))))
        sets = [resilient_states(m, StochasticViability(c, noise, b), 0).states for b in betas]
        inclusion_failures += sum(not hi <= lo for lo, hi in zip(sets, sets[1:]))
    ok = worst <= TOL and inclusion_failures == 0
    return ok, f"max |G - (1 - P)| = {worst:.3g}; beta-inclusion failures {inclusion_failures}"


# 7 ------------------------------------------------------------------------------


def criterion_7():
    m = stock3()
    c = ConstraintMap(STOCK3_ACCEPTABLE)
    pi = MarkovPolicy.constant(m, 1)
    tau_good = recovery_time(*closed_loop(m, pi, 0, 3, 1, (0, 0, 0)), c, 0)
    tau_bad = recovery_time(*closed_loop(m, pi, 0, 3, 1, (1, 1, 1)), c, 0)
    examples = tau_good == 1 and tau_bad == math.inf
    failures = checked = 0
    for m, c, _ in _instances(200, SEED + 3):
        kernel = robust_viability_kernel(m, c)
        scen = list(m.scenarios())
        for t in m.grid.times:
            for x in kernel[t]:
                checked += 1
                b = bundle(m, kernel.witness, t, x, scen)
                failures += any(recovery_time(xs, us, c, t) != t for _, xs, us in b)
    ok = examples and failures == 0
    return ok, (
        f"tau((0,0,0))={tau_good}, tau((1,1,1))={tau_bad}; "
        f"{checked} kernel states, {failures} without tau == t"
    )


# 8 ------------------------------------------------------------------------------


def _counterexample():
    """Two adapted bundles on stock3 with identical (t, x, u) occupancy.

    Both scenarios keep the stock at 3. Bundle A plays a 0 on each path,
    bundle B never does on the second one, yet the set of (time, state,
    control) triples is the same, so no time-by-time constraint map can
    tell them apart.
    """
    m = stock3()
    w1, w2 = (0, 0, 0), (1, 0, 0)

    def adapted(c1, c2):
        table = {(0, 3, ()): c1[0]}
        for k in (1, 2):
            table[(k, 3, w1[:k])] = c1[k]
            table[(k, 3, w2[:k])] = c2[k]
        return bundle(m, AdaptedPolicy(table), 0, 3, [w1, w2])

    a, b = adapted((1, 0, 1), (1, 1, 0)), adapted((1, 0, 0), (1, 1, 1))
    regime = ControlPredicate.exists_control(0, [w1, w2])

    def triples(bb):
        return {(k, xs[k], us[k]) for _, xs, us in bb for k in range(len(us))}

    separated = regime_membership(regime, a) and not regime_membership(regime, b)
    # every time-by-time control constraint map over these triples agrees on A and B
    keys = sorted({(k, x) for k, x, _ in triples(a)})
    agree = True
    for mask in range(4 ** len(keys)):
        controls = {key: [u for u in (0, 1) if (mask >> (2 * i + u)) & 1] for i, key in enumerate(keys)}
        for states in ({3}, {2, 3}, {0, 1, 2, 3}):
            viab = DeterministicViability(ConstraintMap(states, controls))
            agree &= regime_membership(viab, a) == regime_membership(viab, b)
    return separated and agree and triples(a) == triples(b)


def criterion_8():
    mismatches = checked = 0
    for m, _, _ in _instances(50, SEED + 8):
        direct = resilient_states(m, ControlPredicate.exists_control(0), 0).states
        ext, regime, embed = counter_extension(m, 0)
        via = resilient_states(ext, regime, 0).states
        lifted = {x for x in m.states_at(0) if embed(x) in via}
        checked += 1
        mismatches += direct != lifted
    counter = _counterexample()
    ok = mismatches == 0 and counter
    return ok, (
        f"{checked} models (stock3 + 50), {mismatches} mismatches; "
        f"non-expressibility counterexample {'holds' if counter else 'FAILS'}"
    )


# 9 ------------------------------------------------------------------------------


def _same_tree(a: Path, b: Path) -> bool:
    cmp = filecmp.dircmp(a, b)
    if cmp.left_only or cmp.right_only:
        return False
    _, mismatch, errors = filecmp.cmpfiles(a, b, cmp.common_files, shallow=False)
    return not mismatch and not errors


def criterion_9():
    differing = []
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for name in sorted(CASES):
            runs = []
            for k in (1, 2):
                out = tmp / f"{name}-{k}"
                runs.append((run_cli(argv(name, out)), out))
            (r1, o1), (r2, o2) = runs
            if r1 != r2 or r1[0] != 0 or not _same_tree(o1, o2):
                differing.append(name)
    ok = not differing
    return ok, f"{len(CASES)} subcommands run twice; differing: {differing or 'none'}"


CRITERIA = {
    1: ("cemetery absorption", criterion_1),
    2: ("flow semigroup", criterion_2),
    3: ("robust DP = adapted brute force", criterion_3),
    4: ("stochastic DP = Markov brute force", criterion_4),
    5: ("CVaR axioms and formulas", criterion_5),
    6: ("regime consistency", criterion_6),
    7: ("recovery time", criterion_7),
    8: ("counter extension and counterexample", criterion_8),
    9: ("CLI determinism", criterion_9),
}


def _report(number):
    title, check = CRITERIA[number]
    ok, detail = check()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = _report(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_report(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
