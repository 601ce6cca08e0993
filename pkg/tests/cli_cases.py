"""Canonical CLI invocations on the stock fixture, shared by golden and determinism tests."""

import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"

CASES = {
    "validate": ["validate"],
    "simulate": [
        "simulate", "--strategy", "always_one.json", "--scenarios", "scenarios.txt",
        "--state", "1", "--format", "csv",
    ],
    "kernel": ["kernel", "--regime", "viability_kernel.json", "--format", "csv"],
    "recover": ["recover", "--regime", "indicator.json", "--state", "1"],
    "viab-prob": ["viab-prob", "--regime", "stochastic_viability.json", "--format", "csv"],
    "resilient": ["resilient", "--regime", "robust_recovery.json"],
    "indicator": ["indicator", "--regime", "indicator.json", "--state", "1"],
}

_PATH_FLAGS = {"--regime", "--strategy", "--scenarios"}


def argv(name, out=None):
    args = list(CASES[name])
    for i, a in enumerate(args[:-1]):
        if a in _PATH_FLAGS:
            args[i + 1] = str(DATA / args[i + 1])
    args += ["--model", str(DATA / "stock3.json")]
    if out is not None:
        args += ["--out", str(out)]
    return args


def run_cli(args, env=None):
    """Run ``python -m reskit.cli`` in a subprocess; returns (code, stdout, stderr)."""
    full_env = {**os.environ, **(env or {})}
    proc = subprocess.run(
        [sys.executable, "-m", "reskit.cli", *args],
        capture_output=True,
        env=full_env,
        cwd=ROOT,
    )
    return proc.returncode, proc.stdout, proc.stderr
