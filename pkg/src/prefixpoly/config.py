"""Runtime configuration for the command-line front end.

Settings live in a plain key=value file (one pair per line, '#' comments).
The file is looked up at $PREFIXPOLY_CONFIG, falling back to
./prefixpoly.cfg when that exists.  Recognized keys:

    verify_seed    master seed for the verification suites (int)
    mc_trials      default Monte Carlo trial count (int)
    scan_budget    node budget for brute-force scans (int)
    tree_guard     largest n for tree enumeration (int)

Unknown keys are rejected so typos surface immediately.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_VAR = "PREFIXPOLY_CONFIG"
DEFAULT_PATH = "prefixpoly.cfg"

_INT_KEYS = ("verify_seed", "mc_trials", "scan_budget", "tree_guard")


@dataclass
class Config:
    verify_seed: int = 42
    mc_trials: int = 100_000
    scan_budget: int = 10_000_000
    tree_guard: int = 10


def load_config(path: str | None = None) -> Config:
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None and os.path.exists(DEFAULT_PATH):
        path = DEFAULT_PATH
    cfg = Config()
    if path is None:
        return cfg
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _INT_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            setattr(cfg, key, int(value))
    return cfg
