"""Run configuration: tolerance overrides and the parallelism cap.

A config file holds ``key = value`` lines; blank lines and ``#`` comments are
ignored.  Only the tolerance names in :data:`TOLERANCE_TARGETS` are accepted
and every value must be a positive float.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Any

from . import geometry, liegroup, radon, specfun, spectral

# config key -> (module, attribute)
TOLERANCE_TARGETS: dict[str, tuple[Any, str]] = {
    "chart_tol": (geometry, "CHART_TOL"),
    "det_tol": (liegroup, "DET_TOL"),
    "parabolic_tol": (liegroup, "PARABOLIC_TOL"),
    "fd_step": (liegroup, "FD_STEP"),
    "eo_match_tol": (specfun, "EO_MATCH_TOL"),
    "truncation_tol": (spectral, "TAIL_TOL"),
    "sigma_cutoff": (radon, "SIGMA_CUTOFF"),
    "quad_rtol": (radon, "QUAD_RTOL"),
    "tail_rtol": (radon, "TAIL_RTOL"),
}

THREADS_ENV = "HYPERRADON_THREADS"


class ConfigError(ValueError):
    """Malformed config file, unknown key or non-positive tolerance."""


def default_tolerances() -> dict[str, float]:
    return {k: float(getattr(mod, attr)) for k, (mod, attr) in TOLERANCE_TARGETS.items()}


def _check(key: str, value: float) -> float:
    if key not in TOLERANCE_TARGETS:
        raise ConfigError(f"unknown tolerance {key!r}; known: {', '.join(sorted(TOLERANCE_TARGETS))}")
    if not (math.isfinite(value) and value > 0):
        raise ConfigError(f"tolerance {key} must be positive, got {value!r}")
    return value


def parse_config_text(text: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        try:
            num = float(val)
        except ValueError:
            raise ConfigError(f"line {lineno}: {key} is not a number: {val!r}") from None
        out[key] = _check(key, num)
    return out


def load_config(path: str | os.PathLike) -> dict[str, float]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return parse_config_text(text)


def thread_count(env: dict[str, str] | None = None) -> int:
    """Worker count from HYPERRADON_THREADS (default 1)."""
    env = os.environ if env is None else env
    raw = env.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass
class RunConfig:
    """One CLI invocation: command, its parameters, tolerance overrides and output."""

    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.format not in ("csv", "svg", "png", "json"):
            raise ConfigError(f"unknown output format {self.format!r}")
        for k, v in self.tolerances.items():
            _check(k, float(v))

    def effective_tolerances(self) -> dict[str, float]:
        tol = default_tolerances()
        tol.update(self.tolerances)
        return tol


class applied_tolerances:
    """Context manager installing tolerance overrides, restoring the defaults on exit."""

    def __init__(self, overrides: dict[str, float]):
        for k, v in overrides.items():
            _check(k, float(v))
        self.overrides = dict(overrides)
        self._saved: dict[str, float] = {}

    def __enter__(self):
        for key, val in self.overrides.items():
            mod, attr = TOLERANCE_TARGETS[key]
            self._saved[key] = getattr(mod, attr)
            setattr(mod, attr, float(val))
        return self

    def __exit__(self, *exc):
        for key, val in self._saved.items():
            mod, attr = TOLERANCE_TARGETS[key]
            setattr(mod, attr, val)
        return False
