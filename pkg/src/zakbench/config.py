"""Run configuration: flat key = value files with sections, plus flag overrides.

Every referenced parameter is validated before any computation starts;
unknown sections or keys are rejected.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .labframe import DEFAULT_DEMOD_CYCLES, CavityConfig
from .model import DEFAULT_QUAD_N, DEFAULT_STEPS, DEFAULT_T, ModelParams

EXPERIMENTS = ("trace", "sweep", "phase-diagram", "labframe")
GRID_AXES = ("w", "v", "J", "T")

_SCHEMA = {
    "run": {"experiment"},
    "model": {"w", "v", "J"},
    "schedule": {"T", "steps", "variant"},
    "grid": {"axes", "quad_n"},
    "lab": {"f0_hz", "g0_hz", "gamma", "sample_rate", "T_seconds", "raw_export", "demod_cycles"},
    "output": {"dir", "format"},
}


@dataclass(frozen=True)
class GridAxis:
    """One swept axis: linearly spaced `count` values from lo to hi."""

    name: str
    lo: float
    hi: float
    count: int

    def values(self):
        import numpy as np

        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class RunConfig:
    experiment: str = "trace"
    w: float = 1.0
    v: float = 5.0
    J: float = 0.0
    T: float = DEFAULT_T
    steps: int = DEFAULT_STEPS
    variant: str = "half"
    quad_n: int = DEFAULT_QUAD_N
    axes: list[GridAxis] = field(default_factory=list)
    f0_hz: float = 1955.0
    g0_hz: float = 40.0
    gamma: float = 0.0
    sample_rate: float = 80000.0
    lab_T: float = 0.5
    raw_export: bool = False
    demod_cycles: int = DEFAULT_DEMOD_CYCLES
    out_dir: str = "out"
    out_format: str = "csv"

    def model_params(self) -> ModelParams:
        try:
            return ModelParams(self.w, self.v, self.J)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def cavity_config(self) -> CavityConfig:
        try:
            return CavityConfig(
                f0=self.f0_hz,
                gamma=self.gamma,
                g0=2.0 * math.pi * self.g0_hz,
                sample_rate=self.sample_rate,
                T=self.lab_T,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def validate(self) -> "RunConfig":
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        for name, val in (("w", self.w), ("v", self.v), ("J", self.J)):
            if not math.isfinite(val):
                raise ConfigError(f"{name} must be finite, got {val}")
        if not (math.isfinite(self.T) and self.T > 0):
            raise ConfigError(f"T must be positive, got {self.T}")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if self.variant not in ("half", "full"):
            raise ConfigError(f"schedule variant must be half or full, got {self.variant!r}")
        if self.quad_n < 2:
            raise ConfigError(f"quad_n must be >= 2, got {self.quad_n}")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.out_format!r}")
        if self.demod_cycles < 1:
            raise ConfigError(f"demod_cycles must be >= 1, got {self.demod_cycles}")
        seen = set()
        for ax in self.axes:
            if ax.name not in GRID_AXES:
                raise ConfigError(f"unknown grid axis {ax.name!r} (use one of {GRID_AXES})")
            if ax.name in seen:
                raise ConfigError(f"duplicate grid axis {ax.name!r}")
            seen.add(ax.name)
            if ax.count < 1:
                raise ConfigError(f"axis {ax.name}: count must be >= 1")
            if not (math.isfinite(ax.lo) and math.isfinite(ax.hi)):
                raise ConfigError(f"axis {ax.name}: bounds must be finite")
        if self.experiment == "sweep":
            if not self.axes:
                raise ConfigError("sweep requires at least one grid axis")
            if len(self.axes) > 2:
                raise ConfigError("sweep supports at most two grid axes")
        if self.experiment == "phase-diagram":
            if self.w != 1.0:
                raise ConfigError("phase diagram axes are ratios to w; w must be 1")
            names = [ax.name for ax in self.axes]
            if self.axes and names != ["v", "J"]:
                raise ConfigError("phase diagram grid axes must be v then J")
        if self.experiment == "labframe":
            self.cavity_config()  # surface invalid cavity settings now
        return self


def parse_grid_spec(text: str) -> GridAxis:
    """Parse "<axis:min:max:n>", e.g. "v:0:5:101"."""
    parts = text.strip().split(":")
    if len(parts) != 4:
        raise ConfigError(f"grid spec must be axis:min:max:n, got {text!r}")
    name = parts[0].strip()
    try:
        lo, hi = float(parts[1]), float(parts[2])
        count = int(parts[3])
    except ValueError as exc:
        raise ConfigError(f"bad grid spec {text!r}: {exc}") from exc
    return GridAxis(name=name, lo=lo, hi=hi, count=count)


def _parse_bool(text: str, key: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1", "on"):
        return True
    if t in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def load_config_file(path: str) -> RunConfig:
    """Read a sectioned key = value file into a RunConfig (no validation yet)."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str  # keys are case-sensitive (J, T, T_seconds)
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    cfg = RunConfig()
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
            try:
                cfg = _apply(cfg, section, key, raw)
            except ValueError as exc:
                raise ConfigError(f"[{section}] {key}: {exc}") from exc
    return cfg


def _apply(cfg: RunConfig, section: str, key: str, raw: str) -> RunConfig:
    if section == "run":
        return replace(cfg, experiment=raw.strip())
    if section == "model":
        return replace(cfg, **{key: float(raw)})
    if section == "schedule":
        if key == "T":
            return replace(cfg, T=float(raw))
        if key == "steps":
            return replace(cfg, steps=int(raw))
        return replace(cfg, variant=raw.strip())
    if section == "grid":
        if key == "quad_n":
            return replace(cfg, quad_n=int(raw))
        axes = [parse_grid_spec(s) for s in raw.split(",") if s.strip()]
        return replace(cfg, axes=axes)
    if section == "lab":
        if key == "raw_export":
            return replace(cfg, raw_export=_parse_bool(raw, key))
        if key == "demod_cycles":
            return replace(cfg, demod_cycles=int(raw))
        field_name = {"T_seconds": "lab_T"}.get(key, key)
        return replace(cfg, **{field_name: float(raw)})
    # output
    if key == "dir":
        return replace(cfg, out_dir=raw.strip())
    return replace(cfg, out_format=raw.strip())
