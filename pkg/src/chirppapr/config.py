"""Experiment configuration: flat ``key = value`` files and their resolution.

Grammar: one ``key = value`` per line, ``#`` starts a comment, lists are
comma separated. Keys use underscores or dashes interchangeably and match
the CLI flag names. Later sources override earlier ones: subcommand
defaults, then the config file, then command-line flags.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _floats(value: str) -> list[float]:
    return [float(v) for v in _split(value)]


def _complexes(value: str) -> list[complex]:
    return [complex(v.replace(" ", "")) for v in _split(value)]


def _optional_int(value: str) -> int | None:
    return None if value.strip().lower() in ("", "none", "auto") else int(value)


def _optional_float(value: str) -> float | None:
    return None if value.strip().lower() in ("", "none") else float(value)


def _names(value: str) -> list[str]:
    return [v.upper() for v in _split(value) if v.lower() != "none"]


def _ints(value: str) -> list[int]:
    return [int(v) for v in _split(value)]


@dataclass
class ExperimentConfig:
    n: int = 64
    trials: int = 10_000
    modulation: str = "qpsk"
    seed: int = 20_240_601
    waveform: list = field(default_factory=lambda: ["OFDM", "OCDM", "AFDM"])
    spreading: list = field(default_factory=lambda: ["WHT", "DCT", "ZC", "IDFT"])
    baseline: list = field(default_factory=list)
    c1: float = 0.1
    c2: float = 0.2
    zc_root: int = 1
    stride: int | None = None
    grid_min_db: float = 0.0
    grid_max_db: float = 12.0
    grid_step_db: float = 0.05
    oversample: int = 1
    out: str = "results"
    workers: int = 1
    chunk: int = 500
    pts_blocks: int = 4
    pts_phases: list = field(default_factory=lambda: [1, -1, 1j, -1j])
    pts_partition: str = "contiguous"
    slm_candidates: int = 4
    slm_seed: int = 7
    gps_groups: int = 2
    gps_c2: list = field(default_factory=lambda: [0.2, 0.3, 0.4, 0.5])
    clip_beta: float = 1.6
    clip_cutoff: float | None = None
    proposed: str = "IDFT"
    sensors: list = field(default_factory=lambda: [0, 1000, 10_000])

    def grid(self) -> np.ndarray:
        from .metrics import papr_grid

        return papr_grid(self.grid_max_db, self.grid_step_db, self.grid_min_db)

    def validate(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.n < 2:
            raise ConfigError("n must be >= 2")
        if self.modulation.lower() != "qpsk":
            raise ConfigError(f"unsupported modulation {self.modulation!r}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.grid_step_db <= 0 or self.grid_max_db <= self.grid_min_db:
            raise ConfigError("CCDF grid must be ascending")
        if self.oversample < 1:
            raise ConfigError("oversample must be >= 1")
        if self.workers < 1 or self.chunk < 1:
            raise ConfigError("workers and chunk must be >= 1")
        if not self.waveform:
            raise ConfigError("at least one waveform is required")


# field name -> parser from the textual form
PARSERS = {
    "n": int,
    "trials": int,
    "modulation": str.strip,
    "seed": int,
    "waveform": _names,
    "spreading": _names,
    "baseline": _names,
    "c1": float,
    "c2": float,
    "zc_root": int,
    "stride": _optional_int,
    "grid_min_db": float,
    "grid_max_db": float,
    "grid_step_db": float,
    "oversample": int,
    "out": str.strip,
    "workers": int,
    "chunk": int,
    "pts_blocks": int,
    "pts_phases": _complexes,
    "pts_partition": str.strip,
    "slm_candidates": int,
    "slm_seed": int,
    "gps_groups": int,
    "gps_c2": _floats,
    "clip_beta": float,
    "clip_cutoff": _optional_float,
    "proposed": lambda v: v.strip().upper(),
    "sensors": _ints,
}

assert set(PARSERS) == {f.name for f in dataclasses.fields(ExperimentConfig)}


def normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def parse_config_text(text: str) -> dict[str, str]:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        key = normalize_key(key)
        if key not in PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        entries[key] = value.strip()
    return entries


def apply_overrides(cfg: ExperimentConfig, entries: dict[str, str]) -> ExperimentConfig:
    updates = {}
    for key, value in entries.items():
        key = normalize_key(key)
        if key not in PARSERS:
            raise ConfigError(f"unknown key {key!r}")
        try:
            updates[key] = PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r} ({exc})") from None
    return dataclasses.replace(cfg, **updates)


def load_config(path: str | Path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return apply_overrides(base or ExperimentConfig(), parse_config_text(text))


def _format(value) -> str:
    if isinstance(value, list):
        return ",".join(_format(v) for v in value)
    if isinstance(value, complex):
        if value.imag == 0:
            return repr(value.real)
        return repr(value).strip("()")
    if value is None:
        return "none"
    return str(value)


def dump_config(cfg: ExperimentConfig) -> str:
    """Render ``cfg`` in the file grammar; the output parses back to ``cfg``."""
    lines = [f"{f.name} = {_format(getattr(cfg, f.name))}" for f in dataclasses.fields(cfg)]
    return "\n".join(lines) + "\n"
