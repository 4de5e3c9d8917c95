"""Run specifications and their plain-text configuration format.

The format is one ``key = value`` pair per line. Blank lines and lines
starting with ``#`` are ignored, as is anything after a ``#`` on a value
line. Keys may appear once. Lists are comma-separated integers.

======================  =======  ==========================================
key                     type     meaning (default)
======================  =======  ==========================================
``mode``                str      ``single-game``, ``sweep`` or ``trace``
                                 (``single-game``)
``n``                   int      population size (100)
``K``                   float    initial capital of every agent (40)
``mu``                  float    mean increment (0)
``sigma``               float    increment standard deviation (12)
``steps``               int      votes per game (500)
``altruists``           int      altruist count for single games (0)
``n0``                  int      support-screen size for single games (n)
``alpha``               float    acceptance threshold (0.5)
``altruist_counts``     ints     sweep axis (10,20,...,90)
``n0_values``           ints     sweep axis (10,20,...,100)
``replications``        int      games per sweep cell (200)
``seed``                int      master seed, unsigned 64-bit (0)
``out``                 str      output path (none)
``workers``             int      worker processes (CPU count)
======================  =======  ==========================================
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

from .experiment import (
    DEFAULT_ALTRUIST_COUNTS,
    DEFAULT_REPLICATIONS,
    DEFAULT_SUPPORT_SIZES,
    validate_axes,
    default_workers,
)
from .model import ConfigError, EnvironmentParams, GameConfig, check_seed

MODES = ("single-game", "sweep", "trace")


class ConfigParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


@dataclass(frozen=True)
class RunSpec:
    mode: str = "single-game"
    config: GameConfig = dataclasses.field(default_factory=GameConfig)
    altruist_counts: tuple[int, ...] = DEFAULT_ALTRUIST_COUNTS
    support_sizes: tuple[int, ...] = DEFAULT_SUPPORT_SIZES
    replications: int = DEFAULT_REPLICATIONS
    master_seed: int = 0
    output_path: Optional[str] = None
    worker_count: int = dataclasses.field(default_factory=default_workers)

    def validate(self) -> "RunSpec":
        if self.mode not in MODES:
            raise ConfigError("mode", f"must be one of {', '.join(MODES)}, got {self.mode!r}")
        self.config.validate()
        if self.mode == "sweep":
            validate_axes(self.config, list(self.altruist_counts), list(self.support_sizes))
        if isinstance(self.replications, bool) or not isinstance(self.replications, int) or self.replications < 1:
            raise ConfigError("replications", f"must be an integer >= 1, got {self.replications!r}")
        check_seed(self.master_seed)
        if isinstance(self.worker_count, bool) or not isinstance(self.worker_count, int) or self.worker_count < 1:
            raise ConfigError("workers", f"must be an integer >= 1, got {self.worker_count!r}")
        return self

    def as_dict(self) -> dict:
        c = self.config
        return {
            "mode": self.mode,
            "n": c.n,
            "K": c.initial_capital,
            "mu": c.env.mu,
            "sigma": c.env.sigma,
            "steps": c.steps,
            "altruists": c.altruist_count,
            "n0": c.support_size,
            "alpha": c.accept_threshold,
            "altruist_counts": list(self.altruist_counts),
            "n0_values": list(self.support_sizes),
            "replications": self.replications,
            "seed": self.master_seed,
            "out": self.output_path,
            "workers": self.worker_count,
        }


def _int(text: str) -> int:
    return int(text, 10)


def _int_list(text: str) -> tuple[int, ...]:
    items = [t.strip() for t in text.split(",")]
    if not all(items):
        raise ValueError("empty list entry")
    return tuple(_int(t) for t in items)


def _str(text: str) -> str:
    return text


def _mode(text: str) -> str:
    if text not in MODES:
        raise ValueError(f"must be one of {', '.join(MODES)}")
    return text


_FIELDS = {
    "mode": _mode,
    "n": _int,
    "K": float,
    "mu": float,
    "sigma": float,
    "steps": _int,
    "altruists": _int,
    "n0": _int,
    "alpha": float,
    "altruist_counts": _int_list,
    "n0_values": _int_list,
    "replications": _int,
    "seed": _int,
    "out": _str,
    "workers": _int,
}


def parse_values(text: str) -> dict:
    """Parse the document into typed values, without validation."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigParseError(lineno, f"expected 'key = value', got {raw.strip()!r}")
        if key not in _FIELDS:
            raise ConfigParseError(lineno, f"unknown key {key!r}")
        if key in values:
            raise ConfigParseError(lineno, f"duplicate key {key!r}")
        if not value:
            raise ConfigParseError(lineno, f"missing value for {key!r}")
        try:
            values[key] = _FIELDS[key](value)
        except ValueError as exc:
            raise ConfigParseError(lineno, f"bad value for {key!r}: {value!r} ({exc})") from None
    return values


def build_runspec(values: dict) -> RunSpec:
    """Fill defaults around ``values`` and validate the result."""
    unknown = set(values) - set(_FIELDS)
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    base = RunSpec()
    n = values.get("n", base.config.n)
    config = GameConfig(
        n=n,
        initial_capital=values.get("K", base.config.initial_capital),
        env=EnvironmentParams(values.get("mu", base.config.env.mu), values.get("sigma", base.config.env.sigma)),
        steps=values.get("steps", base.config.steps),
        altruist_count=values.get("altruists", 0),
        support_size=values.get("n0", n),
        accept_threshold=values.get("alpha", base.config.accept_threshold),
    )
    spec = RunSpec(
        mode=values.get("mode", base.mode),
        config=config,
        altruist_counts=tuple(values.get("altruist_counts", base.altruist_counts)),
        support_sizes=tuple(values.get("n0_values", base.support_sizes)),
        replications=values.get("replications", base.replications),
        master_seed=values.get("seed", base.master_seed),
        output_path=values.get("out", base.output_path),
        worker_count=values.get("workers", base.worker_count),
    )
    return spec.validate()


def parse_config(text: str, overrides: Optional[dict] = None) -> RunSpec:
    """Parse a configuration document into a validated :class:`RunSpec`.

    ``overrides`` (same keys as the file) win over file values.
    """
    values = parse_values(text)
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_runspec(values)


def _render_value(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return repr(value) if isinstance(value, float) else str(value)


def render_config(spec: RunSpec) -> str:
    lines = []
    for key, value in spec.as_dict().items():
        if value is None:
            continue
        lines.append(f"{key} = {_render_value(value)}")
    return "\n".join(lines) + "\n"
