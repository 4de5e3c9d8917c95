"""Domain types, the Gaussian proposal source and capital ranking.

Agents are indexed ``0..n-1`` for the whole game. The first
``altruist_count`` ids are altruists, the rest egoists.

Random numbers come from numpy's ``Generator`` on top of ``PCG64``, and
normal variates use its ziggurat transform (``Generator.normal``). A game
seed is a 64-bit unsigned integer fed straight into ``PCG64``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Protocol, Sequence

import numpy as np

RNG_ALGORITHM = "numpy.random.PCG64 + Generator.normal (ziggurat)"

UINT64_MAX = 2**64 - 1


class ConfigError(ValueError):
    """Raised when a configuration value violates its constraint.

    ``field`` names the offending parameter.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class Strategy(enum.Enum):
    EGOIST = "egoist"
    ALTRUIST = "altruist"


@dataclass
class AgentState:
    id: int
    strategy: Strategy
    capital: float
    alive: bool = True


@dataclass(frozen=True)
class EnvironmentParams:
    mu: float = 0.0
    sigma: float = 12.0

    def validate(self) -> None:
        if not math.isfinite(self.mu):
            raise ConfigError("mu", f"must be finite, got {self.mu!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ConfigError("sigma", f"must be a finite number > 0, got {self.sigma!r}")


@dataclass(frozen=True)
class Proposal:
    """Capital increments, one per original agent id (ruined ones included)."""

    increments: np.ndarray

    def __post_init__(self):
        inc = np.asarray(self.increments, dtype=np.float64)
        if inc.ndim != 1:
            raise ValueError("proposal increments must be a 1-D vector")
        if not np.all(np.isfinite(inc)):
            raise ValueError("proposal increments must be finite")
        object.__setattr__(self, "increments", inc)

    def __len__(self) -> int:
        return len(self.increments)


@dataclass(frozen=True)
class GameConfig:
    """All parameters of one game.

    ``support_size`` (the screen width n0) defaults to the whole society.
    ``accept_threshold`` is the fraction of alive voters that the yes
    count has to strictly exceed for a proposal to pass.
    """

    n: int = 100
    initial_capital: float = 40.0
    env: EnvironmentParams = field(default_factory=EnvironmentParams)
    steps: int = 500
    altruist_count: int = 0
    support_size: int | None = None
    accept_threshold: float = 0.5

    def __post_init__(self):
        if self.support_size is None:
            object.__setattr__(self, "support_size", self.n)

    def validate(self) -> "GameConfig":
        _check_int("n", self.n, lo=1)
        if not (math.isfinite(self.initial_capital) and self.initial_capital >= 0):
            raise ConfigError("initial_capital", f"must be finite and >= 0, got {self.initial_capital!r}")
        self.env.validate()
        _check_int("steps", self.steps, lo=1)
        _check_int("altruist_count", self.altruist_count, lo=0, hi=self.n)
        _check_int("support_size", self.support_size, lo=1, hi=self.n)
        a = self.accept_threshold
        if not (isinstance(a, (int, float)) and 0 <= a < 1):
            raise ConfigError("accept_threshold", f"must lie in [0, 1), got {a!r}")
        return self

    def with_cell(self, altruist_count: int, support_size: int) -> "GameConfig":
        return replace(self, altruist_count=altruist_count, support_size=support_size)

    def strategy_of(self, agent_id: int) -> Strategy:
        return Strategy.ALTRUIST if agent_id < self.altruist_count else Strategy.EGOIST


def _check_int(name: str, value, lo: int, hi: int | None = None) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigError(name, f"must be an integer, got {value!r}")
    if value < lo or (hi is not None and value > hi):
        bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise ConfigError(name, f"must be {bound}, got {value}")


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed <= UINT64_MAX:
        raise ConfigError("seed", f"must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def initial_population(config: GameConfig) -> list[AgentState]:
    return [
        AgentState(i, config.strategy_of(i), float(config.initial_capital))
        for i in range(config.n)
    ]


def sample_proposal(env: EnvironmentParams, n: int, rng: np.random.Generator) -> Proposal:
    return Proposal(rng.normal(env.mu, env.sigma, size=n))


def poorest_alive(population: Sequence[AgentState], k: int) -> list[int]:
    """Ids of the ``k`` poorest alive agents, poorest first.

    Ties in capital go to the smaller id. Fewer than ``k`` ids come back
    when fewer agents are alive.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    alive = sorted((a.capital, a.id) for a in population if a.alive)
    return [agent_id for _, agent_id in alive[:k]]


class ProposalSource(Protocol):
    """Anything that can hand the game loop one proposal per step."""

    def draw(self, n: int) -> np.ndarray: ...


class GaussianSource:
    """I.i.d. Normal(mu, sigma) increments from a dedicated generator."""

    def __init__(self, env: EnvironmentParams, rng: np.random.Generator):
        self.env = env
        self.rng = rng

    def draw(self, n: int) -> np.ndarray:
        return sample_proposal(self.env, n, self.rng).increments

    def draw_block(self, steps: int, n: int) -> np.ndarray:
        # Same stream as `steps` successive draw(n) calls.
        return self.rng.normal(self.env.mu, self.env.sigma, size=(steps, n))


class SequenceSource:
    """Replays a fixed list of proposals; used to inject scenarios."""

    def __init__(self, proposals):
        self._rows = [np.asarray(p, dtype=np.float64) for p in proposals]
        self._pos = 0

    def draw(self, n: int) -> np.ndarray:
        if self._pos >= len(self._rows):
            raise IndexError("injected proposal sequence exhausted")
        row = self._rows[self._pos]
        if row.shape != (n,):
            raise ValueError(f"injected proposal {self._pos} has shape {row.shape}, expected ({n},)")
        self._pos += 1
        return row


def draw_increments(source: ProposalSource, steps: int, n: int) -> np.ndarray:
    """Pull ``steps`` proposals from ``source`` as a ``(steps, n)`` matrix."""
    block = getattr(source, "draw_block", None)
    if block is not None:
        inc = np.asarray(block(steps, n), dtype=np.float64)
    else:
        inc = np.empty((steps, n), dtype=np.float64)
        for t in range(steps):
            inc[t] = source.draw(n)
    if not np.all(np.isfinite(inc)):
        raise ValueError("proposal source produced non-finite increments")
    return inc
