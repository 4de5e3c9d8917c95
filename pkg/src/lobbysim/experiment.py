"""Monte Carlo replication and the (altruist count, n0) sweep.

Per-game seeds come from ``numpy.random.SeedSequence`` applied to the
tuple ``(master_seed, altruist_count, support_size, replication)``, taking
its first 64-bit output word. A cell therefore never depends on which
other cells are in the grid, on their order, or on the worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .dynamics import run_game
from .model import ConfigError, GameConfig, Strategy, check_seed

DEFAULT_REPLICATIONS = 200
DEFAULT_ALTRUIST_COUNTS = tuple(range(10, 100, 10))
DEFAULT_SUPPORT_SIZES = tuple(range(10, 101, 10))


@dataclass(frozen=True)
class CellStats:
    altruist_count: int
    support_size: int
    replications: int
    mean_survival: float
    stderr_survival: float
    mean_survivors_by_strategy: dict


@dataclass(frozen=True)
class SweepResult:
    base_config: GameConfig
    grid: tuple[CellStats, ...]
    master_seed: int
    replications: int

    def cell(self, altruist_count: int, support_size: int) -> CellStats:
        for c in self.grid:
            if c.altruist_count == altruist_count and c.support_size == support_size:
                return c
        raise KeyError((altruist_count, support_size))

    @property
    def altruist_counts(self) -> list[int]:
        return sorted({c.altruist_count for c in self.grid})

    @property
    def support_sizes(self) -> list[int]:
        return sorted({c.support_size for c in self.grid})

    def surface(self) -> np.ndarray:
        """Mean survival as an array indexed ``[altruist_count, support_size]``."""
        a_idx = {a: i for i, a in enumerate(self.altruist_counts)}
        s_idx = {s: j for j, s in enumerate(self.support_sizes)}
        out = np.full((len(a_idx), len(s_idx)), np.nan)
        for c in self.grid:
            out[a_idx[c.altruist_count], s_idx[c.support_size]] = c.mean_survival
        return out


def game_seed(master_seed: int, *coords: int) -> int:
    entropy = [check_seed(master_seed), *(int(c) for c in coords)]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


def run_replications(
    config: GameConfig,
    replications: int = DEFAULT_REPLICATIONS,
    master_seed: int = 0,
    *,
    seed_coords: Optional[Sequence[int]] = None,
) -> CellStats:
    """Average ``replications`` independent games of one configuration.

    ``seed_coords`` overrides the cell coordinates mixed into each game
    seed; by default they are ``(altruist_count, support_size)``.
    """
    config.validate()
    if isinstance(replications, bool) or not isinstance(replications, int) or replications < 1:
        raise ConfigError("replications", f"must be an integer >= 1, got {replications!r}")
    coords = tuple(seed_coords) if seed_coords is not None else (config.altruist_count, config.support_size)
    survival = np.empty(replications)
    altruists = np.empty(replications)
    egoists = np.empty(replications)
    for r in range(replications):
        res = run_game(config, game_seed(master_seed, *coords, r))
        survival[r] = res.survival_fraction
        altruists[r] = res.survivors_by_strategy[Strategy.ALTRUIST]
        egoists[r] = res.survivors_by_strategy[Strategy.EGOIST]
    stderr = float(survival.std(ddof=1) / math.sqrt(replications)) if replications > 1 else 0.0
    return CellStats(
        altruist_count=config.altruist_count,
        support_size=config.support_size,
        replications=replications,
        mean_survival=float(survival.mean()),
        stderr_survival=stderr,
        mean_survivors_by_strategy={
            Strategy.EGOIST: float(egoists.mean()),
            Strategy.ALTRUIST: float(altruists.mean()),
        },
    )


def validate_axes(config: GameConfig, altruist_counts, support_sizes) -> None:
    bad_a = [a for a in altruist_counts if not (isinstance(a, int) and 0 <= a <= config.n)]
    bad_s = [s for s in support_sizes if not (isinstance(s, int) and 1 <= s <= config.n)]
    problems = []
    if bad_a:
        problems.append(f"altruist_counts outside [0, {config.n}]: {bad_a}")
    if bad_s:
        problems.append(f"support_sizes outside [1, {config.n}]: {bad_s}")
    if problems:
        raise ConfigError("grid", "; ".join(problems))
    for name, axis in (("altruist_counts", altruist_counts), ("support_sizes", support_sizes)):
        if not axis:
            raise ConfigError(name, "must not be empty")
        if len(set(axis)) != len(axis):
            raise ConfigError(name, f"contains duplicates: {list(axis)}")


def _cell_job(args) -> CellStats:
    config, replications, master_seed, coords = args
    return run_replications(config, replications, master_seed, seed_coords=coords)


def sweep(
    base_config: GameConfig,
    altruist_counts: Iterable[int] = DEFAULT_ALTRUIST_COUNTS,
    support_sizes: Iterable[int] = DEFAULT_SUPPORT_SIZES,
    replications: int = DEFAULT_REPLICATIONS,
    master_seed: int = 0,
    *,
    workers: int = 1,
    collapse_zero_altruist_row: bool = False,
) -> SweepResult:
    """Run every cell of the grid ``altruist_counts x support_sizes``.

    ``collapse_zero_altruist_row`` (a test hook) drops ``support_size``
    from the seed of the ``altruist_count == 0`` row, so that row's cells
    are built from the same games.
    """
    altruist_counts = sorted(altruist_counts)
    support_sizes = sorted(support_sizes)
    base_config.validate()
    validate_axes(base_config, altruist_counts, support_sizes)
    check_seed(master_seed)
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise ConfigError("workers", f"must be an integer >= 1, got {workers!r}")

    jobs = []
    for a in altruist_counts:
        for s in support_sizes:
            coords = (a,) if (collapse_zero_altruist_row and a == 0) else (a, s)
            jobs.append((base_config.with_cell(a, s), replications, master_seed, coords))

    if workers == 1:
        cells = [_cell_job(j) for j in jobs]
    else:
        # map() yields in submission order, whatever the completion order.
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_cell_job, jobs))
    return SweepResult(base_config, tuple(cells), check_seed(master_seed), replications)


def default_workers() -> int:
    return os.cpu_count() or 1


def within_one_stderr(best: CellStats, other: CellStats) -> bool:
    combined = math.hypot(best.stderr_survival, other.stderr_survival)
    return best.mean_survival - other.mean_survival <= combined


def find_optimum(result: SweepResult) -> tuple[CellStats, list[CellStats]]:
    """Best cell by mean survival, plus the cells statistically tied with it.

    Ties on the mean go to the smaller altruist count, then the smaller
    support size. The plateau lists every cell whose mean is within one
    combined standard error of the best, in grid order.
    """
    if not result.grid:
        raise ValueError("empty sweep")
    best = min(result.grid, key=lambda c: (-c.mean_survival, c.altruist_count, c.support_size))
    plateau = [c for c in result.grid if within_one_stderr(best, c)]
    return best, plateau
