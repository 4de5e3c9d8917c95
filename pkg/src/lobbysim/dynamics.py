"""Per-step transition (vote, apply, ruin) and the fixed-length game loop.

Two drivers share the same rules:

* :func:`run_game` plays the game with the compiled kernel and is what
  experiments use.
* :func:`run_game_reference` walks :func:`step` over ``AgentState``
  objects. It is slow but reads like the model definition.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from . import _kernel
from .ballots import Decision, collect_ballots, decide
from .model import (
    AgentState,
    GameConfig,
    GaussianSource,
    Proposal,
    ProposalSource,
    Strategy,
    draw_increments,
    initial_population,
    make_rng,
)


@dataclass(frozen=True)
class StepRecord:
    step_index: int
    decision: Decision
    yes_count: int
    voters: int
    newly_ruined: tuple[int, ...]
    alive_after: int


@dataclass(frozen=True)
class GameResult:
    n: int
    survivors_total: int
    survivors_by_strategy: dict
    final_capitals: tuple[float, ...]
    accepted_count: int
    trace: Optional[tuple[StepRecord, ...]] = None

    @property
    def survival_fraction(self) -> float:
        return self.survivors_total / self.n


def apply_proposal(population: Sequence[AgentState], proposal: Proposal) -> list[AgentState]:
    return [
        replace(a, capital=a.capital + proposal.increments[a.id]) if a.alive else a
        for a in population
    ]


def ruin_sweep(population: Sequence[AgentState]) -> tuple[list[AgentState], list[int]]:
    """Mark alive agents with strictly negative capital as ruined."""
    updated, ruined = [], []
    for a in population:
        if a.alive and a.capital < 0:
            updated.append(replace(a, alive=False))
            ruined.append(a.id)
        else:
            updated.append(a)
    return updated, sorted(ruined)


def step(
    population: Sequence[AgentState],
    proposal: Proposal,
    config: GameConfig,
    step_index: int = 0,
) -> tuple[list[AgentState], StepRecord]:
    tally = collect_ballots(population, proposal, config)
    decision = decide(tally, config.accept_threshold)
    ruined: list[int] = []
    if decision is Decision.ACCEPTED:
        population, ruined = ruin_sweep(apply_proposal(population, proposal))
    else:
        population = list(population)
    alive_after = sum(a.alive for a in population)
    record = StepRecord(step_index, decision, tally.yes_count, tally.voters, tuple(ruined), alive_after)
    return population, record


def _summarize(config: GameConfig, capitals, alive, accepted_count: int, trace) -> GameResult:
    alive = [bool(x) for x in alive]
    altruists = sum(alive[: config.altruist_count])
    total = sum(alive)
    return GameResult(
        n=config.n,
        survivors_total=total,
        survivors_by_strategy={Strategy.EGOIST: total - altruists, Strategy.ALTRUIST: altruists},
        final_capitals=tuple(float(c) for c in capitals),
        accepted_count=accepted_count,
        trace=trace,
    )


def _default_source(config: GameConfig, seed: Optional[int], source: Optional[ProposalSource]):
    if source is not None:
        return source
    if seed is None:
        raise ValueError("either a seed or a proposal source is required")
    return GaussianSource(config.env, make_rng(seed))


def run_game(
    config: GameConfig,
    seed: Optional[int] = None,
    source: Optional[ProposalSource] = None,
    *,
    trace: bool = False,
    stop_when_extinct: bool = False,
) -> GameResult:
    """Play ``config.steps`` voting rounds and report who survived.

    Proposals come from ``source`` when given, otherwise from a Gaussian
    source seeded with ``seed``. All proposals are drawn before play
    starts; the draw count never depends on the trajectory, so this is
    the same stream a step-by-step loop would consume.

    ``stop_when_extinct`` only skips the bookkeeping of steps after the
    last agent is ruined; results are unchanged.
    """
    config.validate()
    src = _default_source(config, seed, source)
    inc = draw_increments(src, config.steps, config.n)
    capital, alive, ruin_step, accepted, yes, voters, alive_after = _kernel.play(
        inc,
        float(config.initial_capital),
        config.altruist_count,
        config.support_size,
        float(config.accept_threshold),
        stop_when_extinct,
    )
    records = None
    if trace:
        records = _trace_from_arrays(ruin_step, accepted, yes, voters, alive_after)
    return _summarize(config, capital, alive, int(accepted.sum()), records)


def _trace_from_arrays(ruin_step, accepted, yes, voters, alive_after) -> tuple[StepRecord, ...]:
    ruined_at: dict[int, list[int]] = {}
    for agent_id in np.flatnonzero(ruin_step >= 0):
        ruined_at.setdefault(int(ruin_step[agent_id]), []).append(int(agent_id))
    return tuple(
        StepRecord(
            step_index=t,
            decision=Decision.ACCEPTED if accepted[t] else Decision.REJECTED,
            yes_count=int(yes[t]),
            voters=int(voters[t]),
            newly_ruined=tuple(ruined_at.get(t, ())),
            alive_after=int(alive_after[t]),
        )
        for t in range(len(accepted))
    )


def run_game_reference(
    config: GameConfig,
    seed: Optional[int] = None,
    source: Optional[ProposalSource] = None,
    *,
    trace: bool = False,
) -> GameResult:
    config.validate()
    src = _default_source(config, seed, source)
    inc = draw_increments(src, config.steps, config.n)
    population = initial_population(config)
    records = []
    for t in range(config.steps):
        population, rec = step(population, Proposal(inc[t]), config, t)
        records.append(rec)
    accepted = sum(r.decision is Decision.ACCEPTED for r in records)
    return _summarize(
        config,
        [a.capital for a in population],
        [a.alive for a in population],
        accepted,
        tuple(records) if trace else None,
    )
