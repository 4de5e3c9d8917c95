"""Voting rules for egoists and altruists, and the collective decision."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .model import AgentState, GameConfig, Proposal, Strategy, poorest_alive


class Vote(enum.Enum):
    YES = "yes"
    NO = "no"


class Decision(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"


@dataclass(frozen=True)
class Tally:
    yes_count: int
    voters: int

    def __post_init__(self):
        if not 0 <= self.yes_count <= self.voters:
            raise ValueError(f"invalid tally: yes={self.yes_count}, voters={self.voters}")


def egoist_ballot(agent_increment: float) -> Vote:
    return Vote.YES if agent_increment > 0 else Vote.NO


def altruist_ballot(population: Sequence[AgentState], proposal: Proposal, support_size: int) -> Vote:
    """Yes iff the ``support_size`` poorest alive agents gain in total.

    The increments are summed poorest first; the voter's own increment
    only counts if it sits inside the screen.
    """
    total = 0.0
    for agent_id in poorest_alive(population, support_size):
        total += proposal.increments[agent_id]
    return Vote.YES if total > 0 else Vote.NO


def collect_ballots(population: Sequence[AgentState], proposal: Proposal, config: GameConfig) -> Tally:
    yes = voters = 0
    altruist_vote = None
    for agent in population:
        if not agent.alive:
            continue
        voters += 1
        if agent.strategy is Strategy.ALTRUIST:
            # Same vote for every altruist, so compute it once.
            if altruist_vote is None:
                altruist_vote = altruist_ballot(population, proposal, config.support_size)
            vote = altruist_vote
        else:
            vote = egoist_ballot(proposal.increments[agent.id])
        if vote is Vote.YES:
            yes += 1
    return Tally(yes, voters)


def decide(tally: Tally, accept_threshold: float) -> Decision:
    # voters == 0 gives 0 > 0, i.e. rejected.
    if tally.yes_count > accept_threshold * tally.voters:
        return Decision.ACCEPTED
    return Decision.REJECTED
