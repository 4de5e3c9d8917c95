"""Capital dynamics under voting in a stochastic environment.

A society of egoists and support-screen altruists votes on random
vectors of capital increments; agents whose capital goes negative are
ruined. The package plays single games, replicates them and sweeps the
altruist count against the screen width.
"""

__version__ = "0.1.0"

from .model import (  # noqa: E402
    AgentState,
    ConfigError,
    EnvironmentParams,
    GameConfig,
    GaussianSource,
    Proposal,
    SequenceSource,
    Strategy,
    make_rng,
    poorest_alive,
    sample_proposal,
)
from .ballots import Decision, Tally, Vote, altruist_ballot, collect_ballots, decide, egoist_ballot  # noqa: E402
from .dynamics import (  # noqa: E402
    GameResult,
    StepRecord,
    apply_proposal,
    ruin_sweep,
    run_game,
    run_game_reference,
    step,
)
from .experiment import CellStats, SweepResult, find_optimum, run_replications, sweep  # noqa: E402

__all__ = [
    "AgentState", "ConfigError", "EnvironmentParams", "GameConfig", "GaussianSource", "Proposal",
    "SequenceSource", "Strategy", "make_rng", "poorest_alive", "sample_proposal",
    "Decision", "Tally", "Vote", "altruist_ballot", "collect_ballots", "decide", "egoist_ballot",
    "GameResult", "StepRecord", "apply_proposal", "ruin_sweep", "run_game", "run_game_reference", "step",
    "CellStats", "SweepResult", "find_optimum", "run_replications", "sweep",
]
