"""Delimited output: sweep surfaces, game traces, metadata sidecars.

Every data file ``PATH`` gets a JSON sidecar ``PATH.meta.json`` holding
the effective run specification, the master seed, the package version and
the RNG description. Only the sidecar's ``created`` field changes between
identical reruns.
"""

from __future__ import annotations

import csv
import datetime
import json
import os
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .dynamics import GameResult
from .experiment import SweepResult
from .model import RNG_ALGORITHM, Strategy
from .runspec import RunSpec, render_config

SIDECAR_SUFFIX = ".meta.json"

SWEEP_HEADER = (
    "altruist_count",
    "n0",
    "replications",
    "mean_survival",
    "stderr_survival",
    "mean_survivors_egoist",
    "mean_survivors_altruist",
)
TRACE_HEADER = ("step", "decision", "yes", "voters", "alive_after", "newly_ruined")
GAME_HEADER = ("survival_fraction", "survivors_total", "survivors_egoist", "survivors_altruist", "accepted_count")


class TraceMissingError(ValueError):
    pass


def _open_for_writing(path):
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True)
        return open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _write_rows(path, header, rows) -> None:
    with _open_for_writing(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def sweep_rows(sweep: SweepResult):
    for c in sorted(sweep.grid, key=lambda c: (c.altruist_count, c.support_size)):
        yield (
            c.altruist_count,
            c.support_size,
            c.replications,
            # repr() of a float is its shortest round-trip form.
            repr(c.mean_survival),
            repr(c.stderr_survival),
            repr(c.mean_survivors_by_strategy[Strategy.EGOIST]),
            repr(c.mean_survivors_by_strategy[Strategy.ALTRUIST]),
        )


def write_sweep_csv(sweep: SweepResult, path, spec: Optional[RunSpec] = None) -> Path:
    _write_rows(path, SWEEP_HEADER, sweep_rows(sweep))
    write_sidecar(path, spec, master_seed=sweep.master_seed, kind="sweep")
    return Path(path)


def write_trace(result: GameResult, path, spec: Optional[RunSpec] = None, master_seed: Optional[int] = None) -> Path:
    if result.trace is None:
        raise TraceMissingError("game result has no trace; rerun with tracing enabled (--trace)")
    rows = (
        (r.step_index, r.decision.value, r.yes_count, r.voters, r.alive_after, ";".join(map(str, r.newly_ruined)))
        for r in result.trace
    )
    _write_rows(path, TRACE_HEADER, rows)
    write_sidecar(path, spec, master_seed=master_seed, kind="trace")
    return Path(path)


def game_row(result: GameResult) -> tuple:
    s = result.survivors_by_strategy
    return (
        repr(result.survival_fraction),
        result.survivors_total,
        s[Strategy.EGOIST],
        s[Strategy.ALTRUIST],
        result.accepted_count,
    )


def write_game_csv(result: GameResult, path, spec: Optional[RunSpec] = None, master_seed: Optional[int] = None) -> Path:
    _write_rows(path, GAME_HEADER, [game_row(result)])
    write_sidecar(path, spec, master_seed=master_seed, kind="single-game")
    return Path(path)


def sidecar_path(path) -> Path:
    return Path(os.fspath(path) + SIDECAR_SUFFIX)


def write_sidecar(path, spec: Optional[RunSpec], master_seed: Optional[int], kind: str) -> Path:
    meta = {
        "kind": kind,
        "data_file": Path(path).name,
        "lobbysim_version": __version__,
        "numpy_version": np.__version__,
        "rng": RNG_ALGORITHM,
        "seed_derivation": "SeedSequence([master_seed, altruist_count, n0, replication]).generate_state(1, uint64)[0]",
        "master_seed": master_seed,
        "run_spec": spec.as_dict() if spec is not None else None,
        "run_spec_config": render_config(spec) if spec is not None else None,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    target = sidecar_path(path)
    with _open_for_writing(target) as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    return target
