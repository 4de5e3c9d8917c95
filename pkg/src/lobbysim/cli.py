"""Command line entry point: ``lobbysim run`` and ``lobbysim sweep``.

Flags override values from ``--config``. Data goes to ``--out`` (or to
stdout when no path is given); progress and errors go to stderr. The exit
status is 0 on success, 2 for configuration or usage errors and 1 for I/O
failures.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .dynamics import run_game
from .experiment import find_optimum, sweep
from .model import ConfigError
from .runspec import ConfigParseError, RunSpec, parse_config
from .report import (
    GAME_HEADER,
    SWEEP_HEADER,
    TRACE_HEADER,
    TraceMissingError,
    game_row,
    sweep_rows,
    write_game_csv,
    write_sweep_csv,
    write_trace,
)

log = logging.getLogger("lobbysim")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lobbysim",
        description="Voting in a stochastic environment with egoist and altruist agents.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", metavar="FILE", help="key = value configuration file")
        p.add_argument("--out", metavar="PATH", help="output CSV path (default: stdout)")
        p.add_argument("--seed", type=int, metavar="INT", help="master seed (unsigned 64-bit)")
        p.add_argument("--no-figure", action="store_true", help="do not render the PNG figure next to --out")
        p.add_argument("-q", "--quiet", action="store_true", help="only report errors on stderr")

    run = sub.add_parser("run", help="play a single game")
    common(run)
    run.add_argument("--trace", action="store_true", help="write the per-step trace instead of the summary row")

    sw = sub.add_parser("sweep", help="sweep altruist count x n0 with replications")
    common(sw)
    sw.add_argument("--replications", type=int, metavar="INT", help="games per grid cell (default 200)")
    sw.add_argument("--workers", type=int, metavar="INT", help="worker processes (default: CPU count)")
    return parser


def load_runspec(args: argparse.Namespace) -> RunSpec:
    text = ""
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc.strerror or exc}") from exc
    overrides = {
        "seed": args.seed,
        "out": args.out,
        "replications": getattr(args, "replications", None),
        "workers": getattr(args, "workers", None),
    }
    spec = parse_config(text, overrides)
    if args.command == "sweep":
        mode = "sweep"
    else:
        mode = "trace" if args.trace or spec.mode == "trace" else "single-game"
    return dataclasses.replace(spec, mode=mode).validate()


def _figure_path(out: str) -> Path:
    return Path(out).with_suffix(".png")


def _stdout_csv(header, rows) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def cmd_run(spec: RunSpec, figure: bool) -> None:
    tracing = spec.mode == "trace"
    result = run_game(spec.config, spec.master_seed, trace=tracing)
    log.info(
        "survivors %d/%d (%.3f), accepted %d/%d proposals",
        result.survivors_total, spec.config.n, result.survival_fraction,
        result.accepted_count, spec.config.steps,
    )
    if spec.output_path is None:
        if tracing:
            _stdout_csv(TRACE_HEADER, (
                (r.step_index, r.decision.value, r.yes_count, r.voters, r.alive_after,
                 ";".join(map(str, r.newly_ruined)))
                for r in result.trace
            ))
        else:
            _stdout_csv(GAME_HEADER, [game_row(result)])
        return
    if tracing:
        write_trace(result, spec.output_path, spec, master_seed=spec.master_seed)
        if figure:
            from .plotting import plot_trace
            plot_trace(result, _figure_path(spec.output_path))
    else:
        write_game_csv(result, spec.output_path, spec, master_seed=spec.master_seed)
    log.info("wrote %s", spec.output_path)


def cmd_sweep(spec: RunSpec, figure: bool) -> None:
    cells = len(spec.altruist_counts) * len(spec.support_sizes)
    log.info("sweeping %d cells x %d replications on %d worker(s)", cells, spec.replications, spec.worker_count)
    t0 = time.perf_counter()
    result = sweep(
        spec.config,
        spec.altruist_counts,
        spec.support_sizes,
        spec.replications,
        spec.master_seed,
        workers=spec.worker_count,
    )
    best, plateau = find_optimum(result)
    log.info(
        "done in %.1fs; best a=%d n0=%d mean=%.4f (s.e. %.4f); %d cell(s) within 1 s.e.",
        time.perf_counter() - t0, best.altruist_count, best.support_size,
        best.mean_survival, best.stderr_survival, len(plateau),
    )
    if spec.output_path is None:
        _stdout_csv(SWEEP_HEADER, sweep_rows(result))
        return
    write_sweep_csv(result, spec.output_path, spec)
    log.info("wrote %s", spec.output_path)
    if figure:
        from .plotting import plot_sweep
        fig_path = plot_sweep(result, _figure_path(spec.output_path))
        log.info("wrote %s", fig_path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        spec = load_runspec(args)
        if spec.mode == "sweep":
            cmd_sweep(spec, figure=not args.no_figure)
        else:
            cmd_run(spec, figure=not args.no_figure)
    except (ConfigError, ConfigParseError, TraceMissingError) as exc:
        print(f"lobbysim: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lobbysim: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
