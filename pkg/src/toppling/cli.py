"""Command-line entry point: ``toppling <command> [options]``.

Diagnostics go to standard error and are controlled by ``TOPPLING_LOG``
(``off``, ``info`` or ``trace``).  Any validation, guard or numerical
failure exits with status 2 and a single ``toppling: error: ...`` line.
"""

from __future__ import annotations

import argparse
import io
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from . import experiments
from .chipfire import parse_snapshot
from .fractional import frac_grid_play, frac_minimax, parse_rational
from .fuzz import SUITES, run_suites
from .game import GridStrategy, Player, get_strategy, minimax_toppling, play_game, write_trace_csv
from .graph_core import complete_graph, read_edge_list
from .ode_bounds import compute_constants

log = logging.getLogger("toppling")

_LOG_LEVELS = {"off": None, "info": logging.INFO, "trace": logging.DEBUG}


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # one line instead of usage + message
        raise CliError(message)


def configure_logging() -> None:
    raw = os.environ.get("TOPPLING_LOG", "off").strip().lower() or "off"
    if raw not in _LOG_LEVELS:
        raise CliError(f"TOPPLING_LOG must be one of off, info, trace; got {raw!r}")
    for h in list(log.handlers):
        log.removeHandler(h)
    level = _LOG_LEVELS[raw]
    if level is None:
        log.setLevel(logging.CRITICAL + 1)
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.addHandler(handler)
    log.setLevel(level)
    log.propagate = False


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text, encoding="ascii", newline="\n")


def _player(text: str) -> Player:
    try:
        return Player(text)
    except ValueError:
        raise CliError(f"--first must be max or min, got {text!r}") from None


def _graph(args):
    if args.graph_file is not None:
        return read_edge_list(args.graph_file)
    return complete_graph(args.complete)


# -- commands -------------------------------------------------------------


def cmd_bounds(args) -> None:
    res = compute_constants(args.tol)
    log.info("x_plus=%.9f x_bar=%.9f x_minus=%.9f", res.x_plus, res.x_bar, res.x_minus)
    _emit(res.to_json() + "\n", args.out)


def cmd_play(args) -> None:
    first = _player(args.first)
    smax, smin = get_strategy(args.max_strategy), get_strategy(args.min_strategy)
    p = parse_rational(args.p)
    if args.graph_file is not None:
        g = read_edge_list(args.graph_file)
    else:
        if args.n is None:
            raise CliError("play needs --n or --graph-file")
        g = complete_graph(args.n)
    if p != 1:
        if args.start is not None:
            raise CliError("--start is only supported for p = 1")
        if not g.is_complete() or not isinstance(smax, GridStrategy) or not isinstance(smin, GridStrategy):
            raise CliError("fractional play needs a complete graph and grid strategies")
        if g.n < 2:
            raise CliError("fractional play needs n >= 2")
        rec = frac_grid_play(g.n, p, smax, smin, first, trace=args.trace, verify=not args.no_verify)
    else:
        start = None
        if args.start is not None:
            start = parse_snapshot(Path(args.start).read_text(encoding="ascii"), g)
        rec = play_game(g, smax, smin, first, engine=args.engine, trace=args.trace, start=start)
    log.info("turns=%d rounds=%d rounds/n^2=%.6f", rec.turns, rec.rounds, rec.rounds / max(rec.n, 1) ** 2)
    buf = io.StringIO()
    write_trace_csv(rec, buf)
    _emit(buf.getvalue(), args.out)


def cmd_exact(args) -> None:
    g = _graph(args)
    first = _player(args.first)
    p = parse_rational(args.p)
    if p == 1:
        value = minimax_toppling(g, first, guard=args.guard)
    else:
        value = frac_minimax(g, p, first, guard=args.guard)
    _emit(f"{value}\n", args.out)


def _config(args, **extra) -> experiments.ExperimentConfig:
    return experiments.ExperimentConfig(
        n=args.n,
        p=args.p,
        seed=args.seed,
        trials=args.trials,
        workers=args.workers,
        **extra,
    )


def cmd_gnp(args) -> None:
    cfg = _config(args, depth=args.depth, sample=args.sample, rel_tol=args.rel_tol)
    _emit(experiments.run_gnp(cfg), args.out)


def cmd_couple(args) -> None:
    names = args.strategies.split(",")
    if len(names) != 2 or not all(names):
        raise CliError(f"--strategies takes MAX,MIN (e.g. row,triangle), got {args.strategies!r}")
    cfg = _config(
        args,
        max_strategy=names[0],
        min_strategy=names[1],
        first=args.first,
        cap_omega=args.cap_omega,
    )
    _emit(experiments.run_couple(cfg), args.out)


def cmd_fuzz(args) -> None:
    results = run_suites(args.seed, args.suite, args.scale)
    lines = [r.line() for r in results]
    for r in results:
        for example in r.examples:
            log.info("%s counterexample: %s", r.name, example)
    failed = sum(r.failures for r in results)
    total = sum(r.cases for r in results)
    lines.append(f"total: {total - failed} passed, {failed} failed")
    _emit("\n".join(lines) + "\n", args.out)
    if failed:
        raise SystemExit(1)


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toppling", description="Toppling-game experiments on chip-firing graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_out(sp):
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("bounds", help="integrate the ODE systems and print the constants as JSON")
    sp.add_argument("--tol", type=float, default=1e-9)
    common_out(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("play", help="play one game and print its CSV record")
    sp.add_argument("--n", type=int, help="play on K_n")
    sp.add_argument("--graph-file", help="play on the graph in this edge-list file")
    sp.add_argument("--max-strategy", default="row")
    sp.add_argument("--min-strategy", default="triangle")
    sp.add_argument("--first", default="max")
    sp.add_argument("--p", default="1", help="fractional parameter a/b (K_n with grid strategies only)")
    sp.add_argument("--engine", choices=("auto", "grid", "config"), default="auto")
    sp.add_argument("--trace", action="store_true", help="include one CSV line per turn")
    sp.add_argument("--start", help="snapshot file ('v chips' lines) to resume from")
    sp.add_argument("--no-verify", action="store_true", help="skip engine verification of fractional grid play")
    common_out(sp)
    sp.set_defaults(func=cmd_play)

    sp = sub.add_parser("exact", help="exact game value by minimax")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph-file")
    src.add_argument("--complete", type=int, metavar="N")
    sp.add_argument("--first", default="max")
    sp.add_argument("--p", default="1")
    sp.add_argument("--guard", type=int, default=10**8)
    common_out(sp)
    sp.set_defaults(func=cmd_exact)

    def trials_args(sp, p_help):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", required=True, help=p_help)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=1)
        sp.add_argument("--workers", type=int, default=experiments.default_workers())
        common_out(sp)

    sp = sub.add_parser("gnp", help="degree and expansion diagnostics of G(n, p) samples")
    trials_args(sp, "edge probability (decimal)")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--sample", type=int, default=10)
    sp.add_argument("--rel-tol", type=float, default=0.5)
    sp.set_defaults(func=cmd_gnp)

    sp = sub.add_parser("couple", help="fractional K_n / G(n, p) coupled replay")
    trials_args(sp, "exact rational a/b")
    sp.add_argument("--strategies", default="row,triangle", help="MAX,MIN strategy names")
    sp.add_argument("--first", default="min")
    sp.add_argument("--cap-omega", type=float, default=None)
    sp.set_defaults(func=cmd_couple)

    sp = sub.add_parser("fuzz", help="run the randomized property suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=float, default=1.0, help="multiply every suite's case count")
    sp.add_argument("--suite", action="append", choices=sorted(SUITES))
    common_out(sp)
    sp.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        configure_logging()
        args = build_parser().parse_args(argv)
        args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    except KeyboardInterrupt:
        sys.stderr.write("toppling: error: interrupted\n")
        return 130
    except Exception as exc:  # one-line diagnostic, no traceback
        msg = " ".join(str(exc).split()) or type(exc).__name__
        sys.stderr.write(f"toppling: error: {msg}\n")
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
