"""Deterministic multi-trial experiments.

Trial ``t`` of an experiment seeded with ``seed`` uses the graph seed
``seed + t``; :func:`~toppling.graph_core.sample_gnp` hashes that integer
through ``SeedSequence`` so neighbouring seeds give independent streams.
Rows are produced by pure functions of their arguments and collected in
trial order, so the output bytes never depend on the worker count.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .fractional import COUPLED_HEADER, coupled_replay, parse_rational
from .game.strategies import GridStrategy, Player, get_strategy
from .graph_core import expansion_report, sample_gnp

__all__ = [
    "ExperimentConfig",
    "default_workers",
    "run_trials",
    "gnp_header",
    "gnp_row",
    "couple_row",
    "run_gnp",
    "run_couple",
    "COUPLED_HEADER",
]

log = logging.getLogger("toppling")


def default_workers() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:  # pragma: no cover - non-Linux
        return max(1, os.cpu_count() or 1)


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated parameters shared by the multi-trial commands."""

    n: int
    p: str
    seed: int = 0
    trials: int = 1
    workers: int = 1
    max_strategy: str = "row"
    min_strategy: str = "triangle"
    first: str = "min"
    depth: int = 2
    sample: int = 10
    rel_tol: float = 0.5
    cap_omega: float | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"--n must be positive, got {self.n}")
        if self.seed < 0:
            raise ValueError(f"--seed must be nonnegative, got {self.seed}")
        if self.trials < 1:
            raise ValueError(f"--trials must be positive, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"--workers must be positive, got {self.workers}")
        if self.first not in ("max", "min"):
            raise ValueError(f"--first must be max or min, got {self.first!r}")
        if self.depth < 1:
            raise ValueError("--depth must be at least 1")
        if not 0 <= self.sample <= self.n:
            raise ValueError(f"--sample must lie in 0..{self.n}")
        if self.cap_omega is not None and self.cap_omega <= 0:
            raise ValueError("--cap-omega must be positive")

    @property
    def probability(self) -> float:
        """``p`` as a decimal edge probability."""
        try:
            q = float(Fraction(self.p))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad probability {self.p!r}") from None
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"edge probability must lie in [0, 1], got {self.p}")
        return q

    @property
    def rational(self) -> Fraction:
        """``p`` as an exact rational ``a/b`` in ``(0, 1]``."""
        return parse_rational(self.p)

    def grid_strategies(self) -> tuple[GridStrategy, GridStrategy]:
        out = []
        for name in (self.max_strategy, self.min_strategy):
            s = get_strategy(name)
            if not isinstance(s, GridStrategy):
                raise ValueError(f"coupled replay needs grid strategies, got {name!r}")
            out.append(s)
        return out[0], out[1]


def run_trials(fn: Callable, jobs: Sequence[tuple], workers: int = 1) -> list:
    """``[fn(*job) for job in jobs]``, optionally in worker processes."""
    if workers <= 1 or len(jobs) <= 1:
        out = []
        for i, job in enumerate(jobs):
            out.append(fn(*job))
            log.info("trial %d/%d done", i + 1, len(jobs))
        return out
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        futures = [pool.submit(fn, *job) for job in jobs]
        out = []
        for i, fut in enumerate(futures):
            out.append(fut.result())
            log.info("trial %d/%d done", i + 1, len(jobs))
        return out


def gnp_header(depth: int) -> str:
    shells = ",".join(f"shell_{i}" for i in range(1, depth + 1))
    return (
        "seed,n,p,edges,components,isolated,degree_min,degree_max,degree_mean,d,"
        f"{shells},flagged"
    )


def gnp_row(n: int, p: float, seed: int, depth: int, sample: int, rel_tol: float) -> str:
    """Degree and BFS-shell diagnostics for one sampled G(n, p)."""
    g = sample_gnp(n, p, seed)
    rep = expansion_report(g, p, depth, sample, seed=seed, rel_tol=rel_tol)
    means = []
    for i in range(depth):
        sizes = [s[i] if i < len(s) else 0 for s in rep.shells.values()]
        means.append(sum(sizes) / len(sizes) if sizes else 0.0)
    isolated = sum(1 for d in g.degrees if d == 0)
    cells = [
        str(seed),
        str(n),
        repr(p),
        str(g.num_edges),
        str(len(g.components())),
        str(isolated),
        str(rep.degree_min),
        str(rep.degree_max),
        f"{rep.degree_mean:.6f}",
        f"{rep.d:.6f}",
        *(f"{m:.6f}" for m in means),
        str(len(rep.flagged)),
    ]
    return ",".join(cells)


def couple_row(
    n: int, p: str, seed: int, smax: str, smin: str, first: str, cap_omega: float | None
) -> str:
    """One coupled-replay trial on ``sample_gnp(n, p, seed)``."""
    q = parse_rational(p)
    g = sample_gnp(n, float(q), seed)
    res = coupled_replay(
        g,
        q,
        get_strategy(smax),
        get_strategy(smin),
        Player(first),
        seed=seed,
        cap_omega=cap_omega,
    )
    log.debug("couple seed=%d len_frac_kn=%d len_g=%d", seed, res.len_frac_kn, res.len_g)
    return res.csv_row()


def run_gnp(cfg: ExperimentConfig) -> str:
    q = cfg.probability
    jobs = [(cfg.n, q, cfg.seed + t, cfg.depth, cfg.sample, cfg.rel_tol) for t in range(cfg.trials)]
    rows = run_trials(gnp_row, jobs, cfg.workers)
    return "\n".join([gnp_header(cfg.depth), *rows]) + "\n"


def run_couple(cfg: ExperimentConfig) -> str:
    p = cfg.rational
    cfg.grid_strategies()
    text = f"{p.numerator}/{p.denominator}"
    jobs = [
        (cfg.n, text, cfg.seed + t, cfg.max_strategy, cfg.min_strategy, cfg.first, cfg.cap_omega)
        for t in range(cfg.trials)
    ]
    rows = run_trials(couple_row, jobs, cfg.workers)
    return "\n".join([COUPLED_HEADER, *rows]) + "\n"
