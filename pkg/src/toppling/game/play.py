"""The alternating toppling game loop and game records."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import TextIO

from ..chipfire import ChipConfig, ChipEngine, stabilize_or_detect
from ..graph_core import Graph
from .grid import GridView
from .strategies import GridStrategy, Player, Strategy

__all__ = ["TurnRecord", "GameRecord", "play_game", "play_grid", "write_trace_csv"]

TRACE_HEADER = "turn,player,target,fired,total_chips,in_chips,out_chips"


@dataclass(frozen=True)
class TurnRecord:
    turn: int
    player: Player
    target: int
    fired: int
    total_chips: int
    in_chips: int
    out_chips: int


@dataclass
class GameRecord:
    turns: int
    first: Player
    end_reason: str
    n: int
    trace: list[TurnRecord] | None = field(default=None, repr=False)
    in_chips: int | None = None
    out_chips: int | None = None
    start_chips: int = 0

    @property
    def total_chips(self) -> int:
        return self.start_chips + self.turns

    @property
    def rounds(self) -> int:
        return (self.turns + 1) // 2

    @property
    def last_player(self) -> Player | None:
        if self.turns == 0:
            return None
        return self.first if self.turns % 2 else self.first.other

    @property
    def rounds_per_n2(self) -> float:
        return self.rounds / self.n**2


def _degenerate(g: Graph, first: Player) -> GameRecord | None:
    if g.n == 0:
        return GameRecord(0, first, "empty graph", 0, [])
    if min(g.degrees) == 0:
        # a degree-0 vertex fires forever, so the empty configuration is volatile
        return GameRecord(0, first, "isolated vertex", g.n, [])
    return None


def play_game(
    g: Graph,
    smax: Strategy,
    smin: Strategy,
    first: Player = Player.MAX,
    *,
    engine: str = "auto",
    trace: bool = False,
    start: ChipConfig | None = None,
) -> GameRecord:
    """Play until the configuration turns volatile.

    ``engine="grid"`` runs grid strategies on K_n through :class:`GridView`;
    ``engine="config"`` places chips on a :class:`ChipConfig` and stabilizes
    with the general engine; ``"auto"`` picks the grid when it applies.
    ``start`` resumes from a given configuration (stabilized first); its
    chips count towards ``total_chips`` but not towards ``turns``.
    """
    done = _degenerate(g, first)
    if done is not None:
        return done
    chips = None
    if start is not None:
        if start.graph != g:
            raise ValueError("start configuration lives on a different graph")
        out = stabilize_or_detect(start)
        if out.volatile:
            return GameRecord(0, first, "volatile start", g.n, [])
        chips = out.config.chips
    grid_ok = g.is_complete() and isinstance(smax, GridStrategy) and isinstance(smin, GridStrategy)
    if engine == "auto":
        engine = "grid" if grid_ok else "config"
    if engine == "grid":
        if not grid_ok:
            raise ValueError("grid engine needs K_n and grid strategies")
        grid = None if chips is None else GridView(g.n, chips)
        return play_grid(g.n, smax, smin, first, trace=trace, grid=grid)
    if engine != "config":
        raise ValueError(f"unknown engine {engine!r}")
    return _play_config(g, smax, smin, first, trace, chips)


def _split(chips: list[int], n: int) -> tuple[int, int]:
    """In-chips and out-chips of a K_n configuration (-1 where undefined)."""
    ranked = sorted(chips, reverse=True)
    in_c = sum(min(h, n - i) for i, h in enumerate(ranked, start=1))
    return in_c, sum(ranked) - in_c


def _play_config(
    g: Graph, smax: Strategy, smin: Strategy, first: Player, trace: bool, chips=None
) -> GameRecord:
    eng = ChipEngine(g, chips)
    base = sum(eng.units)
    n = g.n
    complete = g.is_complete()
    records: list[TurnRecord] | None = [] if trace else None
    player = first
    turn = 0
    while True:
        turn += 1
        strat = smax if player is Player.MAX else smin
        v = strat.choose(ChipConfig(g, tuple(eng.units)), player, turn)
        if not isinstance(v, int) or not 0 <= v < n:
            raise ValueError(f"{strat!r} chose illegal vertex {v!r} on turn {turn}")
        volatile = eng.add_chip(v)
        if records is not None:
            in_c, out_c = _split(eng.units, n) if complete else (-1, -1)
            records.append(TurnRecord(turn, player, v, eng.last_firings, base + turn, in_c, out_c))
        if volatile:
            if complete and records is not None:
                in_c, out_c = records[-1].in_chips, records[-1].out_chips
                return GameRecord(turn, first, "volatile", n, records, in_c, out_c, base)
            return GameRecord(turn, first, "volatile", n, records, start_chips=base)
        player = player.other


def play_grid(
    n: int,
    smax: GridStrategy,
    smin: GridStrategy,
    first: Player = Player.MAX,
    *,
    trace: bool = False,
    grid: GridView | None = None,
) -> GameRecord:
    """Fast K_n game on the grid model (ordinary chips)."""
    if n == 1:
        return GameRecord(0, first, "isolated vertex", 1, [])
    grid = GridView(n) if grid is None else grid
    base = grid.total_units
    rule_max, rule_min = smax.rule, smin.rule
    records: list[TurnRecord] | None = [] if trace else None
    player = first
    turn = 0
    place, settle = grid.place, grid.settle
    is_max = player is Player.MAX
    while True:
        turn += 1
        col = rule_max(grid) if is_max else rule_min(grid)
        col = place(col)
        target = grid._ids[col]
        if grid._neg[0] <= -(n - 1):
            volatile, fired = settle()
        else:
            volatile, fired = False, 0
        if records is not None:
            records.append(
                TurnRecord(turn, player, target, fired, base + turn, grid.in_chips, base + turn - grid.in_chips)
            )
        if volatile or grid.in_chips == grid.capacity:
            out_c = base + turn - grid.in_chips
            return GameRecord(turn, first, "volatile", n, records, grid.in_chips, out_c, base)
        is_max = not is_max
        player = player.other


def write_trace_csv(record: GameRecord, out: TextIO | None = None) -> str:
    """CSV trace; the final line is ``summary,turns,rounds,n,total,in,out``."""
    buf = io.StringIO() if out is None else out
    buf.write(TRACE_HEADER + "\n")
    for t in record.trace or []:
        buf.write(
            f"{t.turn},{t.player.value},{t.target},{t.fired},{t.total_chips},{t.in_chips},{t.out_chips}\n"
        )
    in_c = "" if record.in_chips is None else record.in_chips
    out_c = "" if record.out_chips is None else record.out_chips
    buf.write(f"summary,{record.turns},{record.rounds},{record.n},{record.total_chips},{in_c},{out_c}\n")
    return buf.getvalue() if out is None else ""
