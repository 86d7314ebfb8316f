"""The fractional toppling game and the K_n / G(n, p) coupled replay.

With ``p = a/b`` in lowest terms every amount is a multiple of ``1/b`` chip,
so configurations are stored as integer numerators over ``b``: a vertex
fires at ``a * deg(v)`` units, sends ``a`` units to each neighbour, and a
placed chip adds ``b`` units.

Dividing amounts by ``p`` turns fractional firing into ordinary firing with
the fractional parts frozen, so a fractional configuration is volatile
exactly when ``floor(c / p)`` is volatile in the ordinary game.  The tests
use that reduction as an independent check of the engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chipfire import ChipEngine, Outcome, StabilizeOutcome
from .game.grid import GridView
from .game.minimax import DEFAULT_GUARD, solve_game
from .game.play import GameRecord, TurnRecord
from .game.strategies import GameOverError, GridStrategy, Player, row_move
from .graph_core import Graph, complete_graph

__all__ = [
    "FracConfig",
    "CoupledResult",
    "PlacementCap",
    "parse_rational",
    "frac_stabilize_or_detect",
    "frac_minimax",
    "frac_grid_play",
    "coupled_replay",
    "COUPLED_HEADER",
]


def parse_rational(text: str | Fraction | int) -> Fraction:
    """Parse ``"a/b"`` (or an integer) into ``p`` with ``0 < p <= 1``."""
    if isinstance(text, Fraction):
        p = text
    elif isinstance(text, int):
        p = Fraction(text)
    else:
        s = text.strip()
        num, sep, den = s.partition("/")
        try:
            p = Fraction(int(num), int(den)) if sep else Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"expected a rational 'a/b', got {text!r}") from None
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    return p


@dataclass(frozen=True)
class FracConfig:
    """Chip amounts ``units[v] / p.denominator`` on the vertices of ``graph``."""

    graph: Graph
    p: Fraction
    units: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", parse_rational(self.p))
        units = tuple(int(u) for u in self.units)
        if len(units) != self.graph.n or any(u < 0 for u in units):
            raise ValueError("need one nonnegative amount per vertex")
        object.__setattr__(self, "units", units)

    @classmethod
    def from_chips(cls, graph: Graph, p: Fraction | str, chips: Sequence) -> FracConfig:
        p = parse_rational(p)
        b = p.denominator
        units = []
        for c in chips:
            scaled = Fraction(c) * b
            if scaled.denominator != 1:
                raise ValueError(f"amount {c} is not a multiple of 1/{b}")
            units.append(int(scaled))
        return cls(graph, p, tuple(units))

    @classmethod
    def empty(cls, graph: Graph, p: Fraction | str) -> FracConfig:
        return cls(graph, parse_rational(p), (0,) * graph.n)

    @property
    def fire_unit(self) -> int:
        return self.p.numerator

    @property
    def chip_unit(self) -> int:
        return self.p.denominator

    @property
    def chips(self) -> tuple[Fraction, ...]:
        b = self.p.denominator
        return tuple(Fraction(u, b) for u in self.units)

    @property
    def total(self) -> Fraction:
        return Fraction(sum(self.units), self.p.denominator)

    def add(self, v: int, count: int = 1) -> FracConfig:
        units = list(self.units)
        units[v] += count * self.p.denominator
        return FracConfig(self.graph, self.p, tuple(units))

    def engine(self, *, shortcut: bool = True) -> ChipEngine:
        return ChipEngine(
            self.graph, self.units, fire_unit=self.fire_unit, chip_unit=self.chip_unit, shortcut=shortcut
        )


def frac_stabilize_or_detect(
    c: FracConfig, rng: random.Random | None = None, *, shortcut: bool = True
) -> StabilizeOutcome:
    """Fire at ``p * deg(v)``, moving ``p`` to each neighbour, until stable or volatile."""
    eng = c.engine(shortcut=shortcut)
    if eng.settle(None, rng):
        return StabilizeOutcome(
            Outcome.VOLATILE, eng.last_firings, fired=eng.fired_flags, trigger_component=eng.trigger_component
        )
    return StabilizeOutcome(
        Outcome.STABLE,
        eng.last_firings,
        config=FracConfig(c.graph, c.p, tuple(eng.units)),
        firings=tuple(eng.firings),
    )


def frac_minimax(g: Graph, p: Fraction | str, first: Player = Player.MAX, *, guard: int = DEFAULT_GUARD) -> int:
    """Exact fractional game length; each turn still places one whole chip."""
    p = parse_rational(p)
    return solve_game(g, first, fire_unit=p.numerator, chip_unit=p.denominator, guard=guard)


class PlacementCap:
    """Per-player limit of ``omega * p * n`` chips on any single vertex.

    A move on a saturated vertex is redirected to the least-indexed vertex
    where that player is still under the cap.
    """

    def __init__(self, n: int, p: Fraction, omega: float) -> None:
        self.limit = max(1, int(omega * float(p) * n))
        self.placed = {Player.MAX: [0] * n, Player.MIN: [0] * n}

    def redirect(self, player: Player, v: int) -> int:
        mine = self.placed[player]
        if mine[v] >= self.limit:
            v = next((u for u, k in enumerate(mine) if k < self.limit), v)
        mine[v] += 1
        return v


def _grid_move(grid: GridView, strat: GridStrategy) -> tuple[int, int]:
    col = grid.resolve(strat.rule(grid))
    return col, grid.vertex(col)


def _surrogate_move(g: Graph, eng: ChipEngine, b: int, a: int, strat: GridStrategy, player: Player) -> int:
    grid = GridView(g.n, [u * b for u in eng.units], cell_units=a, chip_units=b)
    try:
        return _grid_move(grid, strat)[1]
    except GameOverError:
        pass
    # the scaled triangle can be full while g is still stable
    if player is Player.MAX:
        return grid.vertex(grid.resolve(row_move(grid)))
    units, deg = eng.units, g.degrees
    return min(range(g.n), key=lambda v: deg[v] - units[v])


def _same_config(grid: GridView, units: list[int]) -> bool:
    return all(units[v] == -x for v, x in zip(grid._ids, grid._neg))


def frac_grid_play(
    n: int,
    p: Fraction | str,
    smax: GridStrategy,
    smin: GridStrategy,
    first: Player = Player.MAX,
    *,
    cap_omega: float | None = None,
    verify: bool = True,
    trace: bool = False,
) -> GameRecord:
    """Fractional game on K_n driven by grid strategies on the scaled grid.

    The grid keeps cells ``p`` chips tall, so column ``i`` has an in-quota of
    ``p * (n - i)`` chips.  Its sorted-dominance test decides volatility;
    with ``verify`` every turn is replayed on the general engine and any
    disagreement raises.
    """
    p = parse_rational(p)
    if n == 1:
        return GameRecord(0, first, "isolated vertex", 1, [])
    a, b = p.numerator, p.denominator
    grid = GridView(n, cell_units=a, chip_units=b)
    eng = ChipEngine(complete_graph(n), fire_unit=a, chip_unit=b) if verify else None
    cap = PlacementCap(n, p, cap_omega) if cap_omega is not None else None
    records: list[TurnRecord] | None = [] if trace else None
    player = first
    turn = 0
    while True:
        turn += 1
        strat = smax if player is Player.MAX else smin
        col, v = _grid_move(grid, strat)
        if cap is not None:
            w = cap.redirect(player, v)
            if w != v:
                grid.place_vertex(w)
                v = w
            else:
                grid.place(col)
        else:
            grid.place(col)
        volatile, fired = grid.settle()
        if eng is not None:
            ev = eng.add_chip(v)
            if ev != volatile or (not ev and not _same_config(grid, eng.units)):
                raise RuntimeError(f"grid and engine disagree on turn {turn}")
        if records is not None:
            cells = sum(grid.heights)
            records.append(TurnRecord(turn, player, v, fired, turn, grid.in_chips, cells - grid.in_chips))
        if volatile:
            cells = sum(grid.heights)
            return GameRecord(turn, first, "volatile", n, records, grid.in_chips, cells - grid.in_chips)
        player = player.other


@dataclass(frozen=True)
class CoupledResult:
    seed: int | None
    n: int
    p: Fraction
    len_frac_kn: int
    len_g: int

    @property
    def ratio(self) -> float:
        return self.len_g / self.len_frac_kn if self.len_frac_kn else float("nan")

    def csv_row(self) -> str:
        return f"{self.seed},{self.n},{self.p.numerator},{self.p.denominator},{self.len_frac_kn},{self.len_g},{self.ratio:.6f}"


COUPLED_HEADER = "seed,n,p_num,p_den,len_frac_kn,len_g,ratio"


def coupled_replay(
    g: Graph,
    p: Fraction | str,
    smax: GridStrategy,
    smin: GridStrategy,
    first: Player = Player.MIN,
    *,
    seed: int | None = None,
    cap_omega: float | None = None,
) -> CoupledResult:
    """Mirror the fractional K_n game placement by placement onto ``g``.

    Moves come from the strategies on the fractional K_n grid while that
    game is live.  Afterwards the same strategies read a grid built from
    ``g``'s own configuration (cells ``p`` chips tall) until ``g`` is
    volatile too.  If that grid's triangle is already full, Max keeps
    playing the row move and Min places next to the vertex closest to
    firing.  Vertices are identified by index.
    """
    p = parse_rational(p)
    n = g.n
    a, b = p.numerator, p.denominator
    g_eng = ChipEngine(g)
    len_g = 0 if (n == 0 or min(g.degrees) == 0) else None
    if n < 2:
        return CoupledResult(seed, n, p, 0, 0 if len_g is None else len_g)
    grid = GridView(n, cell_units=a, chip_units=b)
    cap = PlacementCap(n, p, cap_omega) if cap_omega is not None else None
    len_kn = None
    player = first
    turn = 0
    while len_kn is None or len_g is None:
        turn += 1
        strat = smax if player is Player.MAX else smin
        if len_kn is None:
            col, v = _grid_move(grid, strat)
        else:
            v = _surrogate_move(g, g_eng, b, a, strat, player)
        if cap is not None:
            v = cap.redirect(player, v)
        if len_kn is None:
            if grid.vertex(grid.resolve(col)) == v:
                grid.place(col)
            else:
                grid.place_vertex(v)
            if grid.settle()[0]:
                len_kn = turn
        if len_g is None and g_eng.add_chip(v):
            len_g = turn
        player = player.other
    return CoupledResult(seed, n, p, len_kn, len_g)
