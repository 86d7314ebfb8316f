"""Players and placement strategies.

Grid rules take a :class:`GridView` and return a 0-indexed column; the docs
below use the 1-indexed cell coordinates ``(column, row)`` of the grid
picture.  Each rule is a pure function of the grid: the caches stored on the
grid only avoid rescanning cells that are known to be filled, and they are
dropped whenever a firing or re-sort bumps ``grid.version``.
"""

from __future__ import annotations

import enum
import random
from bisect import bisect_left
from typing import Callable

from .grid import GridView

__all__ = [
    "Player",
    "Strategy",
    "GridStrategy",
    "RandomStrategy",
    "FunctionStrategy",
    "row_move",
    "triangle_move",
    "square_move",
    "grid_of",
    "ROW",
    "TRIANGLE",
    "SQUARE",
    "get_strategy",
]


class Player(enum.Enum):
    MAX = "max"
    MIN = "min"

    @property
    def other(self) -> Player:
        return Player.MIN if self is Player.MAX else Player.MAX


class GameOverError(RuntimeError):
    pass


def row_move(grid: GridView) -> int:
    """Leftmost empty cell of the bottommost incomplete row."""
    neg, a = grid._neg, grid.cell_units
    floor = (-neg[-1]) // a
    # leftmost column whose height (in cells) equals the minimum
    return bisect_left(neg, -((floor + 1) * a - 1))


def triangle_move(grid: GridView) -> int:
    """Rightmost empty cell of the least-indexed incomplete layer.

    Layer ``l`` is the set of cells ``(i, l + 1 - i)``.  Cells to the right
    of the cached pointer in the current layer are filled, and placements
    only ever fill cells, so the pointer moves monotonically leftwards until
    the layer completes.
    """
    n, a, neg = grid.n, grid.cell_units, grid._neg
    cache = grid._tri
    if cache is None or cache[0] != grid.version:
        layer = grid.first_incomplete_layer
        if layer >= n:
            raise GameOverError("critical triangle is full")
        ptr = layer
        while -neg[ptr - 1] >= (layer + 1 - ptr) * a:
            ptr -= 1
    else:
        _, layer, ptr = cache
    while -neg[ptr - 1] >= (layer + 1 - ptr) * a:
        ptr -= 1
        if ptr == 0:
            layer += 1
            if layer >= n:
                raise GameOverError("critical triangle is full")
            ptr = layer
    grid._tri = (grid.version, layer, ptr)
    return ptr - 1


def square_move(grid: GridView) -> int:
    """Grow the square of in-cells sitting on the bottommost incomplete row.

    With ``k`` the bottommost incomplete row, ``S_t`` is the ``t x t``
    square with lower-left cell ``(1, k + 1)`` and ``s`` is the largest ``t``
    whose in-cells are all filled.  The move targets the first empty in-cell
    of ``S_{s+1}`` in row-major order from its bottom row: the new column
    bottom-up, then the new top row left to right.  Once the square reaches
    the critical triangle only in-cells are targeted.  When every in-cell
    above row ``k`` is filled the row move is played.
    """
    n, a, neg = grid.n, grid.cell_units, grid._neg
    k = (-neg[-1]) // a + 1
    cache = grid._sq
    if cache is None or cache[0] != grid.version:
        s, pos = 0, 0
    elif cache[1] != k:
        # the square shifts up with k; S_{s - dk} stays filled
        s, pos = max(cache[2] - (k - cache[1]), 0), 0
    else:
        s, pos = cache[2], cache[3]
    smax = n - k - 1
    while s < smax:
        length = 2 * s + 1
        while pos < length:
            if pos < s:
                i, j = s + 1, k + 1 + pos
            else:
                i, j = pos - s + 1, k + s + 1
            if i + j <= n and -neg[i - 1] < j * a:
                grid._sq = [grid.version, k, s, pos]
                return i - 1
            pos += 1
        s += 1
        pos = 0
    grid._sq = [grid.version, k, s, 0]
    return row_move(grid)


def square_side(grid: GridView) -> int:
    """Current side ``s`` of the square (recomputed from scratch)."""
    probe = grid.copy()
    probe._sq = None
    square_move(probe)
    return probe._sq[2]


def grid_of(config) -> GridView:
    """Grid view of a ``ChipConfig`` or ``FracConfig`` on a complete graph."""
    g = config.graph
    if not g.is_complete():
        raise ValueError("grid strategies need a complete graph")
    units = getattr(config, "units", None)
    if units is None:
        return GridView(g.n, config.chips)
    return GridView(g.n, units, cell_units=config.fire_unit, chip_units=config.chip_unit)


class Strategy:
    """Decision rule ``choose(config, player, turn) -> vertex``."""

    name = "strategy"

    def choose(self, config, player: Player, turn: int) -> int:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class GridStrategy(Strategy):
    """A column rule on the K_n grid, usable on raw configurations too."""

    def __init__(self, name: str, rule: Callable[[GridView], int]) -> None:
        self.name = name
        self.rule = rule

    def column(self, grid: GridView) -> int:
        return grid.resolve(self.rule(grid))

    def choose(self, config, player: Player, turn: int) -> int:
        grid = grid_of(config)
        return grid.vertex(self.column(grid))


class RandomStrategy(Strategy):
    """Uniformly random vertex, reproducible from ``seed``."""

    def __init__(self, seed: int = 0) -> None:
        self.name = f"random:{seed}"
        self._rng = random.Random(seed)

    def choose(self, config, player: Player, turn: int) -> int:
        return self._rng.randrange(config.graph.n)


class FunctionStrategy(Strategy):
    def __init__(self, fn: Callable[..., int], name: str = "function") -> None:
        self.name = name
        self._fn = fn

    def choose(self, config, player: Player, turn: int) -> int:
        return self._fn(config, player, turn)


ROW = GridStrategy("row", row_move)
TRIANGLE = GridStrategy("triangle", triangle_move)
SQUARE = GridStrategy("square", square_move)

_NAMED = {"row": ROW, "triangle": TRIANGLE, "square": SQUARE}


def get_strategy(name: str) -> Strategy:
    if name.startswith("random"):
        _, _, seed = name.partition(":")
        return RandomStrategy(int(seed) if seed else 0)
    try:
        return _NAMED[name]
    except KeyError:
        raise ValueError(
            f"unknown strategy {name!r}; choose from row, triangle, square, random[:seed]"
        ) from None
