"""Exact game values by memoized minimax over stable configurations."""

from __future__ import annotations

import math
import sys

from ..chipfire import ChipEngine
from ..graph_core import Graph
from .strategies import Player

__all__ = ["StateSpaceError", "minimax_toppling", "solve_game", "DEFAULT_GUARD"]

DEFAULT_GUARD = 10**8


class StateSpaceError(RuntimeError):
    """The stable-state space exceeds the configured guard."""


def solve_game(
    g: Graph,
    first: Player,
    *,
    fire_unit: int = 1,
    chip_unit: int = 1,
    guard: int = DEFAULT_GUARD,
) -> int:
    """Value of the game in which each turn adds ``chip_unit`` units.

    A vertex fires at ``fire_unit * deg`` units.  Every turn strictly raises
    the total, and enough chips always force volatility, so the recursion is
    well founded.  States of K_n are sorted before lookup.
    """
    n = g.n
    if n == 0 or min(g.degrees) == 0:
        return 0
    states = math.prod(fire_unit * d for d in g.degrees)
    if states > guard:
        raise StateSpaceError(f"{states} stable states exceed guard {guard}")
    canonical = g.is_complete()
    eng = ChipEngine(g, fire_unit=fire_unit, chip_unit=chip_unit)
    succ: dict[tuple[tuple[int, ...], int], tuple[int, ...] | None] = {}
    memo: dict[tuple[tuple[int, ...], bool], int] = {}

    def step(state: tuple[int, ...], v: int) -> tuple[int, ...] | None:
        key = (state, v)
        if key not in succ:
            eng.load(state)
            if eng.add_chip(v):
                succ[key] = None
            else:
                nxt = tuple(eng.units)
                succ[key] = tuple(sorted(nxt, reverse=True)) if canonical else nxt
        return succ[key]

    def value(state: tuple[int, ...], maximize: bool) -> int:
        key = (state, maximize)
        hit = memo.get(key)
        if hit is not None:
            return hit
        moves = range(n)
        if canonical:
            # one representative per distinct chip count
            seen: set[int] = set()
            moves = [v for v in range(n) if not (state[v] in seen or seen.add(state[v]))]
        best = None
        for v in moves:
            nxt = step(state, v)
            val = 1 if nxt is None else 1 + value(nxt, not maximize)
            if best is None or (val > best if maximize else val < best):
                best = val
        memo[key] = best
        return best

    limit = sys.getrecursionlimit()
    depth_needed = 4 * (2 * g.num_edges + n) * max(1, fire_unit) + 100
    if depth_needed > limit:
        sys.setrecursionlimit(depth_needed)
    try:
        return value((0,) * n, first is Player.MAX)
    finally:
        sys.setrecursionlimit(limit)


def minimax_toppling(g: Graph, first: Player = Player.MAX, *, guard: int = DEFAULT_GUARD) -> int:
    """Exact toppling-game length under optimal play (``first`` moves first)."""
    return solve_game(g, first, guard=guard)
