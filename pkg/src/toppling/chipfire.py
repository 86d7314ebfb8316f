"""Chip placement, firing, stabilization and volatility decisions.

The engine works in integer *units*.  A vertex ``v`` may fire once it holds
at least ``fire_unit * deg(v)`` units; firing moves ``fire_unit`` units to
each neighbour and a placed chip adds ``chip_unit`` units.  The ordinary
game is ``fire_unit = chip_unit = 1``; the fractional game with ``p = a/b``
uses ``fire_unit = a, chip_unit = b`` (units of ``1/b`` chip), which keeps
every threshold comparison exact.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph_core import Graph

__all__ = [
    "Outcome",
    "ChipConfig",
    "StabilizeOutcome",
    "ChipEngine",
    "fire",
    "stabilize_or_detect",
    "is_volatile_complete",
    "dominates",
    "format_snapshot",
    "parse_snapshot",
    "INT64_MAX",
]

INT64_MAX = 2**63 - 1


class Outcome(enum.Enum):
    STABLE = "stable"
    VOLATILE = "volatile"


@dataclass(frozen=True)
class ChipConfig:
    """Nonnegative integer chip counts on the vertices of ``graph``."""

    graph: Graph
    chips: tuple[int, ...]

    def __post_init__(self) -> None:
        chips = tuple(int(c) for c in self.chips)
        if len(chips) != self.graph.n:
            raise ValueError(f"expected {self.graph.n} chip counts, got {len(chips)}")
        if any(c < 0 for c in chips):
            raise ValueError("chip counts must be nonnegative")
        if any(c > INT64_MAX for c in chips):
            raise OverflowError("chip count exceeds 64-bit range")
        object.__setattr__(self, "chips", chips)

    @classmethod
    def empty(cls, graph: Graph) -> ChipConfig:
        return cls(graph, (0,) * graph.n)

    @property
    def total(self) -> int:
        return sum(self.chips)

    def add(self, v: int, count: int = 1) -> ChipConfig:
        chips = list(self.chips)
        chips[v] += count
        return ChipConfig(self.graph, tuple(chips))

    def is_stable(self) -> bool:
        return all(c < d for c, d in zip(self.chips, self.graph.degrees))


@dataclass(frozen=True)
class StabilizeOutcome:
    """Result of stabilizing a configuration or detecting volatility.

    ``config`` and ``firings`` are set for stable outcomes; ``fired`` holds
    the fired-at-least-once flags at detection time for volatile ones.
    ``config`` is a :class:`ChipConfig` for the ordinary game and a
    ``FracConfig`` for the fractional one.
    """

    tag: Outcome
    num_firings: int
    config: object | None = None
    firings: tuple[int, ...] | None = None
    fired: tuple[bool, ...] | None = None
    trigger_component: int | None = None

    @property
    def volatile(self) -> bool:
        return self.tag is Outcome.VOLATILE


class ChipEngine:
    """Mutable configuration that is re-stabilized after every placement.

    Volatility is decided per connected component: a degree-0 vertex fires
    forever; a component holding enough units to exceed the
    ``2|E| - |V| + 1`` chip bound is volatile outright; otherwise the engine
    fires eligible vertices and stops once every vertex of one component has
    fired during the current stabilization (volatile) or nothing can fire
    (stable).  A connected component that fires forever must eventually fire
    every one of its vertices, so the loop always terminates.
    """

    def __init__(
        self,
        graph: Graph,
        units: Sequence[int] | None = None,
        *,
        fire_unit: int = 1,
        chip_unit: int = 1,
        shortcut: bool = True,
    ) -> None:
        if fire_unit < 1 or chip_unit < 1:
            raise ValueError("units must be positive integers")
        self.graph = graph
        self.fire_unit = fire_unit
        self.chip_unit = chip_unit
        self.shortcut = shortcut
        n = graph.n
        self.units = [0] * n if units is None else [int(u) for u in units]
        if len(self.units) != n or any(u < 0 for u in self.units):
            raise ValueError("units must be one nonnegative integer per vertex")
        self._adj = graph.adjacency
        self._thresh = [fire_unit * d for d in graph.degrees]
        comps = graph.components()
        self._comp = [0] * n
        for ci, comp in enumerate(comps):
            for v in comp:
                self._comp[v] = ci
        self._comp_size = [len(c) for c in comps]
        self._comp_total = [sum(self.units[v] for v in c) for c in comps]
        # units forcing floor(units / fire_unit) >= 2|E| - |V| + 1 in a component
        self._comp_limit = []
        for comp in comps:
            edges = sum(graph.degrees[v] for v in comp) // 2
            bound = 2 * edges - len(comp) + 1
            self._comp_limit.append(fire_unit * bound + (fire_unit - 1) * len(comp))
        self._isolated = [ci for ci, comp in enumerate(comps) if graph.degrees[comp[0]] == 0]
        self.firings = [0] * n
        self.volatile = False
        self.last_firings = 0

    def load(self, units: Sequence[int]) -> None:
        """Replace the configuration, clearing firing counts and volatility."""
        self.units = [int(u) for u in units]
        comps = self._comp
        totals = [0] * len(self._comp_size)
        for v, u in enumerate(self.units):
            totals[comps[v]] += u
        self._comp_total = totals
        self.firings = [0] * self.graph.n
        self.volatile = False
        self.last_firings = 0

    # -- placement -----------------------------------------------------

    def add_chip(self, v: int, rng: random.Random | None = None) -> bool:
        """Place one chip on ``v`` and settle; return True if now volatile."""
        if self.volatile:
            raise RuntimeError("configuration is already volatile")
        u = self.units[v] + self.chip_unit
        if u > INT64_MAX:
            raise OverflowError(f"chip count on vertex {v} exceeds 64-bit range")
        self.units[v] = u
        self._comp_total[self._comp[v]] += self.chip_unit
        return self.settle([v], rng)

    def settle(self, seeds: Sequence[int] | None = None, rng: random.Random | None = None) -> bool:
        """Fire until stable or volatile, starting from ``seeds`` (default: all eligible)."""
        self.last_firings = 0
        if self._isolated:
            self._declare(self._isolated[0], [])
            return True
        if self.shortcut:
            for ci, total in enumerate(self._comp_total):
                if total >= self._comp_limit[ci]:
                    self._declare(ci, [])
                    return True
        units, thresh = self.units, self._thresh
        if seeds is None:
            seeds = range(self.graph.n)
        eligible = [v for v in seeds if units[v] >= thresh[v]]
        if not eligible:
            return False
        if rng is None:
            return self._run_fifo(eligible)
        return self._run_random(eligible, rng)

    def _declare(self, comp: int, fired_now: list[int]) -> None:
        self.volatile = True
        self.trigger_component = comp
        flags = [False] * self.graph.n
        for v in fired_now:
            flags[v] = True
        if not fired_now:
            # decided without firing: flag the triggering component
            for v in range(self.graph.n):
                if self._comp[v] == comp:
                    flags[v] = True
        self.fired_flags = tuple(flags)

    def _run_fifo(self, eligible: list[int]) -> bool:
        units, thresh, adj, firings = self.units, self._thresh, self._adj, self.firings
        comp, comp_size, a = self._comp, self._comp_size, self.fire_unit
        queue = deque(eligible)
        queued = set(eligible)
        fired_now: list[int] = []
        seen: set[int] = set()
        comp_fired: dict[int, int] = {}
        count = 0
        while queue:
            v = queue.popleft()
            if units[v] < thresh[v]:
                queued.discard(v)
                continue
            units[v] -= thresh[v]
            firings[v] += 1
            count += 1
            for w in adj[v]:
                uw = units[w] + a
                units[w] = uw
                if uw >= thresh[w] and w not in queued:
                    queued.add(w)
                    queue.append(w)
            if v not in seen:
                seen.add(v)
                fired_now.append(v)
                c = comp[v]
                k = comp_fired.get(c, 0) + 1
                comp_fired[c] = k
                if k == comp_size[c]:
                    self.last_firings = count
                    self._declare(c, fired_now)
                    return True
            if units[v] >= thresh[v]:
                queue.append(v)
            else:
                queued.discard(v)
        self.last_firings = count
        return False

    def _run_random(self, eligible: list[int], rng: random.Random) -> bool:
        units, thresh, adj, firings = self.units, self._thresh, self._adj, self.firings
        comp, comp_size, a = self._comp, self._comp_size, self.fire_unit
        pool = list(eligible)
        pooled = set(pool)
        fired_now: list[int] = []
        seen: set[int] = set()
        comp_fired: dict[int, int] = {}
        count = 0
        while pool:
            i = rng.randrange(len(pool))
            v = pool[i]
            units[v] -= thresh[v]
            firings[v] += 1
            count += 1
            for w in adj[v]:
                uw = units[w] + a
                units[w] = uw
                if uw >= thresh[w] and w not in pooled:
                    pooled.add(w)
                    pool.append(w)
            if v not in seen:
                seen.add(v)
                fired_now.append(v)
                c = comp[v]
                k = comp_fired.get(c, 0) + 1
                comp_fired[c] = k
                if k == comp_size[c]:
                    self.last_firings = count
                    self._declare(c, fired_now)
                    return True
            if units[v] < thresh[v]:
                pool[i] = pool[-1]
                pool.pop()
                pooled.discard(v)
        self.last_firings = count
        return False


def fire(c: ChipConfig, v: int) -> ChipConfig:
    """Fire ``v`` once: remove ``deg(v)`` chips and give one to each neighbour."""
    deg = c.graph.degrees[v]
    if c.chips[v] < deg:
        raise ValueError(f"vertex {v} holds {c.chips[v]} chips, needs {deg} to fire")
    chips = list(c.chips)
    chips[v] -= deg
    for w in c.graph.adjacency[v]:
        chips[w] += 1
    return ChipConfig(c.graph, tuple(chips))


def stabilize_or_detect(
    c: ChipConfig,
    rng: random.Random | None = None,
    *,
    shortcut: bool = True,
) -> StabilizeOutcome:
    """Stabilize ``c`` or report it volatile.

    With ``rng=None`` eligible vertices fire in FIFO order; otherwise the
    next vertex to fire is drawn uniformly from the eligible set.  Pass
    ``shortcut=False`` to skip the chip-count bound and decide every case by
    firing.
    """
    eng = ChipEngine(c.graph, c.chips, shortcut=shortcut)
    if eng.settle(None, rng):
        return StabilizeOutcome(
            Outcome.VOLATILE,
            eng.last_firings,
            fired=eng.fired_flags,
            trigger_component=eng.trigger_component,
        )
    return StabilizeOutcome(
        Outcome.STABLE,
        eng.last_firings,
        config=ChipConfig(c.graph, tuple(eng.units)),
        firings=tuple(eng.firings),
    )


def is_volatile_complete(c: ChipConfig) -> bool:
    """Volatility on K_n via sorted dominance of ``(n-1, n-2, ..., 0)``."""
    g = c.graph
    if not g.is_complete():
        raise ValueError("is_volatile_complete needs a complete graph")
    n = g.n
    if n == 1:
        return True
    if max(c.chips) >= n:
        return stabilize_or_detect(c).volatile
    ranked = sorted(c.chips, reverse=True)
    return all(s >= n - i for i, s in enumerate(ranked, start=1))


def dominates(c1: ChipConfig, c2: ChipConfig) -> bool:
    if c1.graph != c2.graph:
        raise ValueError("configurations live on different graphs")
    return all(x >= y for x, y in zip(c1.chips, c2.chips))


def format_snapshot(c: ChipConfig) -> str:
    """One ``v chips(v)`` line per vertex holding chips."""
    return "".join(f"{v} {k}\n" for v, k in enumerate(c.chips) if k)


def parse_snapshot(text: str, graph: Graph) -> ChipConfig:
    chips = [0] * graph.n
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'v chips'")
        v, k = int(parts[0]), int(parts[1])
        if not 0 <= v < graph.n:
            raise ValueError(f"line {lineno}: vertex {v} out of range")
        chips[v] = k
    return ChipConfig(graph, tuple(chips))
