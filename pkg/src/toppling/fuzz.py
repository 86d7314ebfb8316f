"""Seeded randomized property suites for the engines.

Each suite draws its cases from ``random.Random(seed)`` and returns a
:class:`SuiteResult`; nothing here raises on a failed property, so the CLI
and the tests can both report counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chipfire import ChipConfig, dominates, is_volatile_complete, stabilize_or_detect
from .fractional import FracConfig, frac_stabilize_or_detect
from .game.grid import GridView, grid_fire
from .graph_core import Graph, complete_graph, from_edge_list

__all__ = [
    "SuiteResult",
    "SUITES",
    "random_graph",
    "random_connected_graph",
    "random_chips",
    "abelian_suite",
    "threshold_suite",
    "oracle_suite",
    "monotonicity_suite",
    "inchip_suite",
    "frac_abelian_suite",
    "frac_unit_suite",
    "run_suites",
]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.cases - self.failures

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, good: bool, detail: Callable[[], str]) -> None:
        self.cases += 1
        if not good:
            self.failures += 1
            if len(self.examples) < 5:
                self.examples.append(detail())

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status} {self.passed}/{self.cases}"


def random_graph(rng: random.Random, n_max: int) -> Graph:
    """A G(n, q) graph with both ``n`` and ``q`` drawn at random."""
    n = rng.randint(1, n_max)
    q = rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < q]
    return from_edge_list(n, edges)


def random_connected_graph(rng: random.Random, n_max: int, n_min: int = 2) -> Graph:
    """A random spanning tree plus independent extra edges."""
    n = rng.randint(n_min, n_max)
    q = rng.random() ** 2
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges.update((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < q)
    return from_edge_list(n, edges)


def random_chips(rng: random.Random, g: Graph, total: int | None = None) -> tuple[int, ...]:
    """Scatter ``total`` chips uniformly (default: a random total up to ``2|E| + n``)."""
    if total is None:
        total = rng.randint(0, 2 * g.num_edges + g.n)
    chips = [0] * g.n
    for _ in range(total):
        chips[rng.randrange(g.n)] += 1
    return tuple(chips)


def abelian_suite(seed: int, cases: int = 1000, n_max: int = 40) -> SuiteResult:
    """Two random firing orders give the same tag, configuration and firing counts."""
    rng = random.Random(seed)
    res = SuiteResult("abelian")
    for _ in range(cases):
        g = random_graph(rng, n_max)
        c = ChipConfig(g, random_chips(rng, g))
        a = stabilize_or_detect(c, random.Random(rng.getrandbits(64)), shortcut=False)
        b = stabilize_or_detect(c, random.Random(rng.getrandbits(64)), shortcut=False)
        good = a.tag is b.tag and (a.volatile or (a.config == b.config and a.firings == b.firings))
        res.record(good, lambda: f"n={g.n} edges={g.edges()} chips={c.chips}")
    return res


def threshold_suite(seed: int, cases: int = 10_000, n_max: int = 30) -> SuiteResult:
    """Volatile needs at least |E| chips; 2|E| - |V| + 1 chips always suffice.

    Volatility is decided by firing alone so the upper law is really tested.
    """
    rng = random.Random(seed)
    res = SuiteResult("threshold")
    for _ in range(cases):
        g = random_connected_graph(rng, n_max)
        m = g.num_edges
        c = ChipConfig(g, random_chips(rng, g, rng.randint(max(0, m - g.n), 2 * m)))
        volatile = stabilize_or_detect(c, shortcut=False).volatile
        total = c.total
        good = (not volatile or total >= m) and (total < 2 * m - g.n + 1 or volatile)
        res.record(good, lambda: f"n={g.n} m={m} total={total} volatile={volatile}")
    return res


def oracle_suite(seed: int, cases: int = 10_000, n_max: int = 12) -> SuiteResult:
    """Sorted dominance on K_n agrees with the general engine."""
    rng = random.Random(seed)
    res = SuiteResult("oracle")
    graphs = {n: complete_graph(n) for n in range(1, n_max + 1)}
    for _ in range(cases):
        n = rng.randint(1, n_max)
        c = ChipConfig(graphs[n], tuple(rng.randint(0, 2 * n) for _ in range(n)))
        fast = is_volatile_complete(c)
        slow = stabilize_or_detect(c, shortcut=False).volatile
        res.record(fast == slow, lambda: f"chips={c.chips} sorted={fast} engine={slow}")
    return res


def monotonicity_suite(seed: int, cases: int = 2000, n_max: int = 20) -> SuiteResult:
    """Adding chips to a volatile configuration keeps it volatile."""
    rng = random.Random(seed)
    res = SuiteResult("monotonicity")
    for _ in range(cases):
        g = random_graph(rng, n_max)
        c2 = ChipConfig(g, random_chips(rng, g))
        extra = random_chips(rng, g, rng.randint(0, g.n))
        c1 = ChipConfig(g, tuple(x + y for x, y in zip(c2.chips, extra)))
        if not dominates(c1, c2):
            res.record(False, lambda: "constructed pair is not dominating")
            continue
        v2 = stabilize_or_detect(c2, shortcut=False).volatile
        v1 = stabilize_or_detect(c1, shortcut=False).volatile
        res.record(v1 or not v2, lambda: f"c1={c1.chips} c2={c2.chips}")
    return res


def reachable_firing_grids(rng: random.Random, n_max: int):
    """Yield grids about to fire, met while random placements settle."""
    while True:
        n = rng.randint(2, n_max)
        grid = GridView(n)
        fired: set[int] = set()
        while True:
            grid.place_vertex(rng.randrange(n))
            fired.clear()
            volatile = False
            while grid.can_fire():
                yield grid
                fired.add(grid.vertex(0))
                if len(fired) == n:
                    volatile = True
                    break
                grid.fire_top()
            if volatile or grid.is_full():
                break


def inchip_suite(seed: int, cases: int = 10_000, n_max: int = 30) -> SuiteResult:
    """Firing the first column preserves in-chips, totals and column order."""
    rng = random.Random(seed)
    res = SuiteResult("inchips")
    source = reachable_firing_grids(rng, n_max)
    for _ in range(cases):
        grid = next(source)
        after = grid_fire(grid)
        h = after.heights
        fresh = GridView(after.n, after.units, ids=after.ids)
        good = (
            after.in_chips == grid.in_chips
            and after.total_units == grid.total_units
            and all(x >= y for x, y in zip(h, h[1:]))
            and fresh.in_chips == after.in_chips
        )
        res.record(good, lambda: f"heights={grid.heights} -> {h}")
    return res


def _frac_case(rng: random.Random, n_max: int) -> FracConfig:
    g = random_graph(rng, n_max)
    p = rng.choice(["1/4", "1/3", "1/2", "2/3", "3/4", "1"])
    c = FracConfig.empty(g, p)
    # thresholds are a * deg(v) units, so scale the total by a
    units = random_chips(rng, g, rng.randint(0, (2 * g.num_edges + g.n) * c.fire_unit))
    return FracConfig(g, c.p, units)


def frac_abelian_suite(seed: int, cases: int = 1000, n_max: int = 25) -> SuiteResult:
    """Fractional firing is order-independent and reduces to ``floor(c / p)``."""
    rng = random.Random(seed)
    res = SuiteResult("frac-abelian")
    for _ in range(cases):
        c = _frac_case(rng, n_max)
        a = frac_stabilize_or_detect(c, random.Random(rng.getrandbits(64)), shortcut=False)
        b = frac_stabilize_or_detect(c, random.Random(rng.getrandbits(64)), shortcut=False)
        reduced = ChipConfig(c.graph, tuple(u // c.fire_unit for u in c.units))
        expect = stabilize_or_detect(reduced, shortcut=False).volatile
        good = a.tag is b.tag and a.volatile == expect
        if good and not a.volatile:
            good = a.config == b.config and a.firings == b.firings
            good = good and all(c.chip_unit % x.denominator == 0 for x in a.config.chips)
        res.record(good, lambda: f"p={c.p} edges={c.graph.edges()} units={c.units}")
    return res


def frac_unit_suite(seed: int, cases: int = 1000, n_max: int = 30) -> SuiteResult:
    """With ``p = 1`` the fractional engine is the ordinary one."""
    rng = random.Random(seed)
    res = SuiteResult("frac-p1")
    for _ in range(cases):
        g = random_graph(rng, n_max)
        chips = random_chips(rng, g)
        a = frac_stabilize_or_detect(FracConfig(g, 1, chips))
        b = stabilize_or_detect(ChipConfig(g, chips))
        good = a.tag is b.tag and a.num_firings == b.num_firings
        if good and not a.volatile:
            good = a.config.units == b.config.chips and a.firings == b.firings
        res.record(good, lambda: f"edges={g.edges()} chips={chips}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "abelian": abelian_suite,
    "threshold": threshold_suite,
    "oracle": oracle_suite,
    "monotonicity": monotonicity_suite,
    "inchips": inchip_suite,
    "frac-abelian": frac_abelian_suite,
    "frac-p1": frac_unit_suite,
}


def run_suites(seed: int, names: list[str] | None = None, scale: float = 1.0) -> list[SuiteResult]:
    """Run the named suites (default: all) with case counts multiplied by ``scale``."""
    names = list(SUITES) if names is None else names
    out = []
    for i, name in enumerate(names):
        try:
            fn = SUITES[name]
        except KeyError:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
        default = fn.__defaults__[0]
        cases = max(1, int(round(default * scale)))
        out.append(fn(seed + i, cases))
    return out
