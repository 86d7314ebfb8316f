"""Sorted-column view of a configuration on K_n.

Column ``i`` (1-indexed) holds the vertex with the ``i``-th most chips and
cell ``(i, j)`` is filled when that vertex holds at least ``j`` cells' worth
of chips.  Cell ``(i, j)`` lies in the critical triangle when ``i + j <= n``;
the configuration is volatile exactly when every such cell is filled.

Heights are stored in integer units so the same class serves the fractional
game: a cell is ``cell_units`` units tall, a placed chip adds ``chip_units``
units, and the top vertex fires once it holds ``n - 1`` cells.  With
``p = a/b`` the fractional game uses ``cell_units = a, chip_units = b``.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Sequence

__all__ = ["GridView", "grid_fire"]


class GridView:
    def __init__(
        self,
        n: int,
        heights: Sequence[int] | None = None,
        *,
        cell_units: int = 1,
        chip_units: int = 1,
        ids: Sequence[int] | None = None,
    ) -> None:
        """``heights`` are in units and are sorted here (ids travel with them)."""
        if n < 2:
            raise ValueError("grid model needs n >= 2")
        self.n = n
        self.cell_units = cell_units
        self.chip_units = chip_units
        units = [0] * n if heights is None else [int(h) for h in heights]
        if len(units) != n or any(u < 0 for u in units):
            raise ValueError("need n nonnegative heights")
        ids = list(range(n)) if ids is None else list(ids)
        order = sorted(range(n), key=lambda i: (-units[i], ids[i]))
        self._neg = [-units[i] for i in order]
        self._ids = [ids[i] for i in order]
        self.capacity = n * (n - 1) // 2
        self.version = 0
        self.firings = 0
        self._recount()
        # strategy caches, keyed on version
        self._tri: tuple[int, int, int] | None = None
        self._sq: list[int] | None = None

    # -- views ---------------------------------------------------------

    @property
    def heights(self) -> list[int]:
        """Column heights in cells (floor of units / cell_units), nonincreasing."""
        a = self.cell_units
        return [(-x) // a for x in self._neg]

    @property
    def units(self) -> list[int]:
        return [-x for x in self._neg]

    @property
    def ids(self) -> list[int]:
        return list(self._ids)

    def height(self, col: int) -> int:
        """Height in cells of 0-indexed column ``col``."""
        return (-self._neg[col]) // self.cell_units

    def vertex(self, col: int) -> int:
        return self._ids[col]

    @property
    def total_units(self) -> int:
        return -sum(self._neg)

    @property
    def out_chips(self) -> int:
        """Filled cells outside the critical triangle."""
        return sum(self.heights) - self.in_chips

    @property
    def first_incomplete_row(self) -> int:
        return (-self._neg[-1]) // self.cell_units + 1

    @property
    def first_incomplete_layer(self) -> int:
        """Smallest layer with an empty cell; ``n`` once the triangle is full."""
        a = self.cell_units
        return min((-x) // a + i for i, x in enumerate(self._neg, start=1))

    def is_full(self) -> bool:
        return self.in_chips == self.capacity

    def filled(self, i: int, j: int) -> bool:
        """Is 1-indexed cell ``(i, j)`` filled?"""
        return -self._neg[i - 1] >= j * self.cell_units

    def copy(self) -> GridView:
        g = GridView.__new__(GridView)
        g.__dict__.update(self.__dict__)
        g._neg = list(self._neg)
        g._ids = list(self._ids)
        g._sq = None if self._sq is None else list(self._sq)
        return g

    def _recount(self) -> None:
        a, n = self.cell_units, self.n
        self.in_chips = sum(min((-x) // a, n - i) for i, x in enumerate(self._neg, start=1))

    # -- moves ---------------------------------------------------------

    def resolve(self, col: int) -> int:
        """Leftmost column holding as many units as ``col`` (ties go left)."""
        return bisect_left(self._neg, self._neg[col])

    def place(self, col: int) -> int:
        """Drop one chip on column ``col``; return the column it landed in."""
        neg = self._neg
        col = bisect_left(neg, neg[col])
        old = -neg[col]
        new = old + self.chip_units
        if col == 0 or -neg[col - 1] >= new:
            neg[col] = -new
            a = self.cell_units
            quota = self.n - 1 - col
            if old // a < quota:
                self.in_chips += min(new // a, quota) - old // a
            return col
        # the column overtakes its left neighbours: re-sort
        v = self._ids[col]
        del neg[col]
        del self._ids[col]
        dest = bisect_left(neg, -new)
        neg.insert(dest, -new)
        self._ids.insert(dest, v)
        self.version += 1
        self._recount()
        return dest

    def place_vertex(self, v: int) -> int:
        """Drop one chip on vertex ``v`` itself, bypassing the tie rule."""
        col = self._ids.index(v)
        neg = self._neg
        new = -neg[col] + self.chip_units
        del neg[col]
        del self._ids[col]
        dest = bisect_left(neg, -new)
        neg.insert(dest, -new)
        self._ids.insert(dest, v)
        self.version += 1
        self._recount()
        return dest

    def can_fire(self) -> bool:
        return -self._neg[0] >= (self.n - 1) * self.cell_units

    def fire_top(self) -> None:
        """Fire the vertex in column 1 and re-sort."""
        n, a = self.n, self.cell_units
        top = -self._neg[0]
        if top < (n - 1) * a:
            raise ValueError(f"column 1 holds {top // a} cells, needs {n - 1} to fire")
        left = top - (n - 1) * a
        v = self._ids[0]
        neg = [x - a for x in self._neg[1:]]
        ids = self._ids[1:]
        dest = bisect_left(neg, -left)
        neg.insert(dest, -left)
        ids.insert(dest, v)
        self._neg, self._ids = neg, ids
        self.version += 1
        self.firings += 1
        self._recount()

    def settle(self) -> tuple[bool, int]:
        """Fire until stable or until volatility is certain.

        Returns ``(volatile, firings)``.  With every column at most ``n - 1``
        cells tall the sorted-dominance test is exact; taller columns are
        fired first.  Firing every vertex at least once proves volatility.
        """
        n, a = self.n, self.cell_units
        limit = (n - 1) * a
        fired: set[int] = set()
        count = 0
        while True:
            top = -self._neg[0]
            if top <= limit + a - 1:
                if self.in_chips == self.capacity:
                    return True, count
                if top < limit:
                    return False, count
            fired.add(self._ids[0])
            if len(fired) == n:
                return True, count
            self.fire_top()
            count += 1


def grid_fire(grid: GridView) -> GridView:
    """Return a copy of ``grid`` after firing its first column once."""
    out = grid.copy()
    out.fire_top()
    return out
