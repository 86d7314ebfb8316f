"""Simple undirected graphs: constructors, G(n, p) sampling and BFS diagnostics.

Graphs are immutable once built.  Vertex ids are ``0..n-1`` and adjacency
lists are sorted tuples, so two graphs with the same edge set compare equal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "ExpansionReport",
    "complete_graph",
    "from_edge_list",
    "sample_gnp",
    "expansion_report",
    "trial_rng",
    "read_edge_list",
    "write_edge_list",
]


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency must have one entry per vertex")
        object.__setattr__(self, "degrees", tuple(len(a) for a in self.adjacency))

    @property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def is_complete(self) -> bool:
        return all(d == self.n - 1 for d in self.degrees)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comp.sort()
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def shells(self, v: int, depth: int | None = None) -> list[int]:
        """Sizes ``|N(v, i)|`` for ``i = 1..depth`` (all distances if ``depth`` is None)."""
        dist = {v: 0}
        sizes: list[int] = []
        frontier = deque([v])
        while frontier:
            u = frontier.popleft()
            du = dist[u]
            if depth is not None and du >= depth:
                continue
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = du + 1
                    if len(sizes) < du + 1:
                        sizes.append(0)
                    sizes[du] += 1
                    frontier.append(w)
        if depth is not None:
            sizes.extend([0] * (depth - len(sizes)))
        return sizes


def _build(n: int, neighbour_sets: Sequence[Iterable[int]]) -> Graph:
    return Graph(n, tuple(tuple(sorted(s)) for s in neighbour_sets))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, tuple(tuple(w for w in range(n) if w != v) for v in range(n)))


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from vertex pairs; duplicates (in either orientation) collapse."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return _build(n, nbrs)


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    """PCG64 stream for ``(seed, trial)``.

    Streams are split through ``SeedSequence([seed, trial])``; the result
    depends only on the two integers, not on worker count or platform.
    """
    if seed < 0 or trial < 0:
        raise ValueError("seed and trial index must be nonnegative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def _pair_offsets(n: int) -> np.ndarray:
    # offsets[u] = index of pair (u, u+1) in row-major order over u < v
    u = np.arange(n, dtype=np.int64)
    return u * (2 * n - u - 1) // 2


def sample_gnp(n: int, p: float, seed: int, trial: int = 0) -> Graph:
    """Sample G(n, p) by geometric skipping over the ``n(n-1)/2`` pair indices."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph(n, tuple(() for _ in range(n)))
    if p == 1.0:
        return complete_graph(n)
    rng = trial_rng(seed, trial)
    chunk = max(1024, int(total * p * 1.1) + 64)
    picks = []
    last = -1
    while True:
        gaps = rng.geometric(p, size=chunk)
        idx = last + np.cumsum(gaps)
        keep = idx[idx < total]
        picks.append(keep)
        if len(keep) < len(idx):
            break
        last = int(idx[-1])
    pairs = np.concatenate(picks)
    offsets = _pair_offsets(n)
    us = np.searchsorted(offsets, pairs, side="right") - 1
    vs = pairs - offsets[us] + us + 1
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in zip(us.tolist(), vs.tolist()):
        nbrs[u].append(v)
        nbrs[v].append(u)
    return _build(n, nbrs)


@dataclass
class ExpansionReport:
    """Degree statistics and BFS shell sizes for sampled vertices."""

    d: float
    degree_min: int
    degree_max: int
    degree_mean: float
    shells: dict[int, list[int]]
    flagged: list[tuple[int, int]]
    rel_tol: float


def expansion_report(
    g: Graph,
    p: float,
    depth: int,
    sample: int,
    seed: int = 0,
    rel_tol: float = 0.5,
) -> ExpansionReport:
    """Compare shell sizes ``|N(v, i)|`` against ``d**i`` with ``d = p(n-1)``.

    ``(v, i)`` is flagged when ``|N(v, i)|`` differs from ``d**i`` by more
    than ``rel_tol`` relative error.  Shells with ``d**i >= n`` are never
    flagged since the expansion estimate only applies while ``d**i = o(n)``.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not 0 <= sample <= g.n:
        raise ValueError("sample size must lie in 0..n")
    d = p * (g.n - 1)
    rng = trial_rng(seed)
    chosen = sorted(rng.choice(g.n, size=sample, replace=False).tolist()) if sample else []
    shells = {v: g.shells(v, depth) for v in chosen}
    flagged = []
    for v, sizes in shells.items():
        for i, size in enumerate(sizes, start=1):
            target = d**i
            if target >= g.n:
                break
            if target > 0 and abs(size - target) > rel_tol * target:
                flagged.append((v, i))
    degs = np.asarray(g.degrees) if g.n else np.zeros(1, dtype=int)
    return ExpansionReport(
        d=d,
        degree_min=int(degs.min()),
        degree_max=int(degs.max()),
        degree_mean=float(degs.mean()),
        shells=shells,
        flagged=flagged,
        rel_tol=rel_tol,
    )


def write_edge_list(g: Graph, path: str | Path) -> None:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_edge_list(path: str | Path) -> Graph:
    """Read the ``n m`` header followed by ``m`` lines of ``u v``."""
    tokens = Path(path).read_text(encoding="ascii").split()
    if len(tokens) < 2:
        raise ValueError("edge-list file needs an 'n m' header")
    n, m = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != 2 * m:
        raise ValueError(f"header announces {m} edges, found {len(body) / 2:g}")
    return from_edge_list(n, zip(map(int, body[0::2]), map(int, body[1::2])))
