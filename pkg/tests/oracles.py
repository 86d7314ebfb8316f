"""Slow reference implementations that share no code with the package.

Volatility is decided by plain simulation with repeat detection: the total
is fixed, so the lowest-index firing sequence either stops or revisits a
configuration, and a revisit means it can fire forever.
"""

from functools import lru_cache
from fractions import Fraction
from itertools import combinations


def naive_outcome(adj, chips, threshold=1):
    """``("stable", chips)`` or ``("volatile", None)``; ``threshold`` scales deg."""
    state = list(chips)
    deg = [len(a) for a in adj]
    seen = set()
    while True:
        key = tuple(state)
        if key in seen:
            return "volatile", None
        seen.add(key)
        for v, c in enumerate(state):
            if c >= threshold * deg[v]:
                break
        else:
            return "stable", key
        state[v] -= threshold * deg[v]
        for w in adj[v]:
            state[w] += threshold


def brute_value(adj, first_max, threshold=1):
    """Game length by exhaustive recursion over raw configurations."""
    n = len(adj)
    if n == 0 or any(len(a) == 0 for a in adj):
        return 0

    @lru_cache(maxsize=None)
    def value(state, maximize):
        vals = []
        for v in range(n):
            nxt = list(state)
            nxt[v] += 1
            tag, stable = naive_outcome(adj, nxt, threshold)
            vals.append(1 if tag == "volatile" else 1 + value(stable, not maximize))
        return max(vals) if maximize else min(vals)

    zero = Fraction(0) if isinstance(threshold, Fraction) else 0
    return value((zero,) * n, first_max)


def adjacency(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return [sorted(a) for a in adj]


def connected_graphs(max_n):
    """Every connected labelled graph on 1..max_n vertices as ``(n, edges)``."""
    out = []
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            adj = adjacency(n, edges)
            seen, stack = {0}, [0]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == n:
                out.append((n, edges))
    return out
