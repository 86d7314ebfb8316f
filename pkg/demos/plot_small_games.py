"""
Exact toppling numbers of small graphs
======================================

Memoized minimax gives exact game values on tiny graphs.
"""

from toppling import Player, complete_graph, from_edge_list, minimax_toppling

# complete graphs: Max first, then Min first
for n in range(2, 7):
    g = complete_graph(n)
    print(f"K_{n}: t = {minimax_toppling(g, Player.MAX)}, Min-start = {minimax_toppling(g, Player.MIN)}")

# the 5-cycle and the 5-star
cycle = from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])
star = from_edge_list(5, [(0, i) for i in range(1, 5)])
print("C_5:", minimax_toppling(cycle), " star:", minimax_toppling(star))
