import pytest

from oracles import brute_value, connected_graphs
from toppling.game import Player, StateSpaceError, minimax_toppling, solve_game
from toppling.graph_core import complete_graph, from_edge_list

SMALL = connected_graphs(4)


def test_small_complete_values():
    assert minimax_toppling(complete_graph(2), Player.MAX) == 1
    assert minimax_toppling(complete_graph(3), Player.MAX) == 4
    assert minimax_toppling(complete_graph(3), Player.MIN) == 3


def test_matches_brute_force_on_all_small_connected_graphs():
    for n, edges in SMALL:
        g = from_edge_list(n, edges)
        for first in Player:
            expect = brute_value(g.adjacency, first is Player.MAX)
            assert minimax_toppling(g, first) == expect, (n, edges, first)


def test_first_player_difference_at_most_one():
    for n, edges in SMALL:
        g = from_edge_list(n, edges)
        assert abs(minimax_toppling(g, Player.MAX) - minimax_toppling(g, Player.MIN)) <= 1


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_graph_value_bounds(n):
    m = n * (n - 1) // 2
    for first in Player:
        assert m <= minimax_toppling(complete_graph(n), first) <= 2 * m - n + 1


def test_canonicalization_agrees_with_raw_states():
    # a K_4 relabelled through the edge list is still complete, so compare
    # against a copy that is solved without sorting states
    g = complete_graph(4)
    assert minimax_toppling(g, Player.MAX) == brute_value(g.adjacency, True)
    assert minimax_toppling(g, Player.MIN) == brute_value(g.adjacency, False)


def test_five_vertex_graphs_against_brute_force():
    cases = [
        [(0, 1), (1, 2), (2, 3), (3, 4)],
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        [(0, 1), (0, 2), (0, 3), (0, 4)],
        [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
    ]
    for edges in cases:
        g = from_edge_list(5, edges)
        assert minimax_toppling(g) == brute_value(g.adjacency, True)


def test_degree_zero_graph_is_zero():
    assert minimax_toppling(complete_graph(1)) == 0
    assert minimax_toppling(from_edge_list(3, [(0, 1)])) == 0


def test_guard():
    with pytest.raises(StateSpaceError):
        minimax_toppling(complete_graph(9))
    with pytest.raises(StateSpaceError):
        solve_game(complete_graph(4), Player.MAX, guard=10)
