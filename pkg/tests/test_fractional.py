import itertools
import random
from fractions import Fraction

import pytest

from oracles import brute_value, connected_graphs, naive_outcome
from toppling.chipfire import ChipConfig, stabilize_or_detect
from toppling.fractional import (
    COUPLED_HEADER,
    FracConfig,
    PlacementCap,
    coupled_replay,
    frac_grid_play,
    frac_minimax,
    frac_stabilize_or_detect,
    parse_rational,
)
from toppling.fuzz import random_graph
from toppling.game import ROW, SQUARE, TRIANGLE, Player, minimax_toppling, play_game, play_grid
from toppling.graph_core import complete_graph, from_edge_list, sample_gnp

K3 = complete_graph(3)
F = Fraction


def test_parse_rational():
    assert parse_rational("1/2") == F(1, 2)
    assert parse_rational(" 2/4 ") == F(1, 2)
    assert parse_rational("1") == 1
    assert parse_rational(F(2, 3)) == F(2, 3)
    for bad in ("0", "3/2", "-1/2", "x", "1/0", "0.5"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_frac_config_units():
    c = FracConfig.from_chips(K3, "1/2", [1, F(1, 2), 0])
    assert c.units == (2, 1, 0) and c.fire_unit == 1 and c.chip_unit == 2
    assert c.chips == (1, F(1, 2), 0) and c.total == F(3, 2)
    assert c.add(2).chips == (1, F(1, 2), 1)
    with pytest.raises(ValueError):
        FracConfig.from_chips(K3, "1/2", [F(1, 3), 0, 0])
    with pytest.raises(ValueError):
        FracConfig(K3, F(1, 2), (1, -1, 0))


def test_frac_stabilize_examples():
    out = frac_stabilize_or_detect(FracConfig.from_chips(K3, "1/2", [1, 0, 0]))
    assert not out.volatile and out.config.chips == (0, F(1, 2), F(1, 2))
    out = frac_stabilize_or_detect(FracConfig.from_chips(K3, "1/2", [1, F(1, 2), F(1, 2)]), shortcut=False)
    assert out.volatile and all(out.fired)


def test_p1_exhaustive_on_k3():
    for chips in itertools.product(range(4), repeat=3):
        a = frac_stabilize_or_detect(FracConfig(K3, 1, chips))
        b = stabilize_or_detect(ChipConfig(K3, chips))
        assert a.tag is b.tag and a.num_firings == b.num_firings
        if not a.volatile:
            assert a.config.units == b.config.chips and a.firings == b.firings


def naive_frac(adj, p, chips):
    return naive_outcome(adj, list(chips), p)


def test_against_naive_rational_oracle():
    rng = random.Random(21)
    for _ in range(300):
        g = random_graph(rng, 7)
        p = F(rng.randint(1, 4), 4) if rng.random() < 0.5 else F(rng.randint(1, 3), 3)
        b = p.denominator
        units = [rng.randint(0, 3 * b * max(1, max(g.degrees, default=0))) // 2 for _ in range(g.n)]
        c = FracConfig(g, p, units)
        tag, stable = naive_frac(g.adjacency, p, c.chips)
        out = frac_stabilize_or_detect(c)
        assert out.tag.value == tag
        if stable is not None:
            assert out.config.chips == stable


def test_floor_reduction():
    rng = random.Random(2)
    for _ in range(300):
        g = random_graph(rng, 12)
        p = rng.choice([F(1, 2), F(2, 3), F(3, 5), F(1, 7)])
        units = [rng.randint(0, 2 * p.numerator * (d + 1)) for d in g.degrees]
        c = FracConfig(g, p, units)
        reduced = ChipConfig(g, tuple(u // p.numerator for u in units))
        assert frac_stabilize_or_detect(c).volatile == stabilize_or_detect(reduced).volatile


def test_frac_conservation_and_denominators():
    rng = random.Random(9)
    for _ in range(200):
        g = random_graph(rng, 10)
        p = F(2, 5)
        c = FracConfig(g, p, [rng.randint(0, 10) for _ in range(g.n)])
        out = frac_stabilize_or_detect(c)
        if not out.volatile:
            assert out.config.total == c.total
            assert all(5 % x.denominator == 0 for x in out.config.chips)


def test_frac_minimax_values():
    assert frac_minimax(K3, "1") == minimax_toppling(K3) == 4
    assert frac_minimax(K3, "1/2") == 2
    assert F(1, 2) * minimax_toppling(K3) == 2


def test_frac_minimax_matches_brute_force():
    for n, edges in connected_graphs(3) + [(4, [(0, 1), (1, 2), (2, 3)])]:
        g = from_edge_list(n, edges)
        for p in (F(1, 3), F(1, 2), F(2, 3)):
            assert frac_minimax(g, p) == brute_value(g.adjacency, True, p), (edges, p)


def test_frac_grid_p1_identical_to_ordinary():
    for n in (2, 5, 17, 40):
        for s in (ROW, TRIANGLE, SQUARE):
            for first in Player:
                a = frac_grid_play(n, "1", ROW, s, first, trace=True)
                b = play_game(complete_graph(n), ROW, s, first, trace=True)
                assert a.turns == b.turns
                assert [t.target for t in a.trace] == [t.target for t in b.trace]


def test_frac_grid_verified_against_engine():
    # verify=True replays on the exact engine and raises on any mismatch
    for p in ("1/2", "1/3", "2/3", "3/4"):
        for s in (ROW, TRIANGLE, SQUARE):
            rec = frac_grid_play(25, p, ROW, s, Player.MIN)
            assert rec.turns > 0 and rec.in_chips == 25 * 24 // 2


def test_frac_grid_scales_with_p():
    base = play_grid(60, ROW, TRIANGLE, Player.MIN).turns
    for p in (F(1, 2), F(1, 4)):
        t = frac_grid_play(60, p, ROW, TRIANGLE, Player.MIN).turns
        assert abs(t - p * base) <= 0.1 * p * base


def test_placement_cap():
    cap = PlacementCap(10, F(1, 2), 0.2)
    assert cap.limit == 1
    assert cap.redirect(Player.MAX, 3) == 3
    assert cap.redirect(Player.MAX, 3) == 0
    assert cap.redirect(Player.MIN, 3) == 3
    rec = frac_grid_play(30, "1/2", ROW, TRIANGLE, Player.MIN, cap_omega=1.0)
    assert rec.turns > 0


def test_coupled_replay_trivial_and_deterministic():
    for n in (2, 10, 30):
        r = coupled_replay(complete_graph(n), 1, ROW, TRIANGLE)
        assert r.len_frac_kn == r.len_g
    g = sample_gnp(60, 0.5, 4)
    a = coupled_replay(g, "1/2", ROW, TRIANGLE, seed=4)
    b = coupled_replay(g, "1/2", ROW, TRIANGLE, seed=4)
    assert a == b and a.csv_row().startswith("4,60,1,2,")
    assert COUPLED_HEADER == "seed,n,p_num,p_den,len_frac_kn,len_g,ratio"


def test_coupled_replay_degenerate_graph():
    g = from_edge_list(4, [(0, 1), (1, 2)])
    r = coupled_replay(g, "1/2", ROW, TRIANGLE)
    assert r.len_g == 0 and r.len_frac_kn > 0


def test_coupled_ratio_near_one():
    rs = [coupled_replay(sample_gnp(120, 0.5, s), "1/2", ROW, TRIANGLE, seed=s).ratio for s in range(3)]
    assert all(0.85 <= r <= 1.15 for r in rs)
