import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_outcome
from toppling.chipfire import (
    INT64_MAX,
    ChipConfig,
    ChipEngine,
    Outcome,
    dominates,
    fire,
    format_snapshot,
    is_volatile_complete,
    parse_snapshot,
    stabilize_or_detect,
)
from toppling.fuzz import random_chips, random_connected_graph, random_graph
from toppling.graph_core import Graph, complete_graph, from_edge_list

K3, K4 = complete_graph(3), complete_graph(4)


def cfg(g, *chips):
    return ChipConfig(g, chips)


def test_fire_examples():
    assert fire(cfg(K3, 2, 0, 0), 0).chips == (0, 1, 1)
    assert fire(cfg(K4, 3, 2, 1, 0), 0).chips == (0, 3, 2, 1)
    with pytest.raises(ValueError):
        fire(cfg(K3, 1, 0, 0), 0)


def test_config_validation():
    with pytest.raises(ValueError):
        cfg(K3, 1, -1, 0)
    with pytest.raises(ValueError):
        cfg(K3, 1, 0)
    with pytest.raises(OverflowError):
        cfg(K3, INT64_MAX + 1, 0, 0)


def test_stabilize_examples():
    out = stabilize_or_detect(cfg(K3, 2, 1, 0))
    assert out.tag is Outcome.VOLATILE and all(out.fired)
    out = stabilize_or_detect(cfg(K3, 2, 1, 0), shortcut=False)
    assert out.volatile and out.num_firings == 3 and all(out.fired)

    out = stabilize_or_detect(cfg(K3, 1, 1, 1))
    assert out.tag is Outcome.STABLE and out.config.chips == (1, 1, 1) and out.num_firings == 0
    assert out.firings == (0, 0, 0)

    out = stabilize_or_detect(cfg(K3, 2, 0, 0))
    assert not out.volatile and out.num_firings == 1
    assert sorted(out.config.chips, reverse=True) == [1, 1, 0]
    assert out.config.is_stable()

    assert stabilize_or_detect(cfg(Graph(1, ((),)), 0)).volatile


def test_isolated_vertex_in_larger_graph():
    g = from_edge_list(3, [(0, 1)])
    out = stabilize_or_detect(cfg(g, 0, 0, 0))
    assert out.volatile and out.trigger_component == 1 and out.fired == (False, False, True)


def test_disconnected_components_independent():
    # triangle plus an edge; only the edge component blows up
    g = from_edge_list(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    out = stabilize_or_detect(cfg(g, 1, 1, 0, 1, 0), shortcut=False)
    assert out.volatile and out.trigger_component == 1
    assert out.fired[3] and out.fired[4]
    out = stabilize_or_detect(cfg(g, 2, 0, 0, 0, 0))
    assert not out.volatile and out.config.chips[3:] == (0, 0)


def test_is_volatile_complete_examples():
    assert is_volatile_complete(cfg(K3, 2, 1, 0))
    assert not is_volatile_complete(cfg(K3, 1, 1, 1))
    assert is_volatile_complete(cfg(K4, 3, 3, 1, 1))
    assert stabilize_or_detect(cfg(K4, 3, 3, 1, 1), shortcut=False).volatile
    # a column taller than n - 1 goes through the engine
    assert is_volatile_complete(cfg(K3, 5, 0, 0)) == stabilize_or_detect(cfg(K3, 5, 0, 0)).volatile
    with pytest.raises(ValueError):
        is_volatile_complete(cfg(from_edge_list(3, [(0, 1), (1, 2)]), 0, 0, 0))


def test_dominates_examples():
    assert dominates(cfg(K3, 2, 1, 0), cfg(K3, 1, 1, 0))
    assert not dominates(cfg(K3, 2, 0, 0), cfg(K3, 0, 0, 2))
    c = cfg(K3, 1, 2, 0)
    assert dominates(c, c)
    with pytest.raises(ValueError):
        dominates(c, cfg(K4, 0, 0, 0, 0))


def test_snapshot_roundtrip():
    c = cfg(K4, 3, 0, 12, 1)
    text = format_snapshot(c)
    assert text == "0 3\n2 12\n3 1\n"
    assert parse_snapshot(text, K4) == c
    with pytest.raises(ValueError):
        parse_snapshot("7 1\n", K4)
    with pytest.raises(ValueError):
        parse_snapshot("1 2 3\n", K4)


def test_exhaustive_against_naive_oracle():
    graphs = [K3, K4, from_edge_list(4, [(0, 1), (1, 2), (2, 3)]), from_edge_list(4, [(0, 1), (1, 2), (2, 0), (2, 3)])]
    for g in graphs:
        for chips in itertools.product(range(5), repeat=g.n):
            tag, stable = naive_outcome(g.adjacency, chips)
            for shortcut in (True, False):
                out = stabilize_or_detect(ChipConfig(g, chips), shortcut=shortcut)
                assert out.tag.value == tag, (g.edges(), chips)
                if stable is not None:
                    assert out.config.chips == stable


def test_random_against_naive_oracle():
    rng = random.Random(11)
    for _ in range(400):
        g = random_graph(rng, 9)
        chips = random_chips(rng, g)
        tag, stable = naive_outcome(g.adjacency, chips)
        out = stabilize_or_detect(ChipConfig(g, chips), random.Random(rng.random()))
        assert out.tag.value == tag
        if stable is not None:
            assert out.config.chips == stable


def test_volatile_fired_flags_cover_component():
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng, 15)
        out = stabilize_or_detect(ChipConfig(g, random_chips(rng, g)), shortcut=False)
        if out.volatile:
            comp = g.components()[out.trigger_component]
            assert all(out.fired[v] for v in comp)
        else:
            assert out.config.is_stable()


@settings(max_examples=200)
@given(st.randoms(use_true_random=False))
def test_fire_conserves_chips(r):
    g = random_connected_graph(r, 12)
    c = ChipConfig(g, random_chips(r, g, 3 * g.num_edges))
    for v in range(g.n):
        if c.chips[v] >= g.degrees[v]:
            after = fire(c, v)
            assert after.total == c.total
            assert after.chips[v] == c.chips[v] - g.degrees[v]


@settings(max_examples=100)
@given(st.randoms(use_true_random=False))
def test_stabilization_conserves_chips(r):
    g = random_connected_graph(r, 15)
    c = ChipConfig(g, random_chips(r, g))
    out = stabilize_or_detect(c)
    if not out.volatile:
        assert out.config.total == c.total
        # firing counts explain the final configuration
        for v in range(g.n):
            gained = sum(out.firings[w] for w in g.adjacency[v])
            assert out.config.chips[v] == c.chips[v] - out.firings[v] * g.degrees[v] + gained


def test_engine_incremental_matches_batch():
    rng = random.Random(3)
    for _ in range(50):
        g = random_connected_graph(rng, 12)
        eng = ChipEngine(g)
        chips = [0] * g.n
        while True:
            v = rng.randrange(g.n)
            chips[v] += 1
            volatile = eng.add_chip(v)
            out = stabilize_or_detect(ChipConfig(g, chips))
            assert volatile == out.volatile
            if volatile:
                with pytest.raises(RuntimeError):
                    eng.add_chip(0)
                break
            chips = list(out.config.chips)
            assert eng.units == chips


def test_engine_overflow_guard():
    g = complete_graph(2)
    eng = ChipEngine(g, [INT64_MAX, 0], shortcut=False)
    with pytest.raises(OverflowError):
        eng.add_chip(0)


def test_engine_load_resets():
    eng = ChipEngine(K3)
    eng.add_chip(0)
    eng.add_chip(0)
    eng.load([1, 1, 0])
    assert eng.firings == [0, 0, 0] and not eng.volatile
    assert eng.add_chip(2) is False
    assert eng.add_chip(0) is True


def test_engine_rejects_bad_units():
    with pytest.raises(ValueError):
        ChipEngine(K3, fire_unit=0)
    with pytest.raises(ValueError):
        ChipEngine(K3, [1, 2])
