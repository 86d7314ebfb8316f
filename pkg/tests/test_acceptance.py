"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line (visible under plain
``pytest``) before asserting.  Run ``python3 tests/test_acceptance.py`` to
get just the nine lines.
"""

import io
import itertools
import json
import statistics
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from toppling.chipfire import ChipConfig, stabilize_or_detect
from toppling.cli import main as cli_main
from toppling.fractional import FracConfig, coupled_replay, frac_minimax, frac_stabilize_or_detect
from toppling.fuzz import abelian_suite, frac_unit_suite, inchip_suite, oracle_suite, threshold_suite
from toppling.game import ROW, SQUARE, TRIANGLE, Player, minimax_toppling, play_grid
from toppling.graph_core import complete_graph, from_edge_list, sample_gnp
from toppling.ode_bounds import compute_constants

sys.path.insert(0, __import__("os").path.dirname(__file__))
from oracles import connected_graphs  # noqa: E402

SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        with capsys.disabled():
            print("\n" + line, flush=True)
        return ok

    return emit


def criterion_1():
    t0 = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(["bounds", "--tol", "1e-9"])
    elapsed = time.perf_counter() - t0
    d = json.loads(buf.getvalue())
    ok = (
        code == 0
        and abs(d["x_bar"] - 0.204309) <= 5e-6
        and 0.31840 <= d["x_plus"] <= 0.318576
        and 0.298200 <= d["x_minus"] <= 0.29840
        and d["upper_coeff"] < 0.637152
        and d["lower_coeff"] > 0.5964
        and elapsed < 5.0
    )
    detail = (
        f"x_bar={d['x_bar']:.9f} x_plus={d['x_plus']:.9f} x_minus={d['x_minus']:.9f} "
        f"2x+={d['upper_coeff']:.7f} 2x-={d['lower_coeff']:.7f} in {elapsed:.2f}s"
    )
    return ok, detail


def criterion_2():
    res = compute_constants(1e-9)
    sizes = [250, 500, 1000, 2000]
    ok = True
    parts = []
    for strat, target in ((TRIANGLE, res.x_plus), (SQUARE, res.x_minus)):
        errors = []
        for n in sizes:
            t0 = time.perf_counter()
            rec = play_grid(n, ROW, strat, Player.MIN)
            elapsed = time.perf_counter() - t0
            ok &= elapsed < 60.0
            errors.append(abs(rec.rounds_per_n2 - target))
        rel = errors[-1] / target
        ok &= rel <= 0.03 and all(a > b for a, b in zip(errors, errors[1:]))
        parts.append(f"{strat.name}: rel err at 2000 = {rel:.3%}, abs errs " + "/".join(f"{e:.2e}" for e in errors))
    return ok, "; ".join(parts)


def criterion_3():
    r = abelian_suite(SEED, 1000, 40)
    return r.ok and r.cases == 1000, f"{r.passed}/{r.cases} random (graph, config) pairs agree, n <= 40"


def criterion_4():
    r = threshold_suite(SEED, 10_000, 30)
    return r.ok and r.cases == 10_000, f"{r.failures} violations in {r.cases} configurations, n <= 30"


def criterion_5():
    r = oracle_suite(SEED, 10_000, 12)
    return r.ok and r.cases == 10_000, f"{r.failures} disagreements in {r.cases} K_n configurations, n <= 12"


def criterion_6():
    t0 = time.perf_counter()
    ok = minimax_toppling(complete_graph(2), Player.MAX) == 1
    ok &= minimax_toppling(complete_graph(3), Player.MAX) == 4
    ok &= minimax_toppling(complete_graph(3), Player.MIN) == 3
    worst = 0
    for n, edges in connected_graphs(4):
        g = from_edge_list(n, edges)
        gap = abs(minimax_toppling(g, Player.MAX) - minimax_toppling(g, Player.MIN))
        worst = max(worst, gap)
    ok &= worst <= 1
    values = {}
    for n in range(2, 7):
        m = n * (n - 1) // 2
        v = minimax_toppling(complete_graph(n), Player.MAX)
        values[n] = v
        ok &= m <= v <= 2 * m - n + 1
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30.0
    return ok, f"t(K_n) n=2..6: {list(values.values())}; max first-player gap {worst}; {elapsed:.1f}s"


P_VALUES = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]


def criterion_7():
    k3 = complete_graph(3)
    ok = True
    for chips in itertools.product(range(4), repeat=3):
        a = frac_stabilize_or_detect(FracConfig(k3, 1, chips))
        b = stabilize_or_detect(ChipConfig(k3, chips))
        same = a.tag is b.tag and (a.volatile or (a.config.units == b.config.chips and a.firings == b.firings))
        ok &= same
    fz = frac_unit_suite(SEED, 1000, 30)
    ok &= fz.ok
    half = frac_minimax(k3, Fraction(1, 2))
    ok &= half == 2
    worst = Fraction(0)
    for n, edges in connected_graphs(4):
        g = from_edge_list(n, edges)
        t = minimax_toppling(g)
        for p in P_VALUES:
            dev = abs(frac_minimax(g, p) - p * t)
            worst = max(worst, dev / max(n, 1))
            ok &= dev <= 3 * n
    return ok, f"p=1 exhaustive on K3 and {fz.passed}/{fz.cases} fuzz; t_1/2(K3)={half}; max |t_p - p t|/n = {float(worst):.3f} (limit 3)"


def criterion_8():
    r = inchip_suite(SEED, 10_000, 30)
    return r.ok and r.cases == 10_000, f"{r.failures} violations in {r.cases} reachable grids"


def criterion_9():
    t0 = time.perf_counter()
    stats = {}
    for n in (200, 400):
        ratios = []
        for seed in range(10):
            g = sample_gnp(n, 0.5, seed)
            ratios.append(coupled_replay(g, Fraction(1, 2), ROW, TRIANGLE, Player.MIN, seed=seed).ratio)
        stats[n] = (statistics.median(ratios), statistics.stdev(ratios))
    elapsed = time.perf_counter() - t0
    med400 = stats[400][0]
    ok = 0.85 <= med400 <= 1.15 and stats[400][1] < stats[200][1] and elapsed < 300
    detail = (
        f"median ratio n=400 {med400:.4f}; stdev {stats[200][1]:.4f} (n=200) -> {stats[400][1]:.4f} (n=400); "
        f"{elapsed:.1f}s"
    )
    return ok, detail


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("number", range(1, 10), ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(number, report):
    ok, detail = CRITERIA[number - 1]()
    assert report(number, ok, detail), detail


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {i}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
