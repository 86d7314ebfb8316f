"""
Grid strategies against the ODE constants
=========================================

Min plays triangle or square, Max plays row, Min moves first.  The
rounds per n^2 approach x_plus and x_minus as n grows.
"""

import time

from toppling import ROW, SQUARE, TRIANGLE, Player, compute_constants, play_grid

consts = compute_constants()
print(consts.rounded())

for strat, target in ((TRIANGLE, consts.x_plus), (SQUARE, consts.x_minus)):
    print(f"\n{strat.name} vs row, target {target:.6f}")
    for n in (125, 250, 500, 1000):
        t0 = time.perf_counter()
        rec = play_grid(n, ROW, strat, Player.MIN)
        ratio = rec.rounds_per_n2
        print(f"  n={n:5d}  rounds/n^2={ratio:.6f}  rel err={(ratio - target) / target:+.3%}  ({time.perf_counter() - t0:.2f}s)")
