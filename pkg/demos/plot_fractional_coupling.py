"""
Fractional games and the G(n, p) coupling
=========================================

The fractional game on K_n with p = 1/2 lasts about half as long as
the ordinary one.  Replaying its moves on a sample of G(n, 1/2) gives a
game of nearly the same length.
"""

import statistics
from fractions import Fraction

from toppling import ROW, TRIANGLE, Player, coupled_replay, frac_grid_play, play_grid, sample_gnp

n = 150
ordinary = play_grid(n, ROW, TRIANGLE, Player.MIN).turns
for p in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)):
    t = frac_grid_play(n, p, ROW, TRIANGLE, Player.MIN).turns
    print(f"p={p}: {t} turns, p * ordinary = {float(p * ordinary):.1f}")

# %%
# Coupled replay over a handful of seeds

ratios = []
for seed in range(5):
    r = coupled_replay(sample_gnp(n, 0.5, seed), Fraction(1, 2), ROW, TRIANGLE, seed=seed)
    ratios.append(r.ratio)
    print(r.csv_row())
print("median len_g / len_frac_kn:", round(statistics.median(ratios), 4))
