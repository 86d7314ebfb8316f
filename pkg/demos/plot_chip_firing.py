"""
Stabilization and volatility
============================

Firing a few configurations by hand and through the engine.
"""

from toppling import ChipConfig, complete_graph, fire, is_volatile_complete, stabilize_or_detect

k4 = complete_graph(4)
c = ChipConfig(k4, (3, 2, 1, 0))
print("fire v0:", fire(c, 0).chips)

# sorted dominance of (3, 2, 1, 0) decides volatility on K_4
for chips in [(3, 2, 1, 0), (3, 3, 1, 1), (2, 2, 2, 0), (6, 0, 0, 0)]:
    cfg = ChipConfig(k4, chips)
    out = stabilize_or_detect(cfg)
    final = None if out.volatile else out.config.chips
    print(chips, out.tag.value, final, "sorted test:", is_volatile_complete(cfg))
