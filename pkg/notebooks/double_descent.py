"""
Double descent along the bottom edge
====================================

Fully supervised fits with a range of orthonormality softness values.
The unconstrained end is plain least squares and peaks at ``p = n - 1``.
"""

# %%
import math

import numpy as np

from subspace_plane import SweepConfig, plot_curves, run_sweep, write_csv

# %%
# The unconstrained curve is cheap, so start there
cfg = SweepConfig(d=64, m=20, n=32, sigma=0.5, trajectory=[(math.inf, 32)], num_orders=10, seed=1)
result = run_sweep(cfg)
ps, e = result.curve(math.inf, 32)
print("peak at p =", ps[np.argmax(e)])

# %%
# Softer constraints near the peak.  Projected descent is slower, so use a narrow range.
alphas = [0.0, 0.1, 1.0, math.inf]
cfg = SweepConfig(
    d=64, m=20, n=32, sigma=0.5, trajectory=[(a, 32) for a in alphas],
    p_min=26, p_max=36, num_orders=4, seed=1,
)
near_peak = run_sweep(cfg)
for a in alphas:
    print(a, np.round(near_peak.curve(a, 32)[1], 2))

# %%
write_csv(near_peak, "bottom_edge.csv")
plot_curves(near_peak, "bottom_edge.svg")
