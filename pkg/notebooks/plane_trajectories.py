"""
Trajectories across the supervision/orthonormality plane
========================================================

Right edge: no orthonormality constraint, supervision drops from ``n`` to 0.
The peak at ``p = n - 1`` fades as labels are removed.
"""

# %%
import math

import numpy as np

from subspace_plane import SweepConfig, plot_curves, run_sweep, trajectory_presets
from subspace_plane.metrics import monotonicity_metric

n = 32
print(trajectory_presets("right-edge", n))
print(trajectory_presets("diagonal", n))

# %%
points = [(math.inf, s) for s in (32, 24, 16)]
cfg = SweepConfig(d=64, m=20, n=n, sigma=0.5, trajectory=points, num_orders=3, p_min=20, seed=2)
result = run_sweep(cfg)
for a, s in points:
    ps, e = result.curve(a, s)
    print(f"n_sup={s:2d}  peak p={ps[np.argmax(e)]}  max e_out={e.max():.2f}")

# %%
# Unlabeled end of the edge.  This runs unsupervised descent and takes a minute or two.
unsup = run_sweep(SweepConfig(d=64, m=20, n=n, sigma=0.5, trajectory=[(math.inf, 0)], num_orders=2, seed=2))
print("monotonicity:", monotonicity_metric(unsup.curve(math.inf, 0)[1]))

# %%
plot_curves(result, "right_edge.svg")
