"""
PCA on feature subsets
======================

Error of a PCA estimate over the grid of feature counts ``p`` and
subspace dimensions ``k``.  Cells with ``k > p`` are undefined and stay blank.
"""

# %%
import numpy as np

from subspace_plane import SweepConfig, plot_curves, run_sweep

cfg = SweepConfig(
    d=64, m=20, n=30, sigma=0.1, trajectory=[(0.0, 0)],
    k_values=range(1, 41), p_min=1, num_orders=5, seed=0,
)
result = run_sweep(cfg)

# %%
# Out-of-sample error as a heatmap
plot_curves(result, "pca_e_out.svg", mode="heatmap", column="e_out")
plot_curves(result, "pca_e_in_S.svg", mode="heatmap", column="e_in_S")

# %%
# Once k reaches the rank of the centered data, the in-sample error on S is zero
for k in (10, 29, 35):
    ps, e = result.curve(0.0, 0, k, column="e_in_S")
    print(k, np.abs(np.round(e[ps >= 40][:3], 12)))

# %%
# For fixed k the averaged out-of-sample error drops as features are added
ps, e = result.curve(0.0, 0, 20)
print(np.round(e[~np.isnan(e)][::8], 3))
