import math
import re

import numpy as np
import pytest

from subspace_plane import harness
from subspace_plane.errors import ConfigError, DivergenceError, SchemaError
from subspace_plane.estimators import PgdOptions, embed, fit_regression, fit_unsupervised_pca
from subspace_plane.harness import (
    ALPHA_GRID,
    CSV_HEADER,
    SweepConfig,
    SweepRecord,
    SweepResult,
    build_dataset,
    build_model,
    estimator_name,
    fit_point,
    parse_config,
    plot_curves,
    read_csv,
    run_sweep,
    trajectory_presets,
    write_csv,
)
from subspace_plane.metrics import sup_in_sample, sup_out_of_sample, unsup_in_sample, unsup_out_of_sample_trace
from subspace_plane.model import FeatureSet, make_model, restrict, sample_dataset, true_covariance


def small_config(**kw):
    base = dict(d=16, m=3, n=10, trajectory=[(math.inf, 10)], num_orders=2, p_min=3, p_max=16, seed=4)
    base.update(kw)
    return SweepConfig(**base)


# -- presets and dispatch ----------------------------------------------------------


def test_right_edge_preset():
    pts = trajectory_presets("right-edge", 32)
    assert [s for _, s in pts] == [0, 4, 8, 12, 16, 20, 24, 28, 32]
    assert all(math.isinf(a) for a, _ in pts)


def test_diagonal_and_bottom_edge_presets():
    diag = trajectory_presets("diagonal", 32)
    assert diag[0] == (0.0, 0) and diag[-1][1] == 32 and math.isinf(diag[-1][0])
    assert [s for _, s in diag] == sorted(s for _, s in diag)
    bottom = trajectory_presets("bottom-edge", 32)
    assert (0.0, 32) in bottom and (math.inf, 32) in bottom
    assert [a for a, _ in bottom] == list(ALPHA_GRID)
    with pytest.raises(ConfigError):
        trajectory_presets("left-edge", 32)


@pytest.mark.parametrize(
    "alpha,n_sup,name",
    [
        (math.inf, 10, "regression"),
        (0.5, 10, "supervised-pgd"),
        (0.5, 4, "semisupervised-pgd"),
        (0.0, 0, "pca"),
        (0.5, 0, "unsupervised-pgd"),
        (math.inf, 0, "unsupervised-pgd"),
    ],
)
def test_estimator_dispatch(alpha, n_sup, name):
    assert estimator_name(alpha, n_sup, 10) == name


def test_corner_regression_matches_direct():
    model = make_model("hadamard", 16, 3, 0.2)
    data = sample_dataset(model, 10, 10, seed=1)
    feats = FeatureSet.from_order(np.arange(16)[::-1], 7)
    _, iters, err = fit_point(data, model, feats, math.inf, 10, 3)
    u = embed(fit_regression(restrict(data, feats), data.z_matrix, feats))
    assert iters == 0
    assert err.e_in == sup_in_sample(u, data)
    assert err.e_out == sup_out_of_sample(u, model)


def test_corner_pca_matches_direct():
    model = make_model("hadamard", 16, 3, 0.2)
    data = sample_dataset(model, 10, 10, seed=1)
    feats = FeatureSet.from_order(np.arange(16), 9)
    _, _, err = fit_point(data, model, feats, 0.0, 0, 4)
    u = embed(fit_unsupervised_pca(restrict(data, feats), 4, feats))
    assert err.e_in == unsup_in_sample(u, data.x_matrix)
    assert err.e_out == unsup_out_of_sample_trace(u, true_covariance(model))
    assert err.e_out_source == "analytic-trace"


def test_spectral_and_monte_carlo_modes_agree():
    model = make_model("hadamard", 16, 3, 0.2)
    data = sample_dataset(model, 10, 10, seed=1)
    feats = FeatureSet.from_order(np.arange(16), 9)
    a = fit_point(data, model, feats, 0.0, 0, 4)[2]
    s = fit_point(data, model, feats, 0.0, 0, 4, e_out_mode="spectral")[2]
    mc = fit_point(data, model, feats, 0.0, 0, 4, e_out_mode="monte-carlo", n_test=100_000, test_seed=3)[2]
    assert s.e_out_source == "spectral-formula" and mc.e_out_source == "monte-carlo"
    assert abs(s.e_out - a.e_out) <= 1e-8 * a.e_out
    assert abs(mc.e_out - a.e_out) <= 0.02 * a.e_out


# -- config validation -------------------------------------------------------------


@pytest.mark.parametrize(
    "kw",
    [
        dict(trajectory=[]),
        dict(trajectory=[(-1.0, 10)]),
        dict(trajectory=[(0.0, 11)]),
        dict(m=16),
        dict(p_min=2),
        dict(p_max=17),
        dict(num_orders=0),
        dict(e_out_mode="exact"),
        dict(e_out_mode="spectral"),
    ],
)
def test_config_rejects(kw):
    with pytest.raises(ConfigError):
        small_config(**kw)


def test_parse_config():
    cfg = parse_config(
        """
        # unsupervised heatmap
        basis = random
        d = 16
        m = 3
        n = 10
        sigma = 0.25
        trajectory = 0:0, inf:10
        k_values = 1-3, 5
        p_min = 5
        num_orders = 3
        max_iters = 50
        rel_tol = 1e-6
        line_search_factors = 0.5, 1, 2
        out_csv = out.csv
        """
    )
    assert cfg.basis == "random" and cfg.sigma == 0.25
    assert cfg.trajectory == ((0.0, 0), (math.inf, 10))
    assert cfg.k_values == (1, 2, 3, 5)
    assert cfg.p_range == (5, 16)
    assert cfg.pgd.max_iters == 50 and cfg.pgd.rel_tol == 1e-6
    assert cfg.out_csv == "out.csv"
    assert parse_config("d = 16\nm = 3\nn = 8\ntrajectory = right-edge").trajectory[1] == (math.inf, 1)


@pytest.mark.parametrize(
    "text",
    [
        "d = 16\nm = 3\nn = 10",
        "d = 16\nm = 3\nn = 10\ntrajectory = bottom-edge\nbogus = 1",
        "d = sixteen\nm = 3\nn = 10\ntrajectory = bottom-edge",
        "d = 16\nm = 3\nn = 10\ntrajectory = bottom-edge\nmax_iters = 0",
        "d = 16\nm = 3\nn = 10\ntrajectory = nowhere",
        "just words",
    ],
)
def test_parse_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


# -- sweeps --------------------------------------------------------------------------


def test_single_record_sweep():
    res = run_sweep(small_config(num_orders=1, p_min=5, p_max=5))
    assert len(res.records) == 1
    r = res.records[0]
    assert (r.p, r.k, r.trial, r.iterations) == (5, 3, 0, 0)


def test_sweep_record_layout_and_missing_cells():
    cfg = small_config(trajectory=[(0.0, 0)], k_values=(2, 6), p_min=2, p_max=8)
    res = run_sweep(cfg)
    assert len(res.records) == 2 * 7 * 2
    missing = [r for r in res.records if r.e_out is None]
    assert {(r.p, r.k) for r in missing} == {(p, 6) for p in range(2, 6)}
    assert all(r.e_in is None and r.iterations is None for r in missing)
    ps, vals = res.curve(0.0, 0, k=6)
    assert np.isnan(vals[:4]).all() and np.isfinite(vals[4:]).all()


def test_averaging_is_trial_mean():
    res = run_sweep(small_config(num_orders=3))
    for (alpha, n_sup, p, k), (e_in, e_in_s, e_out) in res.averaged.items():
        rs = [r for r in res.records if (r.alpha, r.n_sup, r.p, r.k) == (alpha, n_sup, p, k)]
        assert len(rs) == 3
        assert abs(e_out - np.mean([r.e_out for r in rs])) <= 1e-12 * max(1.0, abs(e_out))
        assert abs(e_in - np.mean([r.e_in for r in rs])) <= 1e-12 * max(1.0, abs(e_in))


def test_sweep_deterministic_and_seed_sensitive():
    a = run_sweep(small_config(trajectory=[(0.3, 10), (0.3, 5)], p_min=10, p_max=12))
    b = run_sweep(small_config(trajectory=[(0.3, 10), (0.3, 5)], p_min=10, p_max=12))
    c = run_sweep(small_config(trajectory=[(0.3, 10), (0.3, 5)], p_min=10, p_max=12, seed=5))
    assert a.records == b.records
    assert a.records != c.records


def test_sweep_shares_data_unless_resampled():
    cfg = small_config()
    model = build_model(cfg)
    assert np.array_equal(build_dataset(cfg, model, 0).x_matrix, build_dataset(cfg, model, 1).x_matrix)
    cfg = small_config(resample_data=True)
    assert not np.array_equal(build_dataset(cfg, model, 0).x_matrix, build_dataset(cfg, model, 1).x_matrix)
    assert len(run_sweep(small_config(resample_data=True, p_min=9, p_max=10)).records) == 4


def test_sweep_error_context(monkeypatch):
    def boom(*args, **kwargs):
        raise DivergenceError("objective became non-finite")

    monkeypatch.setattr(harness, "fit_supervised_pgd", boom)
    cfg = small_config(trajectory=[(0.3, 10)], p_min=4, p_max=4, num_orders=1)
    with pytest.raises(DivergenceError, match=r"alpha=0\.3, n_sup=10, trial=0, p=4, k=3: objective"):
        run_sweep(cfg)


def test_huge_initial_step_is_backtracked():
    cfg = small_config(trajectory=[(0.3, 10)], p_min=4, p_max=4, num_orders=1, pgd=PgdOptions(initial_step=1e300))
    assert np.isfinite(run_sweep(cfg).records[0].e_out)


# -- CSV -------------------------------------------------------------------------------


def test_csv_round_trip(tmp_path):
    res = run_sweep(small_config(trajectory=[(0.0, 0), (math.inf, 10)], k_values=(3, 5), p_min=3, p_max=6))
    path = tmp_path / "r.csv"
    write_csv(res, path)
    back = read_csv(path)
    assert back.records == res.records
    assert path.read_text().splitlines()[0] == ",".join(CSV_HEADER)
    assert ",inf," in path.read_text() or path.read_text().count("\ninf,") > 0


def test_csv_full_precision(tmp_path):
    rec = SweepRecord(0.1, 3, 0, 4, 2, 1 / 3, math.pi * 1e-17, 2.0**-1074, "monte-carlo", 7)
    write_csv(SweepResult([rec]), tmp_path / "r.csv")
    assert read_csv(tmp_path / "r.csv").records == [rec]


def test_csv_empty_result(tmp_path):
    write_csv(SweepResult([]), tmp_path / "e.csv")
    assert (tmp_path / "e.csv").read_text() == ",".join(CSV_HEADER) + "\n"
    assert read_csv(tmp_path / "e.csv").records == []


def test_csv_malformed_header(tmp_path):
    bad = list(CSV_HEADER)
    bad[5] = "E_in"
    (tmp_path / "b.csv").write_text(",".join(bad) + "\n")
    with pytest.raises(SchemaError, match="E_in"):
        read_csv(tmp_path / "b.csv")
    (tmp_path / "x.csv").write_text(",".join(CSV_HEADER + ["extra"]) + "\n")
    with pytest.raises(SchemaError, match="extra"):
        read_csv(tmp_path / "x.csv")
    (tmp_path / "r.csv").write_text(",".join(CSV_HEADER) + "\n1,2,3\n")
    with pytest.raises(SchemaError):
        read_csv(tmp_path / "r.csv")


# -- plots -----------------------------------------------------------------------------


def test_plot_one_polyline_per_point(tmp_path):
    res = run_sweep(small_config(trajectory=[(math.inf, 10)], p_min=3, p_max=16, num_orders=1))
    plot_curves(res, tmp_path / "c.svg")
    svg = (tmp_path / "c.svg").read_text()
    lines = re.findall(r'<polyline class="curve"[^>]*points="([^"]*)"', svg)
    assert len(lines) == 1
    assert len(lines[0].split()) == 14


def test_plot_multiple_points(tmp_path):
    res = run_sweep(small_config(trajectory=[(math.inf, 10), (math.inf, 5), (0.0, 0)], p_min=5, p_max=8, num_orders=1))
    plot_curves(res, tmp_path / "c.svg", mode="curves")
    assert (tmp_path / "c.svg").read_text().count('class="curve"') == 3


def test_plot_heatmap_cells(tmp_path):
    res = run_sweep(small_config(trajectory=[(0.0, 0)], k_values=(1, 2, 3, 4, 5, 6), p_min=1, p_max=8, num_orders=1))
    plot_curves(res, tmp_path / "h.svg")
    svg = (tmp_path / "h.svg").read_text()
    defined = sum(1 for p in range(1, 9) for k in range(1, 7) if k <= p)
    assert svg.count('class="cell"') == defined == 8 * 6 - 15


def test_plot_errors(tmp_path):
    with pytest.raises(SchemaError):
        plot_curves(SweepResult([]), tmp_path / "e.svg")
    res = run_sweep(small_config(num_orders=1, p_min=5, p_max=5))
    with pytest.raises(ConfigError):
        plot_curves(res, tmp_path / "e.svg", mode="pie")
