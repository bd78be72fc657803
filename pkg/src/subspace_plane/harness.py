"""Experiment orchestration over trajectories of the supervision/orthonormality plane.

A sweep draws one dataset, a number of random feature orders, and for every
plane coordinate, order, and prefix length ``p`` fits the estimator that
coordinate selects, then records in-sample and out-of-sample errors.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError, SchemaError, SubspaceError
from .estimators import (
    PgdOptions,
    SubspaceEstimate,
    embed,
    fit_regression,
    fit_semisupervised_pgd,
    fit_supervised_pgd,
    fit_unsupervised_pca,
    fit_unsupervised_pgd,
)
from .metrics import (
    ErrorRecord,
    sup_in_sample,
    sup_out_of_sample,
    unsup_in_sample,
    unsup_in_sample_S,
    unsup_out_of_sample_monte_carlo,
    unsup_out_of_sample_spectral,
    unsup_out_of_sample_trace,
)
from .model import (
    Dataset,
    FeatureSet,
    GroundTruthModel,
    derive_seed,
    grow_feature_orders,
    make_model,
    restrict,
    sample_dataset,
    true_covariance,
)
from .spectral import ConstraintLevel, eig_symmetric

__all__ = [
    "SweepConfig",
    "SweepRecord",
    "SweepResult",
    "CSV_HEADER",
    "ALPHA_GRID",
    "trajectory_presets",
    "estimator_name",
    "fit_point",
    "evaluate",
    "run_sweep",
    "write_csv",
    "read_csv",
    "plot_curves",
    "parse_config",
    "load_config",
]

CSV_HEADER = [
    "trajectory_alpha",
    "trajectory_nsup",
    "trial",
    "p",
    "k",
    "e_in",
    "e_in_S",
    "e_out",
    "e_out_source",
    "iterations",
]

ALPHA_GRID = (0.0, 0.05, 0.1, 0.3, 1.0, 3.0, math.inf)
E_OUT_MODES = ("analytic", "spectral", "monte-carlo")

# fixed sub-stream tags
_BASIS, _DATA, _ORDERS, _INIT, _TEST = range(5)


@dataclass(frozen=True)
class SweepConfig:
    d: int
    m: int
    n: int
    trajectory: Tuple[Tuple[float, int], ...]
    basis: str = "hadamard"
    sigma: float = 0.1
    seed: int = 0
    k_values: Tuple[int, ...] = ()
    p_min: Optional[int] = None
    p_max: Optional[int] = None
    num_orders: int = 10
    pgd: PgdOptions = field(default_factory=PgdOptions)
    n_test: int = 1000
    e_out_mode: str = "analytic"
    resample_data: bool = False
    out_csv: Optional[str] = None
    out_plot: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "trajectory", tuple((float(a), int(s)) for a, s in self.trajectory))
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        if not self.trajectory:
            raise ConfigError("trajectory is empty")
        if not 0 < self.m < self.d:
            raise ConfigError(f"need 0 < m < d, got m={self.m}, d={self.d}")
        if self.n < 2:
            raise ConfigError("n must be >= 2")
        if self.num_orders < 1:
            raise ConfigError("num_orders must be >= 1")
        if self.e_out_mode not in E_OUT_MODES:
            raise ConfigError(f"e_out_mode must be one of {E_OUT_MODES}")
        for alpha, n_sup in self.trajectory:
            if math.isnan(alpha) or alpha < 0:
                raise ConfigError(f"alpha must be >= 0, got {alpha}")
            if not 0 <= n_sup <= self.n:
                raise ConfigError(f"n_sup={n_sup} outside [0, {self.n}]")
            if n_sup > 0 and self.e_out_mode == "spectral":
                raise ConfigError("spectral e_out is only defined for unsupervised points")
            if self.e_out_mode == "spectral" and alpha != 0:
                raise ConfigError("spectral e_out needs the PCA estimator (alpha = 0, n_sup = 0)")
        if any(k < 1 or k > self.d for k in self.k_values):
            raise ConfigError("k values must lie in [1, d]")
        lo, hi = self.p_range
        if not 1 <= lo <= hi <= self.d:
            raise ConfigError(f"p range [{lo}, {hi}] not within [1, {self.d}]")
        if any(s > 0 for _, s in self.trajectory) and lo < self.m:
            raise ConfigError(f"supervised points need p >= m = {self.m}")
        if any(s == 0 and a > 0 for a, s in self.trajectory) and lo < max(self.ks):
            raise ConfigError("unsupervised descent needs p >= k")

    @property
    def ks(self) -> Tuple[int, ...]:
        return self.k_values or (self.m,)

    @property
    def p_range(self) -> Tuple[int, int]:
        lo = self.p_min if self.p_min is not None else min(self.ks)
        hi = self.p_max if self.p_max is not None else self.d
        return lo, hi


@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    n_sup: int
    trial: int
    p: int
    k: int
    e_in: Optional[float]
    e_in_S: Optional[float]
    e_out: Optional[float]
    e_out_source: str
    iterations: Optional[int]


@dataclass
class SweepResult:
    records: List[SweepRecord]
    averaged: Dict[tuple, Tuple[Optional[float], Optional[float], Optional[float]]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.averaged:
            self.averaged = _average(self.records)

    def points(self) -> List[Tuple[float, int]]:
        seen = []
        for r in self.records:
            if (r.alpha, r.n_sup) not in seen:
                seen.append((r.alpha, r.n_sup))
        return seen

    def curve(self, alpha: float, n_sup: int, k: Optional[int] = None, column: str = "e_out"):
        """Averaged ``column`` versus ``p`` for one plane point (and one ``k``)."""
        col = {"e_in": 0, "e_in_S": 1, "e_out": 2}[column]
        rows = sorted(
            (key[2], vals[col])
            for key, vals in self.averaged.items()
            if key[0] == alpha and key[1] == n_sup and (k is None or key[3] == k)
        )
        return np.array([p for p, _ in rows]), np.array([np.nan if v is None else v for _, v in rows])


def _average(records: Sequence[SweepRecord]):
    groups: Dict[tuple, list] = {}
    for r in records:
        groups.setdefault((r.alpha, r.n_sup, r.p, r.k), []).append(r)
    out = {}
    for key, rs in groups.items():
        vals = []
        for name in ("e_in", "e_in_S", "e_out"):
            xs = [getattr(r, name) for r in rs]
            vals.append(None if any(x is None for x in xs) else math.fsum(xs) / len(xs))
        out[key] = tuple(vals)
    return out


def trajectory_presets(name: str, n: int) -> List[Tuple[float, int]]:
    """Named paths across the plane.

    ``bottom-edge``: fully supervised, alpha from 0 to inf.
    ``right-edge``: unconstrained, n_sup from 0 to n in nine even steps.
    ``diagonal``: both grow together, from (0, 0) to (inf, n).
    """
    if name == "bottom-edge":
        return [(a, n) for a in ALPHA_GRID]
    if name == "right-edge":
        return [(math.inf, int(round(j * n / 8))) for j in range(9)]
    if name == "diagonal":
        steps = len(ALPHA_GRID)
        return [(a, int(round(i * n / (steps - 1)))) for i, a in enumerate(ALPHA_GRID)]
    raise ConfigError(f"unknown trajectory preset {name!r}")


def estimator_name(alpha: float, n_sup: int, n: int) -> str:
    if n_sup == n:
        return "regression" if math.isinf(alpha) else "supervised-pgd"
    if n_sup > 0:
        return "semisupervised-pgd"
    return "pca" if alpha == 0 else "unsupervised-pgd"


def fit_point(
    data: Dataset,
    model: GroundTruthModel,
    features: FeatureSet,
    alpha: float,
    n_sup: int,
    k: int,
    opts: PgdOptions = PgdOptions(),
    e_out_mode: str = "analytic",
    n_test: int = 1000,
    test_seed: int = 0,
):
    """Fit the estimator selected by ``(alpha, n_sup)`` and evaluate it.

    Returns ``(estimate, iterations, ErrorRecord)``.  Unsupervised points
    (``n_sup = 0``) are scored with the reconstruction errors, all others
    with the latent-prediction errors on the supervised pairs.
    """
    x_s = restrict(data, features)
    z = data.z_matrix
    kind = estimator_name(alpha, n_sup, data.n)
    level = ConstraintLevel(alpha)
    iterations = 0
    if kind == "regression":
        est = fit_regression(x_s, z, features)
    elif kind == "supervised-pgd":
        rep = fit_supervised_pgd(x_s, z, level, opts, features)
        est, iterations = rep.estimate, rep.iterations
    elif kind == "semisupervised-pgd":
        rep = fit_semisupervised_pgd(x_s[:, :n_sup], z[:, :n_sup], x_s[:, n_sup:], level, opts, features)
        est, iterations = rep.estimate, rep.iterations
    elif kind == "pca":
        est = fit_unsupervised_pca(x_s, k, features)
    else:
        rep = fit_unsupervised_pgd(x_s, k, level, opts, features)
        est, iterations = rep.estimate, rep.iterations
    return est, iterations, evaluate(est, data, model, n_sup, e_out_mode, n_test, test_seed)


def evaluate(
    est: SubspaceEstimate,
    data: Dataset,
    model: GroundTruthModel,
    n_sup: int,
    e_out_mode: str = "analytic",
    n_test: int = 1000,
    test_seed: int = 0,
) -> ErrorRecord:
    u = embed(est)
    x_s = restrict(data, est.features)
    if n_sup == 0:
        e_in = unsup_in_sample(u, data.x_matrix)
        e_in_s = unsup_in_sample_S(est.matrix, x_s)
        if e_out_mode == "analytic":
            return ErrorRecord(e_in, e_in_s, unsup_out_of_sample_trace(u, true_covariance(model)), "analytic-trace")
        if e_out_mode == "spectral":
            c = true_covariance(model)
            e_out = unsup_out_of_sample_spectral(
                np.linalg.eigvalsh(c),
                eig_symmetric(restrict(c, est.features)),
                eig_symmetric(x_s @ x_s.T / data.n),
                est.target_dim,
            )
            return ErrorRecord(e_in, e_in_s, e_out, "spectral-formula")
        return ErrorRecord(e_in, e_in_s, unsup_out_of_sample_monte_carlo(u, model, n_test, test_seed), "monte-carlo")

    split = data.with_n_sup(n_sup)
    e_in = sup_in_sample(u, split, supervised_only=True)
    r = data.z_matrix[:, :n_sup] - est.matrix.T @ x_s[:, :n_sup]
    e_in_s = float(np.sum(r * r)) / n_sup
    if e_out_mode == "monte-carlo":
        return ErrorRecord(e_in, e_in_s, sup_out_of_sample(u, model, "monte-carlo", n_test, test_seed), "monte-carlo")
    return ErrorRecord(e_in, e_in_s, sup_out_of_sample(u, model, "analytic"), "analytic-trace")


def build_model(config: SweepConfig) -> GroundTruthModel:
    return make_model(config.basis, config.d, config.m, config.sigma, derive_seed(config.seed, _BASIS))


def build_dataset(config: SweepConfig, model: GroundTruthModel, trial: int = 0) -> Dataset:
    tags = (_DATA, trial) if config.resample_data else (_DATA,)
    return sample_dataset(model, config.n, config.n, derive_seed(config.seed, *tags))


def run_sweep(config: SweepConfig) -> SweepResult:
    model = build_model(config)
    orders = grow_feature_orders(config.d, config.num_orders, derive_seed(config.seed, _ORDERS))
    datasets = [build_dataset(config, model, t) for t in range(config.num_orders if config.resample_data else 1)]
    test_seed = derive_seed(config.seed, _TEST)
    lo, hi = config.p_range
    records = []
    for alpha, n_sup in config.trajectory:
        for trial, order in enumerate(orders):
            data = datasets[trial if config.resample_data else 0]
            for p in range(lo, hi + 1):
                features = FeatureSet.from_order(order, p)
                for k in config.ks:
                    if n_sup == 0 and k > p:
                        records.append(SweepRecord(alpha, n_sup, trial, p, k, None, None, None, "", None))
                        continue
                    opts = replace(config.pgd, seed=derive_seed(config.seed, _INIT, trial, p, k))
                    try:
                        _, iters, err = fit_point(
                            data, model, features, alpha, n_sup, k, opts, config.e_out_mode, config.n_test, test_seed
                        )
                    except SubspaceError as exc:
                        raise type(exc)(f"alpha={alpha}, n_sup={n_sup}, trial={trial}, p={p}, k={k}: {exc}") from exc
                    records.append(
                        SweepRecord(alpha, n_sup, trial, p, k, err.e_in, err.e_in_S, err.e_out, err.e_out_source, iters)
                    )
    return SweepResult(records)


# -- persistence ---------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(result: SweepResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in result.records:
            w.writerow(
                [_fmt(float(r.alpha)), r.n_sup, r.trial, r.p, r.k]
                + [_fmt(None if v is None else float(v)) for v in (r.e_in, r.e_in_S, r.e_out)]
                + [r.e_out_source, _fmt(r.iterations)]
            )


def _opt_float(s: str) -> Optional[float]:
    return None if s == "" else float(s)


def read_csv(path) -> SweepResult:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: empty file, expected header")
    header = rows[0]
    for i, expected in enumerate(CSV_HEADER):
        got = header[i] if i < len(header) else None
        if got != expected:
            raise SchemaError(f"{path}: column {i} is {got!r}, expected {expected!r}")
    if len(header) > len(CSV_HEADER):
        raise SchemaError(f"{path}: unexpected extra column {header[len(CSV_HEADER)]!r}")
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(CSV_HEADER):
            raise SchemaError(f"{path}:{lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        try:
            records.append(
                SweepRecord(
                    float(row[0]),
                    int(row[1]),
                    int(row[2]),
                    int(row[3]),
                    int(row[4]),
                    _opt_float(row[5]),
                    _opt_float(row[6]),
                    _opt_float(row[7]),
                    row[8],
                    None if row[9] == "" else int(row[9]),
                )
            )
        except ValueError as exc:
            raise SchemaError(f"{path}:{lineno}: {exc}") from None
    return SweepResult(records)


# -- plotting ------------------------------------------------------------------

_W, _H, _PAD = 640, 420, 60
_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf"]


def _alpha_label(alpha: float) -> str:
    return "inf" if math.isinf(alpha) else f"{alpha:g}"


def _log_bounds(values):
    v = np.asarray([x for x in values if x is not None and np.isfinite(x) and x > 0])
    if v.size == 0:
        return -1.0, 1.0
    lo, hi = math.log10(v.min()), math.log10(v.max())
    if hi - lo < 1e-9:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def _safe_log(v: float, floor: float) -> float:
    return math.log10(v) if v > 0 else floor


def _axes(parts, x_label, y_label, x_ticks, y_ticks):
    x0, y0, x1, y1 = _PAD, _H - _PAD, _W - _PAD / 2, _PAD / 2
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>')
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>')
    for pos, label in x_ticks:
        parts.append(f'<text x="{pos:.2f}" y="{y0 + 16}" font-size="10" text-anchor="middle">{label}</text>')
    for pos, label in y_ticks:
        parts.append(f'<text x="{x0 - 6}" y="{pos:.2f}" font-size="10" text-anchor="end">{label}</text>')
    parts.append(f'<text x="{(x0 + x1) / 2}" y="{_H - 15}" font-size="12" text-anchor="middle">{x_label}</text>')
    parts.append(
        f'<text x="15" y="{(y0 + y1) / 2}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 15 {(y0 + y1) / 2})">{y_label}</text>'
    )


def _svg(parts) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">\n'
        '<rect width="100%" height="100%" fill="white"/>\n' + "\n".join(parts) + "\n</svg>\n"
    )


def plot_curves(result: SweepResult, path, mode: str = "auto", column: str = "e_out") -> None:
    """Write an SVG of averaged errors versus ``p``.

    ``mode="curves"`` draws one polyline per plane point on a log error
    axis; ``mode="heatmap"`` draws the ``(p, k)`` grid of the first plane
    point, leaving undefined ``k > p`` cells blank.  ``"auto"`` picks the
    heatmap when the sweep has several ``k`` values.
    """
    if not result.averaged:
        raise SchemaError("nothing to plot: result has no averaged values")
    ks = sorted({key[3] for key in result.averaged})
    if mode == "auto":
        mode = "heatmap" if len(ks) > 1 else "curves"
    if mode == "curves":
        svg = _curves_svg(result, column, ks[0])
    elif mode == "heatmap":
        svg = _heatmap_svg(result, column)
    else:
        raise ConfigError(f"unknown plot mode {mode!r}")
    Path(path).write_text(svg)


def _curves_svg(result: SweepResult, column: str, k: int) -> str:
    col = {"e_in": 0, "e_in_S": 1, "e_out": 2}[column]
    ps = sorted({key[2] for key in result.averaged})
    lo, hi = _log_bounds(v[col] for v in result.averaged.values())
    floor = lo - 1.0
    lo = min(lo, floor) if any(v[col] is not None and v[col] <= 0 for v in result.averaged.values()) else lo
    p_lo, p_hi = ps[0], max(ps[-1], ps[0] + 1)

    def sx(p):
        return _PAD + (p - p_lo) / (p_hi - p_lo) * (_W - 1.5 * _PAD)

    def sy(ly):
        return (_H - _PAD) - (ly - lo) / (hi - lo) * (_H - 1.5 * _PAD)

    parts = []
    x_ticks = [(sx(p), str(p)) for p in ps[:: max(1, len(ps) // 10)]]
    y_ticks = [(sy(e), f"1e{e}") for e in range(math.ceil(lo), math.floor(hi) + 1)]
    _axes(parts, "number of features p", f"{column} (log scale)", x_ticks, y_ticks)
    for i, (alpha, n_sup) in enumerate(result.points()):
        p_vals, e_vals = result.curve(alpha, n_sup, k, column)
        pts = [
            f"{sx(p):.2f},{sy(_safe_log(e, floor)):.2f}" for p, e in zip(p_vals, e_vals) if np.isfinite(e)
        ]
        color = _PALETTE[i % len(_PALETTE)]
        label = f"alpha={_alpha_label(alpha)}, n_sup={n_sup}"
        parts.append(
            f'<polyline class="curve" fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(pts)}">'
            f"<title>{label}</title></polyline>"
        )
        parts.append(
            f'<text x="{_W - _PAD / 2 - 4}" y="{_PAD / 2 + 14 * (i + 1)}" font-size="10" '
            f'text-anchor="end" fill="{color}">{label}</text>'
        )
    return _svg(parts)


def _heatmap_svg(result: SweepResult, column: str) -> str:
    col = {"e_in": 0, "e_in_S": 1, "e_out": 2}[column]
    alpha, n_sup = result.points()[0]
    cells = {(key[2], key[3]): v[col] for key, v in result.averaged.items() if key[0] == alpha and key[1] == n_sup}
    ps = sorted({p for p, _ in cells})
    ks = sorted({k for _, k in cells})
    lo, hi = _log_bounds(cells.values())
    floor = lo
    cw = (_W - 1.5 * _PAD) / len(ps)
    ch = (_H - 1.5 * _PAD) / len(ks)
    parts = []
    x_ticks = [(_PAD + (i + 0.5) * cw, str(p)) for i, p in enumerate(ps) if i % max(1, len(ps) // 10) == 0]
    y_ticks = [(_H - _PAD - (j + 0.5) * ch, str(k)) for j, k in enumerate(ks) if j % max(1, len(ks) // 10) == 0]
    _axes(parts, "number of features p", "subspace dimension k", x_ticks, y_ticks)
    for (p, k), v in sorted(cells.items()):
        if v is None or not np.isfinite(v):
            continue
        t = (_safe_log(v, floor) - lo) / (hi - lo)
        t = min(max(t, 0.0), 1.0)
        r, g, b = (int(round(a + (c - a) * t)) for a, c in zip((253, 231, 37), (68, 1, 84)))
        i, j = ps.index(p), ks.index(k)
        parts.append(
            f'<rect class="cell" x="{_PAD + i * cw:.2f}" y="{_H - _PAD - (j + 1) * ch:.2f}" '
            f'width="{cw:.2f}" height="{ch:.2f}" fill="rgb({r},{g},{b})"><title>p={p}, k={k}: {v:.6g}</title></rect>'
        )
    return _svg(parts)


# -- config files --------------------------------------------------------------

_INT_KEYS = {"d", "m", "n", "seed", "p_min", "p_max", "num_orders", "max_iters", "n_test"}
_FLOAT_KEYS = {"sigma", "rel_tol", "initial_step"}
_KNOWN = _INT_KEYS | _FLOAT_KEYS | {
    "basis",
    "trajectory",
    "k_values",
    "line_search_factors",
    "e_out_mode",
    "resample_data",
    "out_csv",
    "out_plot",
}


def _parse_alpha(tok: str) -> float:
    tok = tok.strip().lower()
    return math.inf if tok in ("inf", "+inf") else float(tok)


def _parse_trajectory(value: str, n: int):
    value = value.strip()
    if ":" not in value:
        return trajectory_presets(value, n)
    out = []
    for item in value.split(","):
        a, s = item.split(":")
        out.append((_parse_alpha(a), int(s)))
    return out


def parse_config(text: str) -> SweepConfig:
    """Parse flat ``key = value`` text; ``#`` starts a comment, lists are comma-separated."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KNOWN:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        raw[key] = value
    try:
        for key in ("d", "m", "n", "trajectory"):
            if key not in raw:
                raise ConfigError(f"missing required key {key!r}")
        kw = {k: int(raw[k]) for k in _INT_KEYS & raw.keys() if k not in ("max_iters",)}
        pgd_kw = {}
        if "max_iters" in raw:
            pgd_kw["max_iters"] = int(raw["max_iters"])
        if "rel_tol" in raw:
            pgd_kw["rel_tol"] = float(raw["rel_tol"])
        if "initial_step" in raw:
            pgd_kw["initial_step"] = float(raw["initial_step"])
        if "line_search_factors" in raw:
            pgd_kw["line_search_factors"] = tuple(float(t) for t in raw["line_search_factors"].split(","))
        if "sigma" in raw:
            kw["sigma"] = float(raw["sigma"])
        if "k_values" in raw:
            kw["k_values"] = _parse_int_list(raw["k_values"])
        for key in ("basis", "e_out_mode", "out_csv", "out_plot"):
            if key in raw:
                kw[key] = raw[key]
        if "resample_data" in raw:
            kw["resample_data"] = raw["resample_data"].lower() in ("1", "true", "yes")
        kw["trajectory"] = _parse_trajectory(raw["trajectory"], int(raw["n"]))
        return SweepConfig(pgd=PgdOptions(**pgd_kw), **kw)
    except ConfigError:
        raise
    except (ValueError, SubspaceError) as exc:
        raise ConfigError(str(exc)) from None


def _parse_int_list(value: str):
    """Comma list of ints; ``a-b`` expands to an inclusive range."""
    out = []
    for tok in value.split(","):
        tok = tok.strip()
        if "-" in tok:
            a, b = tok.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(tok))
    return tuple(out)


def load_config(path) -> SweepConfig:
    return parse_config(Path(path).read_text())
