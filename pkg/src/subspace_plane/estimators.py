"""Estimators across the supervision / orthonormality plane.

Five procedures are provided:

* :func:`fit_unsupervised_pca` -- strict orthonormality, no labels (PCA).
* :func:`fit_regression` -- no constraint, full labels (min-norm least squares).
* :func:`fit_supervised_pgd` -- full labels with a hard or soft constraint.
* :func:`fit_semisupervised_pgd` -- partial labels with a soft constraint.
* :func:`fit_unsupervised_pgd` -- no labels with a floored soft constraint.

The iterative ones share one projected-gradient loop.  The descent
directions are the half-gradients of the respective costs (the factor two
is absorbed in the step size), matching the classic ``X (W^T X - Z)^T``
update for the supervised term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DivergenceError, ParameterError
from .model import FeatureSet
from .spectral import ConstraintLevel, eig_symmetric, project, pseudoinverse

__all__ = [
    "SubspaceEstimate",
    "PgdOptions",
    "FitReport",
    "fit_unsupervised_pca",
    "fit_regression",
    "fit_supervised_pgd",
    "fit_semisupervised_pgd",
    "fit_unsupervised_pgd",
    "line_search_step",
    "embed",
    "supervised_objective",
    "semisupervised_objective",
    "unsupervised_objective",
    "supervised_direction",
    "semisupervised_gradient",
    "unsupervised_gradient",
]

MAX_BACKTRACKS = 30


@dataclass(frozen=True)
class SubspaceEstimate:
    matrix: np.ndarray
    features: FeatureSet

    def __post_init__(self):
        if self.matrix.shape[0] != self.features.size:
            raise ParameterError(
                f"estimate has {self.matrix.shape[0]} rows but the feature set has {self.features.size}"
            )

    @property
    def ambient_dim(self) -> int:
        return self.features.ambient_dim

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class PgdOptions:
    """Stopping and step-size controls for projected gradient descent.

    ``initial_step=None`` picks ``1 / (2 sigma_max(X)^2)``.  The loop stops
    once the accepted decrease, relative to the initial objective, drops
    below ``rel_tol``.
    """

    max_iters: int = 2000
    rel_tol: float = 1e-8
    initial_step: Optional[float] = None
    line_search_factors: tuple = (0.5, 1.0, 2.0)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "line_search_factors", tuple(float(f) for f in self.line_search_factors))
        if self.max_iters < 1:
            raise ParameterError("max_iters must be >= 1")
        if not self.rel_tol > 0:
            raise ParameterError("rel_tol must be > 0")
        if not self.line_search_factors or min(self.line_search_factors) <= 0:
            raise ParameterError("line search factors must be positive")
        if 1.0 not in self.line_search_factors:
            raise ParameterError("line search factors must include 1.0")


@dataclass(frozen=True)
class FitReport:
    estimate: SubspaceEstimate
    iterations: int
    final_objective: float
    objective_trace: list = field(default_factory=list)


def _features(features: Optional[FeatureSet], p: int) -> FeatureSet:
    if features is None:
        return FeatureSet.full(p)
    if features.size != p:
        raise ParameterError(f"feature set has {features.size} indices, data has {p} rows")
    return features


def embed(estimate: SubspaceEstimate) -> np.ndarray:
    """Zero-fill the restricted estimate back to ``d`` rows."""
    out = np.zeros((estimate.ambient_dim, estimate.target_dim))
    out[estimate.features.array] = estimate.matrix
    return out


# -- closed forms ------------------------------------------------------------


def fit_unsupervised_pca(x_s: np.ndarray, k: int, features: Optional[FeatureSet] = None) -> SubspaceEstimate:
    """Top-``k`` eigenvectors of the sample covariance ``X X^T / n``.

    When ``k`` exceeds the covariance rank the extra columns are null-space
    eigenvectors in the decomposition's fixed order, so the estimate
    interpolates the training data.
    """
    x_s = np.asarray(x_s, dtype=float)
    p, n = x_s.shape
    if not 1 <= k <= p:
        raise ParameterError(f"need 1 <= k <= p, got k={k}, p={p}")
    decomp = eig_symmetric(x_s @ x_s.T / n)
    return SubspaceEstimate(decomp.top(k).copy(), _features(features, p))


def fit_regression(x_s: np.ndarray, z: np.ndarray, features: Optional[FeatureSet] = None) -> SubspaceEstimate:
    """Minimum-norm least squares ``(Z X_S^+)^T``."""
    x_s = np.asarray(x_s, dtype=float)
    z = np.asarray(z, dtype=float)
    if z.shape[1] != x_s.shape[1]:
        raise ParameterError("X_S and Z must have the same number of columns")
    return SubspaceEstimate((z @ pseudoinverse(x_s)).T, _features(features, x_s.shape[0]))


# -- objectives and descent directions ------------------------------------------


def supervised_objective(w, x, z) -> float:
    r = z - w.T @ x
    return float(np.sum(r * r)) / x.shape[1]


def supervised_direction(w, x, z) -> np.ndarray:
    return x @ (w.T @ x - z).T


def unsupervised_objective(w, x) -> float:
    r = x - w @ (w.T @ x)
    return float(np.sum(r * r))


def unsupervised_gradient(w, x) -> np.ndarray:
    """Half-gradient of ``||(I - W W^T) X||_F^2``."""
    a_w = x @ (x.T @ w)
    return -2.0 * a_w + a_w @ (w.T @ w) + w @ (w.T @ a_w)


def semisupervised_objective(w, x_sup, z_sup, x_unsup) -> float:
    total = 0.0
    if x_sup.shape[1]:
        r = z_sup - w.T @ x_sup
        total += float(np.sum(r * r))
    if x_unsup.shape[1]:
        total += unsupervised_objective(w, x_unsup)
    return total


def semisupervised_gradient(w, x_sup, z_sup, x_unsup) -> np.ndarray:
    """Half-gradient of the blended cost: the supervised residual term plus three unlabeled terms."""
    g = np.zeros_like(w)
    if x_sup.shape[1]:
        g += x_sup @ (w.T @ x_sup - z_sup).T
    if x_unsup.shape[1]:
        g += unsupervised_gradient(w, x_unsup)
    return g


# -- descent machinery ---------------------------------------------------------


def line_search_step(current_mu: float, evaluate: Callable[[float], float], factors: Sequence[float]) -> float:
    """Pick ``current_mu * f`` with the smallest post-projection objective.

    Ties go to the largest factor.  Non-finite objectives never win unless
    every candidate is non-finite.
    """
    if not factors or min(factors) <= 0:
        raise ParameterError("factors must be non-empty and positive")
    best_mu, best_val = None, math.inf
    for f in sorted(factors, reverse=True):
        mu = current_mu * f
        val = evaluate(mu)
        if not math.isfinite(val):
            continue
        if best_mu is None or val < best_val:
            best_mu, best_val = mu, val
    return current_mu * max(factors) if best_mu is None else best_mu


def _step_size(x: np.ndarray, opts: PgdOptions) -> float:
    if opts.initial_step is not None:
        return float(opts.initial_step)
    s = np.linalg.norm(x, 2) if x.size else 0.0
    return 1.0 / (2.0 * s * s) if s > 0 else 1.0


def _descend(w0, objective, direction, level: ConstraintLevel, opts: PgdOptions, mu: float):
    w = w0
    obj = objective(w)
    if not math.isfinite(obj):
        raise DivergenceError("objective is not finite at initialization")
    trace = [obj]
    scale = max(obj, 1e-12)
    factors = opts.line_search_factors
    shrink = min(factors) if min(factors) < 1 else 0.5
    iterations = 0

    for _ in range(opts.max_iters):
        g = direction(w)
        cache = {}

        def evaluate(step):
            if step not in cache:
                cand = project(w - step * g, level)
                cache[step] = (objective(cand), cand)
            return cache[step][0]

        mu_new = line_search_step(mu, evaluate, factors)
        if not math.isfinite(evaluate(mu_new)):
            # one retry at half the step, then give up
            mu_new = 0.5 * mu
            if not math.isfinite(evaluate(mu_new)):
                raise DivergenceError(f"objective became non-finite after {iterations} iterations")
        obj_new, w_new = cache[mu_new]

        backtracks = 0
        while obj_new > obj and backtracks < MAX_BACKTRACKS:
            mu_new *= shrink
            evaluate(mu_new)
            obj_new, w_new = cache[mu_new]
            backtracks += 1
        if not obj_new <= obj:
            break

        iterations += 1
        decrease = obj - obj_new
        w, obj, mu = w_new, obj_new, mu_new
        trace.append(obj)
        if decrease / scale < opts.rel_tol:
            break

    return w, iterations, trace


def _report(w, features, iterations, trace) -> FitReport:
    return FitReport(SubspaceEstimate(w, features), iterations, trace[-1], trace)


def _check_tall(p: int, m: int) -> None:
    if p < m:
        raise ParameterError(f"constrained estimators need p >= m, got p={p}, m={m}")


def _random_init(p: int, m: int, level: ConstraintLevel, seed: int) -> np.ndarray:
    h = np.random.default_rng(seed).normal(0.0, 1.0 / math.sqrt(p), size=(p, m))
    return project(h, level)


def fit_supervised_pgd(
    x_s: np.ndarray,
    z: np.ndarray,
    level: ConstraintLevel,
    opts: PgdOptions = PgdOptions(),
    features: Optional[FeatureSet] = None,
) -> FitReport:
    """Minimize ``||Z - W^T X_S||_F^2 / n`` subject to the constraint ``level``.

    Starts from the projected least-squares solution.
    """
    x_s = np.asarray(x_s, dtype=float)
    z = np.asarray(z, dtype=float)
    p, m = x_s.shape[0], z.shape[0]
    _check_tall(p, m)
    features = _features(features, p)
    w0 = project((z @ pseudoinverse(x_s)).T, level)
    w, iters, trace = _descend(
        w0,
        lambda w: supervised_objective(w, x_s, z),
        lambda w: supervised_direction(w, x_s, z),
        level,
        opts,
        _step_size(x_s, opts),
    )
    return _report(w, features, iters, trace)


def fit_semisupervised_pgd(
    x_sup: np.ndarray,
    z_sup: np.ndarray,
    x_unsup: np.ndarray,
    level: ConstraintLevel,
    opts: PgdOptions = PgdOptions(),
    features: Optional[FeatureSet] = None,
) -> FitReport:
    """Minimize ``||Z_sup - W^T X_sup||^2 + ||(I - W W^T) X_unsup||^2`` under ``level``.

    Starts from a projected ``N(0, 1/p)`` matrix drawn with ``opts.seed``.
    """
    x_sup = np.asarray(x_sup, dtype=float)
    z_sup = np.asarray(z_sup, dtype=float)
    x_unsup = np.asarray(x_unsup, dtype=float)
    p, m = x_sup.shape[0], z_sup.shape[0]
    _check_tall(p, m)
    if x_unsup.shape[0] != p or z_sup.shape[1] != x_sup.shape[1]:
        raise ParameterError("inconsistent shapes between supervised and unlabeled blocks")
    if x_sup.shape[1] + x_unsup.shape[1] < 2:
        raise ParameterError("need at least two samples in total")
    features = _features(features, p)
    w, iters, trace = _descend(
        _random_init(p, m, level, opts.seed),
        lambda w: semisupervised_objective(w, x_sup, z_sup, x_unsup),
        lambda w: semisupervised_gradient(w, x_sup, z_sup, x_unsup),
        level,
        opts,
        _step_size(np.hstack([x_sup, x_unsup]), opts),
    )
    return _report(w, features, iters, trace)


def fit_unsupervised_pgd(
    x_s: np.ndarray,
    m: int,
    level: ConstraintLevel,
    opts: PgdOptions = PgdOptions(),
    features: Optional[FeatureSet] = None,
) -> FitReport:
    """Minimize ``||(I - W W^T) X_S||_F^2`` over ``p x m`` matrices.

    The lower singular-value threshold is always floored at ``1e-8`` here,
    whatever ``level.floor_mode`` says, so the iterate keeps full rank.
    """
    x_s = np.asarray(x_s, dtype=float)
    p = x_s.shape[0]
    _check_tall(p, m)
    level = replace(level, floor_mode=True)
    features = _features(features, p)
    w, iters, trace = _descend(
        _random_init(p, m, level, opts.seed),
        lambda w: unsupervised_objective(w, x_s),
        lambda w: unsupervised_gradient(w, x_s),
        level,
        opts,
        _step_size(x_s, opts),
    )
    return _report(w, features, iters, trace)
