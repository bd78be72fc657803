"""Quick invariant and oracle checks on small random instances.

Used by the ``check`` subcommand as a smoke test of an installation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import estimators as est
from . import metrics, spectral
from .model import FeatureSet, GroundTruthModel, make_random_basis, restrict, sample_dataset, true_covariance


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def central_difference(f: Callable[[np.ndarray], float], w: np.ndarray, h: float = 1e-6) -> np.ndarray:
    g = np.zeros_like(w)
    for idx in np.ndindex(w.shape):
        e = np.zeros_like(w)
        e[idx] = h
        g[idx] = (f(w + e) - f(w - e)) / (2 * h)
    return g


def _rel(a, b) -> float:
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))


def _projections(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10):
        w = rng.standard_normal((6, 3)) * rng.uniform(0.2, 3.0)
        hard = spectral.project_hard(w)
        worst = max(worst, np.max(np.abs(np.linalg.svd(hard, compute_uv=False) - 1)))
        lvl = spectral.ConstraintLevel(float(rng.uniform(0.05, 2.0)))
        once = spectral.project_soft(w, lvl)
        worst = max(worst, np.max(np.abs(spectral.project_soft(once, lvl) - once)))
        worst = max(worst, np.max(np.abs(spectral.project_soft(w, spectral.ConstraintLevel(0.0)) - hard)))
    return CheckResult("projections", worst <= 1e-10, f"max deviation {worst:.2e}")


def _gradients(rng) -> CheckResult:
    worst = 0.0
    for _ in range(5):
        w = rng.standard_normal((6, 3))
        xs, zs, xu = rng.standard_normal((6, 4)), rng.standard_normal((3, 4)), rng.standard_normal((6, 5))
        fd = central_difference(lambda v: est.semisupervised_objective(v, xs, zs, xu), w)
        worst = max(worst, _rel(2 * est.semisupervised_gradient(w, xs, zs, xu), fd))
        fd = central_difference(lambda v: est.unsupervised_objective(v, xu), w)
        worst = max(worst, _rel(2 * est.unsupervised_gradient(w, xu), fd))
    return CheckResult("gradients", worst <= 1e-5, f"max relative error {worst:.2e}")


def _random_instance(rng, d=16, m=4, n=10):
    model = GroundTruthModel(make_random_basis(d, m, int(rng.integers(2**31))), float(rng.uniform(0.05, 0.5)))
    data = sample_dataset(model, n, n, int(rng.integers(2**31)))
    order = rng.permutation(d)
    p = int(rng.integers(m, d + 1))
    return model, data, FeatureSet.from_order(order, p)


def _formula(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10):
        model, data, feats = _random_instance(rng)
        c = true_covariance(model)
        x_s = restrict(data, feats)
        k = int(rng.integers(1, feats.size + 1))
        u = est.embed(est.fit_unsupervised_pca(x_s, k, feats))
        tr = metrics.unsup_out_of_sample_trace(u, c)
        sp = metrics.unsup_out_of_sample_spectral(
            np.linalg.eigvalsh(c),
            spectral.eig_symmetric(restrict(c, feats)),
            spectral.eig_symmetric(x_s @ x_s.T / data.n),
            k,
        )
        worst = max(worst, abs(tr - sp) / abs(tr))
    return CheckResult("spectral-vs-trace", worst <= 1e-8, f"max relative gap {worst:.2e}")


def _decomposition(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10):
        model, data, feats = _random_instance(rng)
        x_s = restrict(data, feats)
        e = est.fit_unsupervised_pca(x_s, int(rng.integers(1, feats.size + 1)), feats)
        lhs = metrics.unsup_in_sample(est.embed(e), data.x_matrix)
        rest = data.x_matrix[feats.complement]
        rhs = metrics.unsup_in_sample_S(e.matrix, x_s) + np.sum(rest**2) / data.n
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    return CheckResult("in-sample-decomposition", worst <= 1e-8, f"max relative gap {worst:.2e}")


def _interlacing(rng) -> CheckResult:
    worst = -np.inf
    for _ in range(20):
        a = rng.standard_normal((7, 12))
        c = a @ a.T / 12
        i = int(rng.integers(7))
        keep = np.delete(np.arange(7), i)
        _, margin = metrics.interlacing_check(c, c[np.ix_(keep, keep)])
        worst = max(worst, margin)
    return CheckResult("interlacing", worst <= 1e-8, f"worst margin {worst:.2e}")


def _regression(rng) -> CheckResult:
    x = rng.standard_normal((3, 5))
    z = rng.standard_normal((2, 5))
    w = est.fit_regression(x, z).matrix
    normal = np.linalg.solve(x @ x.T, x @ z.T)
    gap = float(np.max(np.abs(w - normal)))
    return CheckResult("regression-normal-equations", gap <= 1e-8, f"max deviation {gap:.2e}")


CHECKS = [_projections, _gradients, _formula, _decomposition, _interlacing, _regression]


def run_checks(seed: int = 0) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    return [check(rng) for check in CHECKS]
