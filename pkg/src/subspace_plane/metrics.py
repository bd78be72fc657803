"""Error functionals and spectral diagnostics.

Unsupervised errors measure how much variance is left outside the span of
an estimate; supervised errors measure how well ``U_hat^T x`` predicts the
latent vector ``z``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ContractViolation, ParameterError
from .model import Dataset, GroundTruthModel, sample_test_set, true_covariance
from .spectral import SpectralDecomposition

__all__ = [
    "ErrorRecord",
    "unsup_in_sample",
    "unsup_in_sample_S",
    "unsup_out_of_sample_trace",
    "unsup_out_of_sample_spectral",
    "unsup_out_of_sample_monte_carlo",
    "sup_in_sample",
    "sup_out_of_sample",
    "monotonicity_metric",
    "interlacing_check",
    "alignment_coefficients",
]

TIE_TOL = 1e-12


@dataclass(frozen=True)
class ErrorRecord:
    e_in: float
    e_in_S: float
    e_out: float
    e_out_source: str


def _residual_trace(u_hat: np.ndarray, c: np.ndarray) -> float:
    # tr((I - U U^T) C (I - U U^T)^T) without forming the d x d projector
    cu = c @ u_hat
    gram = u_hat.T @ u_hat
    return float(np.trace(c) - 2.0 * np.sum(u_hat * cu) + np.sum(gram * (u_hat.T @ cu)))


def unsup_in_sample(u_hat: np.ndarray, x: np.ndarray) -> float:
    """Residual variance of the centered training data ``X`` outside ``span(U_hat)``."""
    x = np.asarray(x, dtype=float)
    return _residual_trace(np.asarray(u_hat, dtype=float), x @ x.T / x.shape[1])


def unsup_in_sample_S(u_hat_s: np.ndarray, x_s: np.ndarray) -> float:
    return unsup_in_sample(u_hat_s, x_s)


def unsup_out_of_sample_trace(u_hat: np.ndarray, c_x: np.ndarray) -> float:
    return _residual_trace(np.asarray(u_hat, dtype=float), np.asarray(c_x, dtype=float))


def unsup_out_of_sample_spectral(
    true_eigenvalues: np.ndarray,
    true_restricted: SpectralDecomposition,
    sample: SpectralDecomposition,
    k: int,
) -> float:
    """Out-of-sample error from eigenpairs alone.

    Total population variance minus, for each of the ``k`` leading sample
    eigenvectors, the restricted true variance it captures.
    """
    if true_restricted.eigenvectors.shape != sample.eigenvectors.shape:
        raise ContractViolation("true and sample decompositions must share the feature dimension")
    overlap = true_restricted.eigenvectors.T @ sample.eigenvectors[:, :k]
    captured = float(np.sum(true_restricted.eigenvalues[:, None] * overlap**2))
    return float(np.sum(true_eigenvalues)) - captured


def unsup_out_of_sample_monte_carlo(u_hat: np.ndarray, model: GroundTruthModel, n_test: int, seed: int) -> float:
    x, _ = sample_test_set(model, n_test, seed)
    r = x - u_hat @ (u_hat.T @ x)
    return float(np.mean(np.sum(r * r, axis=0)))


def sup_in_sample(u_hat: np.ndarray, data: Dataset, supervised_only: bool = False) -> float:
    """Mean of ``||z - U_hat^T x||^2`` over the samples.

    With ``supervised_only`` the average runs over the first ``n_sup`` pairs.
    """
    if data.z_matrix is None:
        raise ParameterError("dataset has no latent targets")
    x, z = data.x_matrix, data.z_matrix
    if supervised_only:
        if data.n_sup == 0:
            raise ParameterError("no supervised pairs in dataset")
        x, z = x[:, : data.n_sup], z[:, : data.n_sup]
    r = z - np.asarray(u_hat).T @ x
    return float(np.sum(r * r)) / x.shape[1]


def sup_out_of_sample(
    u_hat: np.ndarray,
    model: GroundTruthModel,
    mode: str = "analytic",
    n_test: int = 100_000,
    seed: int = 0,
) -> float:
    """Expected ``||z - U_hat^T x||^2`` under the model.

    ``mode="analytic"`` evaluates ``m - 2 tr(U_hat^T U) + tr(U_hat^T C_x U_hat)``;
    ``mode="monte-carlo"`` averages over ``n_test`` fresh draws.
    """
    u_hat = np.asarray(u_hat, dtype=float)
    if mode == "analytic":
        c = true_covariance(model)
        return float(model.latent_dim - 2.0 * np.sum(u_hat * model.basis) + np.sum(u_hat * (c @ u_hat)))
    if mode == "monte-carlo":
        x, z = sample_test_set(model, n_test, seed)
        r = z - u_hat.T @ x
        return float(np.mean(np.sum(r * r, axis=0)))
    raise ParameterError(f"unknown mode {mode!r}")


def monotonicity_metric(errors: Sequence[float], tol: float = TIE_TOL) -> float:
    """Fraction of consecutive steps that do not increase the error (ties count as decreases)."""
    e = np.asarray(errors, dtype=float)
    if e.size < 2:
        raise ParameterError("need at least two error values")
    return float(np.mean(np.diff(e) <= tol))


def _deletion_index(c_large: np.ndarray, c_small: np.ndarray) -> Optional[int]:
    for i in range(c_large.shape[0]):
        keep = np.delete(np.arange(c_large.shape[0]), i)
        if np.allclose(c_large[np.ix_(keep, keep)], c_small, rtol=0, atol=1e-12 * max(1.0, np.abs(c_large).max())):
            return i
    return None


def interlacing_check(c_large: np.ndarray, c_small: np.ndarray, tol: float = 1e-8):
    """Check that eigenvalues of a principal submatrix interlace those of the full matrix.

    Returns
    -------
    ok : bool
    margin : float
        Largest violation of any interlacing inequality (``<= 0`` when they
        all hold strictly).
    """
    c_large = np.asarray(c_large, dtype=float)
    c_small = np.asarray(c_small, dtype=float)
    if c_large.shape[0] != c_small.shape[0] + 1 or _deletion_index(c_large, c_small) is None:
        raise ContractViolation("second matrix is not a principal submatrix of the first")
    big = np.linalg.eigvalsh(c_large)[::-1]
    small = np.linalg.eigvalsh(c_small)[::-1]
    margin = max(np.max(small - big[:-1]), np.max(big[1:] - small))
    return bool(margin <= tol), float(margin)


def alignment_coefficients(true_restricted: SpectralDecomposition, sample: SpectralDecomposition, k: int) -> np.ndarray:
    """How much of each true eigenvector lies in the span of the ``k`` leading sample eigenvectors."""
    overlap = true_restricted.eigenvectors.T @ sample.eigenvectors[:, :k]
    return np.sum(overlap**2, axis=1)
