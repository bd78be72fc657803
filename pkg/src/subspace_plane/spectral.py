"""Dense spectral kernels and the orthonormality projections.

All decompositions use a fixed sign convention (the largest-magnitude
entry of every left vector is non-negative) so repeated runs produce
bit-identical factors and, downstream, identical descent trajectories.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation

__all__ = [
    "SpectralDecomposition",
    "ConstraintLevel",
    "eig_symmetric",
    "thin_svd",
    "pseudoinverse",
    "project_hard",
    "project_soft",
    "project",
    "is_feasible",
]

RANK_TOL = 1e-10
PINV_RTOL = 1e-10
FLOOR = 1e-16


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Sign vector making the largest-magnitude entry of each column non-negative."""
    if vectors.size == 0:
        return np.ones(vectors.shape[1])
    pivot = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    return np.where(pivot < 0, -1.0, 1.0)


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int

    def top(self, k: int) -> np.ndarray:
        return self.eigenvectors[:, :k]


@dataclass(frozen=True)
class ConstraintLevel:
    """Softness ``alpha`` of the constraint ``|sigma_i^2 - 1| <= alpha``.

    ``alpha = 0`` is strict orthonormality and ``alpha = inf`` removes the
    constraint.  ``floor_mode`` keeps the lower threshold strictly positive
    so singular values never collapse to zero.
    """

    alpha: float
    floor_mode: bool = False

    def __post_init__(self):
        if math.isnan(self.alpha) or self.alpha < 0:
            raise ContractViolation(f"alpha must be >= 0, got {self.alpha}")

    @property
    def tau_low(self) -> float:
        return math.sqrt(max(FLOOR if self.floor_mode else 0.0, 1.0 - self.alpha))

    @property
    def tau_high(self) -> float:
        return math.sqrt(1.0 + self.alpha)

    @property
    def is_hard(self) -> bool:
        return self.alpha == 0 and not self.floor_mode

    @property
    def is_free(self) -> bool:
        """True when projection is the identity."""
        return math.isinf(self.alpha) and not self.floor_mode


def eig_symmetric(c: np.ndarray) -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix, eigenvalues in descending order.

    The rank counts eigenvalues above ``1e-10 * max(lambda_1, 1)``.
    """
    c = np.asarray(c, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ContractViolation("eig_symmetric expects a square matrix")
    scale = max(np.max(np.abs(c)), 1e-300) if c.size else 1.0
    if np.max(np.abs(c - c.T), initial=0.0) > 1e-9 * scale:
        raise ContractViolation("matrix is not symmetric")
    w, v = np.linalg.eigh(c)
    w, v = w[::-1], v[:, ::-1]
    v = v * _fix_signs(v)
    top = max(w[0], 1.0) if w.size else 1.0
    rank = int(np.sum(w > RANK_TOL * top))
    return SpectralDecomposition(w, v, rank)


def thin_svd(w: np.ndarray):
    """``W = omega @ diag(sigma) @ theta.T`` for a tall ``(p, m)`` matrix.

    Returns
    -------
    omega : (p, m) ndarray
    sigma : (m,) ndarray, descending
    theta : (m, m) ndarray
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] < w.shape[1]:
        raise ContractViolation(f"thin_svd needs p >= m, got shape {w.shape}")
    u, s, vt = np.linalg.svd(w, full_matrices=False)
    signs = _fix_signs(u)
    return u * signs, s, vt.T * signs


def pseudoinverse(x: np.ndarray) -> np.ndarray:
    """Moore-Penrose pseudoinverse; singular values below ``1e-10 * sigma_max`` count as zero."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return np.zeros(x.shape[::-1])
    u, s, vt = np.linalg.svd(x, full_matrices=False)
    keep = s > PINV_RTOL * s[0] if s.size and s[0] > 0 else np.zeros_like(s, dtype=bool)
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (vt.T * inv) @ u.T


def project_hard(w: np.ndarray) -> np.ndarray:
    """Nearest matrix with orthonormal columns: all singular values set to one."""
    omega, _, theta = thin_svd(w)
    return omega @ theta.T


def project_soft(w: np.ndarray, level: ConstraintLevel) -> np.ndarray:
    """Clamp every singular value of ``w`` into ``[tau_low, tau_high]``."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] < w.shape[1]:
        raise ContractViolation(f"projection needs p >= m, got shape {w.shape}")
    if level.is_free:
        return w.copy()
    omega, sigma, theta = thin_svd(w)
    clamped = np.clip(sigma, level.tau_low, level.tau_high)
    return (omega * clamped) @ theta.T


def project(w: np.ndarray, level: ConstraintLevel) -> np.ndarray:
    """Hard projection at ``alpha = 0`` (no floor), soft clamp otherwise."""
    return project_hard(w) if level.is_hard else project_soft(w, level)


def is_feasible(w: np.ndarray, level: ConstraintLevel, tol: float = 1e-9) -> bool:
    s = np.linalg.svd(np.asarray(w, dtype=float), compute_uv=False)
    if level.floor_mode:
        return bool(np.all(s >= level.tau_low - tol) and np.all(s <= level.tau_high + tol))
    return bool(np.all(np.abs(s**2 - 1.0) <= level.alpha + tol))
