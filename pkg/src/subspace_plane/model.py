"""Ground-truth subspaces, synthetic data, and feature subsets.

Data follow the noisy linear model ``x = U z + eps`` with ``z ~ N(0, I_m)``
and ``eps ~ N(0, sigma^2 I_d)``.  Matrices store samples as columns, so a
dataset of ``n`` vectors in ``R^d`` is a ``(d, n)`` array.

Feature indices are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import ConstructionError, ContractViolation, SamplingError

__all__ = [
    "GroundTruthModel",
    "Dataset",
    "FeatureSet",
    "make_hadamard_basis",
    "make_random_basis",
    "make_model",
    "true_covariance",
    "sample_dataset",
    "sample_test_set",
    "restrict",
    "restrict_rows",
    "grow_feature_orders",
    "derive_seed",
    "save_matrix",
    "load_matrix",
]

ORTHO_TOL = 1e-10


def derive_seed(seed: int, *stream: int) -> int:
    """64-bit seed for a named sub-stream of one experiment seed.

    Sub-streams are keyed by fixed integer tags, so the same ``(seed,
    *stream)`` always maps to the same value and distinct tags give
    statistically independent generators.
    """
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), len(stream), *stream])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class GroundTruthModel:
    basis: np.ndarray
    noise_std: float

    def __post_init__(self):
        basis = np.array(self.basis, dtype=float)
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        if basis.ndim != 2:
            raise ConstructionError("basis must be a 2-D array")
        d, m = basis.shape
        if not 0 < m < d:
            raise ConstructionError(f"need 0 < m < d, got m={m}, d={d}")
        if self.noise_std < 0 or not np.isfinite(self.noise_std):
            raise ConstructionError("noise_std must be finite and non-negative")
        gram_err = np.max(np.abs(basis.T @ basis - np.eye(m)))
        if gram_err > ORTHO_TOL:
            raise ConstructionError(f"basis columns are not orthonormal (max error {gram_err:.3g})")

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def latent_dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class Dataset:
    """Centered samples, optionally paired with centered latent targets.

    The first ``n_sup`` columns of ``x_matrix`` and ``z_matrix`` form the
    supervised pairs; the rest are treated as unlabeled.
    """

    x_matrix: np.ndarray
    z_matrix: Optional[np.ndarray] = None
    n_sup: int = 0
    sample_mean: Optional[np.ndarray] = None
    latent_mean: Optional[np.ndarray] = None

    def __post_init__(self):
        x = np.array(self.x_matrix, dtype=float)
        x.setflags(write=False)
        object.__setattr__(self, "x_matrix", x)
        n = x.shape[1]
        if not 0 <= self.n_sup <= n:
            raise SamplingError(f"n_sup={self.n_sup} outside [0, {n}]")
        if self.z_matrix is not None:
            z = np.array(self.z_matrix, dtype=float)
            z.setflags(write=False)
            object.__setattr__(self, "z_matrix", z)
            if z.shape[1] != n:
                raise SamplingError("z_matrix must have one column per sample")
        elif self.n_sup > 0:
            raise SamplingError("n_sup > 0 requires z_matrix")
        if self.sample_mean is None:
            object.__setattr__(self, "sample_mean", np.zeros(x.shape[0]))

    @property
    def n(self) -> int:
        return self.x_matrix.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.x_matrix.shape[0]

    def with_n_sup(self, n_sup: int) -> "Dataset":
        """Same samples with a different supervision split."""
        return Dataset(self.x_matrix, self.z_matrix, n_sup, self.sample_mean, self.latent_mean)


@dataclass(frozen=True)
class FeatureSet:
    indices: tuple
    ambient_dim: int
    _index_array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if len(idx) < 1:
            raise ContractViolation("a feature set needs at least one index")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ContractViolation("feature indices must be strictly increasing")
        if idx[0] < 0 or idx[-1] >= self.ambient_dim:
            raise ContractViolation(f"feature index out of bounds for d={self.ambient_dim}")
        arr = np.asarray(idx, dtype=np.intp)
        arr.setflags(write=False)
        object.__setattr__(self, "_index_array", arr)

    @classmethod
    def full(cls, d: int) -> "FeatureSet":
        return cls(tuple(range(d)), d)

    @classmethod
    def from_order(cls, order: Sequence[int], p: int) -> "FeatureSet":
        """The first ``p`` entries of a permutation, sorted ascending."""
        order = np.asarray(order)
        return cls(tuple(sorted(int(i) for i in order[:p])), len(order))

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def array(self) -> np.ndarray:
        return self._index_array

    @property
    def complement(self) -> np.ndarray:
        mask = np.ones(self.ambient_dim, dtype=bool)
        mask[self._index_array] = False
        return np.flatnonzero(mask)


def _sylvester(d: int) -> np.ndarray:
    h = np.ones((1, 1))
    while h.shape[0] < d:
        h = np.block([[h, h], [h, -h]])
    return h


def make_hadamard_basis(d: int, m: int) -> np.ndarray:
    """First ``m`` columns of the order-``d`` Sylvester Hadamard matrix, scaled by ``1/sqrt(d)``.

    Raises
    ------
    ConstructionError
        If ``d`` is not a power of two or ``m`` is not in ``[1, d)``.
    """
    if d < 2 or d & (d - 1):
        raise ConstructionError(f"Sylvester construction needs d a power of two, got {d}")
    if not 1 <= m < d:
        raise ConstructionError(f"need 1 <= m < d, got m={m}, d={d}")
    return _sylvester(d)[:, :m] / np.sqrt(d)


def make_random_basis(d: int, m: int, seed: int) -> np.ndarray:
    """``m`` left singular vectors of a seeded ``d x d`` standard normal matrix."""
    if not 1 <= m < d:
        raise ConstructionError(f"need 1 <= m < d, got m={m}, d={d}")
    g = np.random.default_rng(seed).standard_normal((d, d))
    u, _, _ = np.linalg.svd(g)
    return u[:, :m]


def make_model(kind: str, d: int, m: int, noise_std: float, seed: int = 0) -> GroundTruthModel:
    if kind == "hadamard":
        basis = make_hadamard_basis(d, m)
    elif kind == "random":
        basis = make_random_basis(d, m, seed)
    else:
        raise ConstructionError(f"unknown basis kind {kind!r}")
    return GroundTruthModel(basis, float(noise_std))


def true_covariance(model: GroundTruthModel) -> np.ndarray:
    u = model.basis
    return u @ u.T + model.noise_std**2 * np.eye(model.ambient_dim)


def _draw(model: GroundTruthModel, n: int, rng: np.random.Generator):
    z = rng.standard_normal((model.latent_dim, n))
    eps = model.noise_std * rng.standard_normal((model.ambient_dim, n))
    return model.basis @ z + eps, z


def sample_dataset(model: GroundTruthModel, n: int, n_sup: int, seed: int) -> Dataset:
    """Draw ``n`` samples and center them by their sample mean.

    Latent vectors are centered by their own sample mean as well, which
    keeps the supervised targets in the row space of the centered data.
    """
    if n < 2:
        raise SamplingError("need n >= 2 samples to center")
    if not 0 <= n_sup <= n:
        raise SamplingError(f"n_sup={n_sup} outside [0, {n}]")
    x, z = _draw(model, n, np.random.default_rng(seed))
    x_mean = x.mean(axis=1)
    z_mean = z.mean(axis=1)
    return Dataset(x - x_mean[:, None], z - z_mean[:, None], n_sup, x_mean, z_mean)


def sample_test_set(model: GroundTruthModel, n_test: int, seed: int):
    """Uncentered ``(x, z)`` draws from the population, for Monte Carlo errors."""
    return _draw(model, n_test, np.random.default_rng(seed))


def restrict_rows(matrix: np.ndarray, features: FeatureSet) -> np.ndarray:
    """Row selection ``M[S, :]``."""
    matrix = np.asarray(matrix)
    if matrix.shape[0] != features.ambient_dim:
        raise ContractViolation(
            f"matrix has {matrix.shape[0]} rows, feature set expects {features.ambient_dim}"
        )
    return matrix[features.array]


def restrict(obj: Union[Dataset, np.ndarray], features: FeatureSet) -> np.ndarray:
    """``X_S`` for a dataset, or the principal submatrix ``C[S, S]`` for a square matrix."""
    if isinstance(obj, Dataset):
        return restrict_rows(obj.x_matrix, features)
    c = np.asarray(obj)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ContractViolation("restrict expects a Dataset or a square matrix")
    if c.shape[0] != features.ambient_dim:
        raise ContractViolation(f"matrix is {c.shape[0]}x{c.shape[0]}, feature set expects d={features.ambient_dim}")
    idx = features.array
    return c[np.ix_(idx, idx)]


def grow_feature_orders(d: int, num_orders: int, seed: int) -> list:
    """Independent uniform permutations of ``range(d)``; prefixes give nested feature sets."""
    if num_orders < 1:
        raise ContractViolation("num_orders must be >= 1")
    rng = np.random.default_rng(seed)
    return [rng.permutation(d) for _ in range(num_orders)]


def save_matrix(path: Union[str, Path], matrix: np.ndarray) -> None:
    """Write ``rows cols`` then one whitespace-separated row per line at full precision."""
    m = np.atleast_2d(np.asarray(matrix, dtype=float))
    if np.asarray(matrix).ndim == 1:
        m = m.T
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines += [" ".join("%.17g" % v for v in row) for row in m]
    Path(path).write_text("\n".join(lines) + "\n")


def load_matrix(path: Union[str, Path]) -> np.ndarray:
    text = Path(path).read_text().split("\n")
    try:
        rows, cols = (int(t) for t in text[0].split())
        data = [[float(t) for t in line.split()] for line in text[1 : rows + 1]]
    except ValueError as exc:
        raise ContractViolation(f"{path}: malformed matrix file ({exc})") from None
    out = np.array(data, dtype=float).reshape(rows, cols)
    return out
