import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subspace_plane.errors import ConstructionError, ContractViolation, SamplingError
from subspace_plane.model import (
    Dataset,
    FeatureSet,
    GroundTruthModel,
    derive_seed,
    grow_feature_orders,
    load_matrix,
    make_hadamard_basis,
    make_model,
    make_random_basis,
    restrict,
    restrict_rows,
    sample_dataset,
    save_matrix,
    true_covariance,
)


def test_hadamard_large():
    b = make_hadamard_basis(128, 40)
    assert b.shape == (128, 40)
    assert np.max(np.abs(b.T @ b - np.eye(40))) <= 1e-10
    assert np.allclose(np.abs(b), 1 / np.sqrt(128))
    # first column of a Sylvester matrix is all ones
    assert np.allclose(b[:, 0], 1 / np.sqrt(128))


def test_hadamard_base_case():
    b = make_hadamard_basis(2, 1)
    assert np.allclose(b[:, 0], [1 / np.sqrt(2), 1 / np.sqrt(2)])


def test_hadamard_order_four_gram_exact():
    b = make_hadamard_basis(4, 2)
    # columns (1,1,1,1)/2 and (1,-1,1,-1)/2: entries are exact halves
    assert np.array_equal(b.T @ b, np.eye(2))


@pytest.mark.parametrize("d", [3, 6, 12, 100])
def test_hadamard_rejects_non_power_of_two(d):
    with pytest.raises(ConstructionError):
        make_hadamard_basis(d, 1)


def test_random_basis_orthonormal_and_deterministic():
    b = make_random_basis(16, 4, seed=7)
    assert np.max(np.abs(b.T @ b - np.eye(4))) <= 1e-10
    assert np.array_equal(b, make_random_basis(16, 4, seed=7))
    assert not np.array_equal(b, make_random_basis(16, 4, seed=8))


def test_random_basis_requires_m_below_d():
    with pytest.raises(ConstructionError):
        make_random_basis(8, 8, seed=0)


def test_model_rejects_non_orthonormal_basis():
    with pytest.raises(ConstructionError):
        GroundTruthModel(np.ones((4, 2)), 0.1)
    with pytest.raises(ConstructionError):
        GroundTruthModel(make_hadamard_basis(4, 2), -1.0)


def test_true_covariance_noiseless_is_projector():
    model = make_model("random", 10, 3, 0.0, seed=1)
    c = true_covariance(model)
    assert np.allclose(c @ c, c)
    assert np.isclose(np.trace(c), 3)


def test_true_covariance_trace_and_spectrum():
    model = make_model("hadamard", 128, 40, 0.1)
    c = true_covariance(model)
    # 40 eigenvalues of 1.01 and 88 of 0.01
    assert np.isclose(np.trace(c), 40 * 1.01 + 88 * 0.01)
    assert np.isclose(np.trace(c), 41.28)
    w = np.sort(np.linalg.eigvalsh(c))[::-1]
    assert np.allclose(w[:40], 1.01) and np.allclose(w[40:], 0.01)
    assert np.array_equal(c, c.T)


def test_sample_dataset_is_centered():
    model = make_model("hadamard", 32, 5, 0.3)
    data = sample_dataset(model, 100, 40, seed=2)
    assert np.linalg.norm(data.x_matrix.sum(axis=1)) < 1e-9
    assert data.z_matrix.shape == (5, 100)
    assert data.n_sup == 40
    assert data.sample_mean.shape == (32,)


def test_noiseless_rank():
    model = make_model("random", 20, 5, 0.0, seed=3)
    data = sample_dataset(model, 50, 0, seed=4)
    assert np.linalg.matrix_rank(data.x_matrix) <= min(5, 49)
    assert np.linalg.matrix_rank(data.x_matrix) == 5


def test_sample_covariance_converges():
    model = make_model("hadamard", 16, 4, 0.5)
    data = sample_dataset(model, 100_000, 0, seed=5)
    c_hat = data.x_matrix @ data.x_matrix.T / data.n
    c = true_covariance(model)
    assert np.linalg.norm(c_hat - c) / np.linalg.norm(c) < 0.03


def test_sample_dataset_errors():
    model = make_model("hadamard", 8, 2, 0.1)
    with pytest.raises(SamplingError):
        sample_dataset(model, 1, 0, seed=0)
    with pytest.raises(SamplingError):
        sample_dataset(model, 5, 6, seed=0)


def test_dataset_determinism():
    model = make_model("hadamard", 16, 4, 0.2)
    a = sample_dataset(model, 30, 10, seed=11)
    b = sample_dataset(model, 30, 10, seed=11)
    assert np.array_equal(a.x_matrix, b.x_matrix)
    assert np.array_equal(a.z_matrix, b.z_matrix)


def test_centering_idempotent():
    model = make_model("hadamard", 16, 4, 0.2)
    x = sample_dataset(model, 30, 0, seed=12).x_matrix
    again = x - x.mean(axis=1, keepdims=True)
    assert np.max(np.abs(again - x)) <= 1e-12


def test_latent_targets_follow_model_after_centering():
    model = make_model("random", 12, 3, 0.0, seed=1)
    data = sample_dataset(model, 20, 20, seed=6)
    assert np.allclose(data.x_matrix, model.basis @ data.z_matrix)


def test_dataset_requires_z_when_supervised():
    with pytest.raises(SamplingError):
        Dataset(np.zeros((3, 4)), None, n_sup=2)


def test_restrict_identity_and_single():
    model = make_model("hadamard", 8, 2, 0.1)
    data = sample_dataset(model, 10, 0, seed=0)
    full = FeatureSet.full(8)
    assert np.array_equal(restrict(data, full), data.x_matrix)
    diag = np.diag(np.arange(1.0, 9.0))
    assert np.array_equal(restrict(diag, FeatureSet((0,), 8)), [[1.0]])
    assert np.array_equal(restrict(diag, full), diag)


def test_restrict_errors():
    with pytest.raises(ContractViolation):
        FeatureSet((0, 8), 8)
    with pytest.raises(ContractViolation):
        FeatureSet((3, 1), 8)
    with pytest.raises(ContractViolation):
        restrict(np.eye(5), FeatureSet((0,), 8))
    with pytest.raises(ContractViolation):
        restrict_rows(np.zeros((5, 3)), FeatureSet((0,), 8))


def test_restricted_covariance_matches_restricted_samples():
    model = make_model("hadamard", 16, 4, 0.3)
    data = sample_dataset(model, 100_000, 0, seed=8)
    s = FeatureSet((1, 4, 5, 9, 13), 16)
    x_s = restrict(data, s)
    c_s = restrict(true_covariance(model), s)
    assert np.linalg.norm(x_s @ x_s.T / data.n - c_s) / np.linalg.norm(c_s) < 0.03


def test_feature_orders():
    orders = grow_feature_orders(20, 3, seed=4)
    again = grow_feature_orders(20, 3, seed=4)
    assert all(np.array_equal(a, b) for a, b in zip(orders, again))
    for o in orders:
        assert sorted(o) == list(range(20))
        sets = [set(FeatureSet.from_order(o, p).indices) for p in range(1, 21)]
        assert all(a < b for a, b in zip(sets, sets[1:]))
    with pytest.raises(ContractViolation):
        grow_feature_orders(5, 0, seed=0)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.integers(0, 2**32 - 1))
def test_nested_restriction(d, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((d, d))
    c = a @ a.T
    order = rng.permutation(d)
    p = int(rng.integers(1, d))
    big = FeatureSet.from_order(order, p + 1)
    small = FeatureSet.from_order(order, p)
    relabeled = FeatureSet(tuple(big.indices.index(i) for i in small.indices), p + 1)
    assert np.array_equal(restrict(restrict(c, big), relabeled), restrict(c, small))


def test_derive_seed_streams():
    assert derive_seed(5, 1) == derive_seed(5, 1)
    assert len({derive_seed(5, 1), derive_seed(5, 2), derive_seed(6, 1), derive_seed(5, 1, 0)}) == 4


def test_matrix_file_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    m = rng.standard_normal((4, 3)) * 1e-7
    save_matrix(tmp_path / "m.txt", m)
    lines = (tmp_path / "m.txt").read_text().splitlines()
    assert lines[0] == "4 3"
    assert len(lines) == 5
    assert np.array_equal(load_matrix(tmp_path / "m.txt"), m)
    save_matrix(tmp_path / "v.txt", np.arange(3.0))
    assert load_matrix(tmp_path / "v.txt").shape == (3, 1)


def test_matrix_file_malformed(tmp_path):
    (tmp_path / "bad.txt").write_text("2 x\n1 2\n")
    with pytest.raises(ContractViolation):
        load_matrix(tmp_path / "bad.txt")
