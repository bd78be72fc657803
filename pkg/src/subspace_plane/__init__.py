"""Linear subspace estimation across the supervision / orthonormality plane.

From unsupervised PCA fitting, through soft-constrained semi-supervised
estimation, to unconstrained least-squares regression, with the metrics and
sweep harness needed to study generalization error versus the number of
features used for learning.
"""
from .errors import (
    ConfigError,
    ConstructionError,
    ContractViolation,
    DivergenceError,
    ParameterError,
    SamplingError,
    SchemaError,
    SubspaceError,
)
from .estimators import (
    FitReport,
    PgdOptions,
    SubspaceEstimate,
    embed,
    fit_regression,
    fit_semisupervised_pgd,
    fit_supervised_pgd,
    fit_unsupervised_pca,
    fit_unsupervised_pgd,
    line_search_step,
)
from .harness import SweepConfig, SweepResult, plot_curves, read_csv, run_sweep, trajectory_presets, write_csv
from .model import (
    Dataset,
    FeatureSet,
    GroundTruthModel,
    grow_feature_orders,
    make_hadamard_basis,
    make_model,
    make_random_basis,
    restrict,
    sample_dataset,
    true_covariance,
)
from .spectral import ConstraintLevel, eig_symmetric, project_hard, project_soft, pseudoinverse, thin_svd

__version__ = "0.1.0"
