"""Exception hierarchy shared by all modules."""


class SubspaceError(Exception):
    """Base class for every error raised by this package."""


class ConstructionError(SubspaceError, ValueError):
    """A basis or model could not be built from the given parameters."""


class SamplingError(SubspaceError, ValueError):
    """Dataset generation was asked for something ill-defined."""


class ContractViolation(SubspaceError, ValueError):
    """An input broke a documented precondition (shape, symmetry, bounds)."""


class ParameterError(SubspaceError, ValueError):
    """An estimator received an inconsistent dimension or option."""


class DivergenceError(SubspaceError, ArithmeticError):
    """Projected gradient descent produced a non-finite objective."""


class ConfigError(SubspaceError, ValueError):
    """A sweep configuration is malformed or out of range."""


class SchemaError(SubspaceError, ValueError):
    """A results file does not follow the expected layout."""
