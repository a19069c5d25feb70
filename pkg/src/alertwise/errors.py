"""Exception hierarchy shared across the package."""


class AlertwiseError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(AlertwiseError, ValueError):
    """A model/spec file does not conform to its documented JSON schema."""


class InvalidNetworkError(AlertwiseError, ValueError):
    """Inference was requested on a network that fails validation."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"network failed validation: {report}")


class UnknownVariableError(AlertwiseError, KeyError):
    """A variable name does not resolve in the network."""


class UnknownStateError(AlertwiseError, KeyError):
    """A state label does not exist for the referenced variable."""


class InconsistentEvidenceError(AlertwiseError, ValueError):
    """The supplied evidence has probability zero under the model."""


class StateSpaceCapError(AlertwiseError, ValueError):
    """Brute-force enumeration refused: joint state space exceeds the cap."""


class ModelContractError(AlertwiseError, ValueError):
    """A loaded model file lacks a variable or binding the caller requires."""


class DegenerateCorpusError(AlertwiseError, ValueError):
    """A training/evaluation corpus does not contain enough distinct classes."""


class TrainingError(AlertwiseError, RuntimeError):
    """SVM training could not reach the requested tolerance."""


class CalibrationError(AlertwiseError, RuntimeError):
    """Sigmoid calibration failed (non-convergence or non-monotone fit).

    ``residual`` carries the final gradient norm when convergence failed.
    """

    def __init__(self, message, residual=None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual={residual:.3e})"
        super().__init__(message)


class FeatureSpecMismatchError(AlertwiseError, ValueError):
    """A persisted model and the active feature extractor disagree."""


class ConfigurationError(AlertwiseError, ValueError):
    """A cost model or policy configuration is missing a required entry."""
