"""Exception hierarchy shared by all trajectory-learning modules.

Every error subclasses ``ValueError`` as well, so callers that only know
about bad input keep working.
"""


class AtsccError(Exception):
    """Base class for all toolkit errors."""


class DatasetError(AtsccError, ValueError):
    """Raised when a dataset cannot be built or is inconsistent."""


class FormatError(AtsccError, ValueError):
    """Raised when an interchange file is malformed or has the wrong version."""


class PreprocessError(AtsccError, ValueError):
    """Raised when a preprocessing stage rejects a flight."""


class SegmentationError(AtsccError, ValueError):
    """Raised when segment IDs cannot be computed."""


class FeatureError(AtsccError, ValueError):
    """Raised when geometric features cannot be computed."""


class ShapeError(AtsccError, ValueError):
    """Raised when tensor operands have incompatible shapes."""


class ConfigError(AtsccError, ValueError):
    """Raised when a configuration value is invalid."""


class TrainingError(AtsccError, ValueError):
    """Raised when training cannot proceed."""


class EvaluationError(AtsccError, ValueError):
    """Raised when an evaluation protocol receives unusable input."""


class ScenarioError(AtsccError, ValueError):
    """Raised when a synthetic scenario is invalid."""


class RegistryError(AtsccError, ValueError):
    """Raised when the run registry is missing or was written by an incompatible version."""
