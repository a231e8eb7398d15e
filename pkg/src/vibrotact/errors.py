"""Exception types shared across the toolkit."""


class VibrotactError(Exception):
    """Base class for all toolkit errors."""


class InvalidWindowError(VibrotactError):
    """Requested segmentation window does not intersect the recording."""


class InvalidSelectionError(VibrotactError):
    """Taxel selection is empty or references unknown taxel indices."""


class AliasingError(VibrotactError):
    """Sampling rate too low for the highest retained modal frequency."""


class InvalidSamplerError(VibrotactError):
    """Tap position sampler has empty support."""


class InvalidRateError(VibrotactError):
    """Decimation target rate exceeds the source rate."""


class InvalidParameterError(VibrotactError):
    """Feature extractor parameter out of range for the given payload."""


class InvalidDataError(VibrotactError):
    """Non-finite features, mismatched shapes, or otherwise unusable data."""


class ConvergenceError(VibrotactError):
    """Optimizer failed to reach its optimality tolerance.

    Carries the remaining duality gap when raised by the SVM solver.
    """

    def __init__(self, message, duality_gap=None):
        super().__init__(message)
        self.duality_gap = duality_gap


class TrainingError(VibrotactError):
    """Gradient training diverged (non-finite loss)."""

    def __init__(self, message, epoch=None):
        super().__init__(message)
        self.epoch = epoch


class StratificationError(VibrotactError):
    """Cross-validation folds cannot be stratified for this label set."""


class ProtocolError(VibrotactError):
    """Evaluation protocol cannot run (insufficient data, repeated failures)."""


class ConfigError(VibrotactError):
    """Malformed or unknown configuration keys."""


class AdapterError(VibrotactError):
    """Dataset importer does not recognize the source layout."""
