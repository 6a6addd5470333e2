"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes, so new error conditions
should subclass one of the four roots below rather than raising bare
built-ins.
"""


class ValidationError(ValueError):
    """A parameter or configuration value violates its documented range."""


class ConfigError(ValidationError):
    """A configuration file could not be parsed or resolved."""


class StabilityError(RuntimeError):
    """The drift matrix is not Hurwitz; no steady state exists."""

    def __init__(self, message, spectral_abscissa=None):
        super().__init__(message)
        self.spectral_abscissa = spectral_abscissa


class UnphysicalStateError(RuntimeError):
    """A covariance matrix failed a physicality precondition."""


class NumericalError(RuntimeError):
    """A numerical routine produced an unusable result (bad residual, ...)."""
