"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A model parameter or argument lies outside its admissible domain."""


class DegenerateRatesError(ZeroDivisionError):
    """Epithelium activation and inactivation rates both vanish."""


class DegeneratePolynomialError(ValueError):
    """All polynomial coefficients vanish (after trimming)."""


class NoSignChangeError(ValueError):
    """A root bracket does not contain a sign change.

    The values at both ends are kept on the instance for diagnostics.
    """

    def __init__(self, message, g_lo=None, g_hi=None):
        super().__init__(message)
        self.g_lo = g_lo
        self.g_hi = g_hi


class NumericalError(RuntimeError):
    """A solver failed to converge or a positivity budget was exceeded."""


class ConfigError(ValueError):
    """Malformed configuration file or command-line value."""
