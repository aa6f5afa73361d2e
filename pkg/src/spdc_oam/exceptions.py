"""Exception and warning types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the bounded domain an operation supports."""


class DegeneracyError(ArithmeticError):
    """A numeric result is degenerate (e.g. every OAM weight is zero)."""


class ConfigError(ValueError):
    """Invalid run configuration.

    ``key_path`` names the offending dotted key when one is known.
    """

    def __init__(self, message, key_path=None):
        self.key_path = key_path
        if key_path:
            message = f"{key_path}: {message}"
        super().__init__(message)


class SupportWarning(UserWarning):
    """A sampled function is not negligible at the edge of its grid."""
