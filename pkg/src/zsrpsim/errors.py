"""Exception types shared across the package.

The CLI maps these onto process exit codes (see cli.main): configuration
problems exit 2, numerical-accuracy failures exit 3, capacity guards exit 4.
"""


class ConfigError(Exception):
    """Invalid or missing configuration (file, schema, or value range)."""


class AccuracyError(Exception):
    """A numerical routine could not reach its stated tolerance."""


class CapacityError(Exception):
    """A request exceeds a hard size guard (e.g. series enumeration limits)."""


class AnalyticUnavailableError(Exception):
    """No closed-form evaluator exists for the requested scheme/config."""
