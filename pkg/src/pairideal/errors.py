"""Exceptions raised by pairideal.

All of them derive from `ValueError`, so callers that only care about "bad input"
can catch that. The command line maps them to exit codes.
"""


class GraphFormatError(ValueError):
    """A graph file could not be parsed."""


class PolynomialFormatError(ValueError):
    """A polynomial text could not be parsed."""


class ConfigError(ValueError):
    """A configuration file has an invalid shape."""


class PreconditionError(ValueError):
    """An operation was called outside of its domain."""


class DisconnectedGraphError(PreconditionError):
    """A graph that must be connected is not."""
