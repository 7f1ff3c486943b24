"""Exception types raised by the package."""


class InvalidChannelError(ValueError):
    """Input data does not describe a legal channel, state or canonical form."""


class InvariantError(RuntimeError):
    """An internal consistency check failed (two computation paths disagree)."""
