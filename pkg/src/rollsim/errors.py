"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration value, file, or geometry."""


class BlowupError(RuntimeError):
    """A model evaluation produced a non-finite value.

    Carries the offending state (as passed in) so the caller can report it.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
