"""Exception types shared across the toolkit."""


class EmergekitError(Exception):
    """Base class for all toolkit errors."""


class FormatError(EmergekitError):
    """Raised when an input file does not match its declared format."""


class ConfigError(EmergekitError):
    """Raised when a configuration value is missing, unknown, or invalid."""


class MissingArtifactError(EmergekitError):
    """Raised when a pipeline stage needs an artifact that was never produced."""

    def __init__(self, path):
        self.path = path
        super().__init__(f"missing required artifact: {path}")
