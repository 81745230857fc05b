"""Error taxonomy for the exporter."""


class ExportError(Exception):
    """Base class for exporter failures."""


class InputFormatError(ExportError):
    """An input file does not match the expected layout."""


class MissingModelError(ExportError):
    """The requested encoder model cannot be loaded."""
