class PlotError(Exception):
    """Base class for rendering errors."""


class SchemaError(PlotError):
    """Input does not parse against the published artifact schemas."""


class EmptyInput(PlotError):
    """No usable rows in the input."""
