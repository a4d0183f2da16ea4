from .errors import EmptyInput, PlotError, SchemaError
from .render import PlotJob, render
