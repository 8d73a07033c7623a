"""Offline figure tool for simulation CSV artifacts."""

from .errors import EmptyInput, PlotkitError, SchemaMismatch
from .render import KINDS, REQUIRED, FigureRequest, read_rows, render

__all__ = ["EmptyInput", "PlotkitError", "SchemaMismatch", "KINDS",
           "REQUIRED", "FigureRequest", "read_rows", "render"]

__version__ = "0.1.0"
