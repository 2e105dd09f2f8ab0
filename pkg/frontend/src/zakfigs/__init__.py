"""SVG figure renderer for the simulator's CSV exports."""

from .errors import EmptyInput, MissingColumn, RenderError
from .figures import FIGURES, FigureSpec, render, spec_for

__version__ = "0.1.0"

__all__ = [
    "EmptyInput",
    "FIGURES",
    "FigureSpec",
    "MissingColumn",
    "RenderError",
    "render",
    "spec_for",
]
