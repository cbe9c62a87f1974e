"""plotpipe: build a plot once, render it through any backend.

>>> import plotpipe as pp
>>> p = pp.plot([1, 3, 2], color="steelblue", lw=2)
>>> svg = pp.render(p, "svg")
"""

from .attributes import AttrMap, apply_defaults, canonicalize_key, resolve_auto
from .colors import ColorSpec, Palette, resolve_color
from .errors import (
    ArgumentError,
    EmptyData,
    LengthMismatchError,
    NoRecipeFound,
    PlotError,
    RecursionLimitExceeded,
    UnknownAttributeWarning,
    UnknownSeriestype,
    UnresolvedSpec,
    VersionMismatch,
)
from .inputs import sample_function
from .layout import Blank, Grid, Leaf, compute_layout, default_grid, grid, infer_limits, optimize_ticks
from .model import PlotSpec, SeriesSpec, new_plot, plot_mut, shorthand
from .pipeline import render, resolve, save
from .values import AUTO, UNSET, DataColumn, Matrix


def plot(*args, **kwargs) -> PlotSpec:
    """Create a plot; nothing is drawn until ``render`` or ``save``."""
    return new_plot(args, kwargs)


def plot_(target: PlotSpec, *args, **kwargs) -> PlotSpec:
    """Add series or attributes to ``target`` in place and return it."""
    return plot_mut(target, args, kwargs)


def _shorthand(seriestype):
    def f(*args, **kwargs):
        return shorthand(seriestype, args, kwargs)
    f.__name__ = seriestype
    f.__doc__ = f"``plot(..., seriestype={seriestype!r})``"
    return f


scatter = _shorthand("scatter")
bar = _shorthand("bar")
histogram = _shorthand("histogram")
boxplot = _shorthand("boxplot")
heatmap = _shorthand("heatmap")

__all__ = [
    "AUTO", "UNSET", "ArgumentError", "AttrMap", "Blank", "ColorSpec", "DataColumn", "EmptyData", "Grid",
    "Leaf", "LengthMismatchError", "Matrix", "NoRecipeFound", "Palette", "PlotError", "PlotSpec",
    "RecursionLimitExceeded", "SeriesSpec", "UnknownAttributeWarning", "UnknownSeriestype", "UnresolvedSpec",
    "VersionMismatch", "apply_defaults", "bar", "boxplot", "canonicalize_key", "compute_layout", "default_grid",
    "grid", "heatmap", "histogram", "infer_limits", "new_plot", "optimize_ticks", "plot", "plot_", "plot_mut",
    "render", "resolve", "resolve_auto", "resolve_color", "sample_function", "save", "scatter", "shorthand",
]
