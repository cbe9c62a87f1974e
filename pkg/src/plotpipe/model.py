"""The plot object: nested attribute maps at plot, subplot, axis and series level.

Construction (``new_plot``, ``plot_mut``, ``shorthand``) only builds the
specification; nothing is drawn until a backend is asked for output.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from . import layout as lay
from .attributes import (
    AXIS_LETTERS,
    DATA_CHANNELS,
    AttrMap,
    attribute_level,
    axis_of,
    canonicalize_key,
)
from .errors import ArgumentError, PlotError, UnknownSeriestype
from .inputs import LayoutComposition, SeriesPrototype, interpret_args
from .values import AUTO, UNSET, DataColumn, sanitize_data


@dataclass
class AxisSpec:
    which: str
    attrs: AttrMap = field(default_factory=AttrMap)
    extras: dict = field(default_factory=dict)

    def _get(self, name, default):
        v = self.attrs.get(self.which + name, UNSET)
        return default if v is UNSET else v

    @property
    def limits(self):
        return self._get("limits", AUTO)

    @property
    def scale(self):
        return self._get("scale", "linear")

    @property
    def label(self):
        return self._get("label", "")

    @property
    def ticks(self):
        return self._get("ticks", AUTO)


def _default_axes():
    return {letter: AxisSpec(letter) for letter in AXIS_LETTERS}


@dataclass
class SubplotSpec:
    attrs: AttrMap = field(default_factory=AttrMap)
    axes: dict = field(default_factory=_default_axes)
    series: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)


@dataclass
class SeriesSpec:
    x: object = None
    y: object = None
    z: object = None
    xerror: DataColumn | None = None
    yerror: DataColumn | None = None
    fillrange: object = None
    attrs: AttrMap = field(default_factory=AttrMap)
    subplot_index: int = 0
    extras: dict = field(default_factory=dict)

    @property
    def seriestype(self) -> str:
        st = self.attrs.get("seriestype", UNSET)
        return "path" if st is UNSET else st

    def channel(self, name):
        return getattr(self, name)


@dataclass
class PlotSpec:
    attrs: AttrMap = field(default_factory=AttrMap)
    layout: object = field(default_factory=lambda: lay.Leaf(0))
    subplots: list = field(default_factory=list)
    series: list = field(default_factory=list)
    resolved: bool = False
    extras: dict = field(default_factory=dict)

    def reindex(self):
        """Recompute each subplot's list of series indices."""
        for sp in self.subplots:
            sp.series = []
        for i, s in enumerate(self.series):
            self.subplots[s.subplot_index].series.append(i)


def validate(spec: PlotSpec):
    """Check structural invariants; raises PlotError on violation."""
    idx = lay.leaves(spec.layout)
    if sorted(idx) != list(range(len(spec.subplots))):
        raise PlotError(f"layout leaves {sorted(idx)} do not match {len(spec.subplots)} subplots")
    for i, s in enumerate(spec.series):
        if not 0 <= s.subplot_index < len(spec.subplots):
            raise PlotError(f"series {i} refers to missing subplot {s.subplot_index}")
    for j, sp in enumerate(spec.subplots):
        for i in sp.series:
            if not 0 <= i < len(spec.series) or spec.series[i].subplot_index != j:
                raise PlotError(f"subplot {j} lists series {i} which is not in it")


def _layout_from(value) -> lay.LayoutNode:
    if isinstance(value, (lay.Leaf, lay.Grid)):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return lay.default_grid(value)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return lay.grid(int(value[0]), int(value[1]))
    raise ArgumentError(f"layout must be an int, a (rows, cols) pair or a layout node, got {value!r}")


def _split_kwargs(kwargs: dict | None):
    """Canonicalize keys and pull out the construction-only entries."""
    flat = {}
    layout = None
    subplot = None
    for k, v in (kwargs or {}).items():
        key = canonicalize_key(k)
        if key == "layout":
            layout = v
        elif key == "subplot":
            subplot = v
        else:
            flat[key] = v
    return flat, layout, subplot


_PER_SUBPLOT_TEXT = {"title", "legend"} | {a + k for a in AXIS_LETTERS for k in ("label", "scale")}
# a list of these, one per new series, is split across the series
_PER_SERIES_TEXT = {"label", "linestyle"}


def _route(spec: PlotSpec, flat: dict, new_series: list, subplot_targets: list[int]):
    """Store each attribute at its level."""
    for key, value in flat.items():
        level = attribute_level(key)
        if level == "plot":
            spec.attrs[key] = value
        elif level in ("subplot", "axis"):
            per = (key in _PER_SUBPLOT_TEXT and isinstance(value, (tuple, list))
                   and len(value) == len(subplot_targets) and len(subplot_targets) > 1)
            for n, j in enumerate(subplot_targets):
                v = value[n] if per else value
                sp = spec.subplots[j]
                if level == "subplot":
                    sp.attrs[key] = v
                else:
                    sp.axes[axis_of(key)].attrs[key] = v
        else:
            per = (key in _PER_SERIES_TEXT and isinstance(value, (tuple, list))
                   and len(value) == len(new_series) > 1)
            for n, s in enumerate(new_series):
                if per:
                    s.attrs[key] = value[n]
                elif key in DATA_CHANNELS:
                    setattr(s, key, value if key == "fillrange" and isinstance(value, (int, float))
                            else sanitize_data(value))
                else:
                    s.attrs[key] = copy.deepcopy(value)


def _series_from(proto: SeriesPrototype, subplot_index: int) -> SeriesSpec:
    return SeriesSpec(x=proto.x, y=proto.y, z=proto.z, attrs=AttrMap(proto.attrs),
                      subplot_index=subplot_index)


def _compose(comp: LayoutComposition, layout_value) -> PlotSpec:
    spec = PlotSpec(layout=None)
    child_layouts = []
    for child in comp.plots:
        child = copy.deepcopy(child)
        offset = len(spec.subplots)
        child_layouts.append(lay.shift_leaves(child.layout, offset))
        spec.subplots.extend(child.subplots)
        for s in child.series:
            s.subplot_index += offset
            spec.series.append(s)
    k = len(child_layouts)
    if layout_value is not None:
        shape = _layout_from(layout_value)
        if not isinstance(shape, lay.Grid) or shape.rows * shape.cols < k:
            raise ArgumentError(f"layout {layout_value!r} has fewer cells than the {k} plots given")
        cells = tuple(child_layouts) + (lay.Blank(),) * (shape.rows * shape.cols - k)
        spec.layout = lay.Grid(shape.rows, shape.cols, cells, shape.widths, shape.heights)
    else:
        base = lay.default_grid(k)
        if isinstance(base, lay.Leaf):
            spec.layout = child_layouts[0]
        else:
            cells = tuple(child_layouts[c.index] if isinstance(c, lay.Leaf) else c for c in base.children)
            spec.layout = lay.Grid(base.rows, base.cols, cells)
    spec.reindex()
    return spec


def new_plot(args=(), kwargs: dict | None = None) -> PlotSpec:
    """Build an unresolved plot from positional arguments and attributes."""
    flat, layout_value, subplot = _split_kwargs(kwargs)
    interpreted = interpret_args(args, seriestype=flat.get("seriestype"))
    if isinstance(interpreted, LayoutComposition):
        spec = _compose(interpreted, layout_value)
        _route(spec, flat, [], list(range(len(spec.subplots))))
        return spec

    root = _layout_from(layout_value) if layout_value is not None else lay.Leaf(0)
    n_sub = len(lay.leaves(root))
    if sorted(lay.leaves(root)) != list(range(n_sub)):
        raise ArgumentError("layout leaves must be numbered 0..n-1")
    spec = PlotSpec(layout=root, subplots=[SubplotSpec() for _ in range(n_sub)])
    if subplot is not None and not 0 <= subplot < n_sub:
        raise PlotError(f"subplot index {subplot} out of range for {n_sub} subplots")
    new_series = []
    for i, proto in enumerate(interpreted):
        target = subplot if subplot is not None else i % n_sub
        new_series.append(_series_from(proto, target))
    spec.series.extend(new_series)
    targets = [subplot] if subplot is not None else list(range(n_sub))
    _route(spec, flat, new_series, targets)
    spec.reindex()
    return spec


def plot_mut(target: PlotSpec, args=(), kwargs: dict | None = None) -> PlotSpec:
    """Add series and/or override attributes of ``target`` in place.

    Series-level attributes given without new data apply to the existing
    series (of the chosen subplot, if one is given).
    """
    if target.resolved:
        raise PlotError("cannot modify a resolved plot; modify the unresolved original instead")
    flat, layout_value, subplot = _split_kwargs(kwargs)
    if layout_value is not None:
        raise ArgumentError("layout can only be given when the plot is created")
    n_sub = len(target.subplots)
    if subplot is not None and not 0 <= subplot < n_sub:
        raise PlotError(f"subplot index {subplot} out of range for {n_sub} subplots")
    interpreted = interpret_args(args, seriestype=flat.get("seriestype"))
    if isinstance(interpreted, LayoutComposition):
        raise ArgumentError("plots cannot be added into an existing plot")
    new_series = [_series_from(p, subplot if subplot is not None else 0) for p in interpreted]
    target.series.extend(new_series)
    if not args:
        new_series = [s for s in target.series if subplot is None or s.subplot_index == subplot]
    targets = [subplot] if subplot is not None else list(range(n_sub))
    _route(target, flat, new_series, targets)
    target.reindex()
    return target


def shorthand(seriestype: str, args=(), kwargs: dict | None = None, registry=None) -> PlotSpec:
    """``new_plot`` with a preset seriestype; an explicit seriestype kwarg wins."""
    from .recipes.registry import default_registry

    reg = registry if registry is not None else default_registry()
    kwargs = dict(kwargs or {})
    explicit = [k for k in kwargs if canonicalize_key(k, warn=False) == "seriestype"]
    chosen = kwargs[explicit[-1]] if explicit else seriestype
    if not reg.is_known_seriestype(chosen):
        raise UnknownSeriestype(f"unknown seriestype {chosen!r}")
    if not explicit:
        kwargs["seriestype"] = seriestype
    return new_plot(args, kwargs)
