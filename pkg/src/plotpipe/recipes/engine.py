"""Recursive recipe application.

Each series is expanded depth-first until it carries a primitive
seriestype and plain numeric data. At every step the first matching
recipe is taken in this order: a type recipe for the element type of a
data channel, a user recipe for a domain payload, a plot recipe, then a
series recipe for the seriestype.

Force values set by an outer recipe are pinned for the whole subtree: an
inner Force on the same key only acts as a Default. ``seriestype`` is
never pinned so that nested series recipes can keep lowering it.
"""

from __future__ import annotations

import copy
import numbers
from dataclasses import dataclass, field
from types import MappingProxyType

from .. import layout as lay
from ..attributes import DATA_CHANNELS, AttrMap, attribute_level, axis_of
from ..errors import NoRecipeFound, PlotError, RecursionLimitExceeded
from ..values import UNSET, DataColumn, Matrix, is_missing, sanitize_data
from .base import AttrDirective, Mode, RecipeKind, RecipeOutput, SeriesData, apply_attr_directive

MAX_DEPTH = 64
PAYLOAD_CHANNELS = ("y", "x", "z")


@dataclass
class TraceEntry:
    depth: int
    name: str
    kind: RecipeKind
    series: int


@dataclass
class Trace:
    """Record of every recipe application, plus the chain behind each output series."""

    entries: list = field(default_factory=list)
    chains: list = field(default_factory=list)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]


def _is_numeric_payload(v) -> bool:
    return v is None or isinstance(v, (DataColumn, Matrix))


def _element_type(v):
    """Common element type of a tuple payload, or None."""
    if not isinstance(v, tuple) or not v:
        return None
    types = {type(item) for item in v}
    return types.pop() if len(types) == 1 else None


def _as_payload(v):
    if v is None or isinstance(v, (DataColumn, Matrix)):
        return v
    if isinstance(v, (list, tuple, range)) or hasattr(v, "tolist"):
        items = v.tolist() if hasattr(v, "tolist") else list(v)
        if all(isinstance(i, numbers.Real) or is_missing(i) for i in items):
            return sanitize_data(items)
        return tuple(items)
    return v


def _channel_value(key, value):
    if value is None:
        return None
    if key == "fillrange" and isinstance(value, numbers.Real):
        return float(value)
    return sanitize_data(value)


class _Expander:
    def __init__(self, registry, spec, trace, max_depth):
        self.reg = registry
        self.spec = spec
        self.trace = trace
        self.max_depth = max_depth
        self.out = []

    def run(self):
        for i, s in enumerate(self.spec.series):
            self.expand(s, i, 0, (), frozenset())
        self.spec.series = self.out
        self.spec.reindex()
        return self.spec

    def find(self, s):
        for ch in PAYLOAD_CHANNELS:
            et = _element_type(getattr(s, ch))
            if et is not None:
                r = self.reg.lookup_type(et)
                if r is not None:
                    return r
        for ch in PAYLOAD_CHANNELS:
            v = getattr(s, ch)
            if _is_numeric_payload(v):
                continue
            r = self.reg.lookup_user(v)
            if r is None:
                name = f"{_element_type(v).__name__}[]" if _element_type(v) else type(v).__name__
                raise NoRecipeFound(f"no type or user recipe for {ch} payload of type {name}")
            return r
        st = s.seriestype
        if st in self.reg.primitives:
            return None
        r = self.reg.lookup_plot(st) or self.reg.lookup_series(st)
        if r is None:
            raise NoRecipeFound(f"no recipe for seriestype {st!r}")
        return r

    def expand(self, s, ordinal, depth, chain, pinned):
        recipe = self.find(s)
        if recipe is None:
            self.out.append(s)
            if self.trace is not None:
                self.trace.chains.append(tuple(chain))
            return
        chain = chain + (recipe.name,)
        if depth >= self.max_depth:
            raise RecursionLimitExceeded(depth, chain)
        if self.trace is not None:
            self.trace.entries.append(TraceEntry(depth, recipe.name, recipe.kind, ordinal))
        if recipe.kind is RecipeKind.TYPE:
            child = copy.copy(s)
            for ch in PAYLOAD_CHANNELS:
                v = getattr(s, ch)
                et = _element_type(v)
                if et is not None and self.reg.lookup_type(et) is recipe:
                    setattr(child, ch, sanitize_data([recipe.transform(item) for item in v]))
            self.expand(child, ordinal, depth + 1, chain, pinned)
            return
        data = SeriesData(s.x, s.y, s.z, s.xerror, s.yerror, s.fillrange, ordinal, s.subplot_index)
        result = recipe.transform(data, MappingProxyType(dict(s.attrs)))
        if isinstance(result, RecipeOutput):
            result = [result]
        for out in result:
            child, child_pinned = self.make_child(s, out, pinned)
            self.expand(child, ordinal, depth + 1, chain, child_pinned)

    def make_child(self, parent, out: RecipeOutput, pinned):
        x, y, z = _as_payload(out.x), _as_payload(out.y), _as_payload(out.z)
        if x is None and isinstance(y, DataColumn):
            x = DataColumn([float(i) for i in range(1, len(y) + 1)])
        child = type(parent)(x=x, y=y, z=z, attrs=AttrMap(parent.attrs),
                             subplot_index=parent.subplot_index, extras=dict(parent.extras))
        n = len(y) if isinstance(y, (DataColumn, tuple)) else None
        for ch in DATA_CHANNELS:
            v = getattr(parent, ch)
            if v is None or isinstance(v, float) or (n is not None and len(v) == n):
                setattr(child, ch, v)

        forced = set()
        directives = [self.effective(d, pinned) for d in out.directives]
        order = sorted(directives, key=lambda d: (d.key != "layout", d.key != "subplot"))
        for d in order:
            if d.mode is Mode.FORCE and d.key != "seriestype":
                forced.add(d.key)
            self.route(child, d)
        return child, pinned | forced

    @staticmethod
    def effective(d: AttrDirective, pinned) -> AttrDirective:
        if d.mode is Mode.FORCE and d.key in pinned:
            return AttrDirective(d.key, d.value, Mode.DEFAULT)
        return d

    def route(self, child, d: AttrDirective):
        key = d.key
        force = d.mode is Mode.FORCE
        if key == "layout":
            self.set_layout(d.value, force)
        elif key == "subplot":
            idx = int(d.value)
            if not 0 <= idx < len(self.spec.subplots):
                raise PlotError(f"recipe placed a series in missing subplot {idx}")
            child.subplot_index = idx
        elif key in DATA_CHANNELS:
            if force or getattr(child, key) is None:
                setattr(child, key, _channel_value(key, d.value))
        else:
            level = attribute_level(key)
            if level == "plot":
                target = self.spec.attrs
            elif level == "subplot":
                target = self.spec.subplots[child.subplot_index].attrs
            elif level == "axis":
                target = self.spec.subplots[child.subplot_index].axes[axis_of(key)].attrs
            else:
                child.attrs = apply_attr_directive(child.attrs, d)
                return
            if force or target.get(key, UNSET) is UNSET:
                target[key] = d.value

    def set_layout(self, value, force):
        from ..model import SubplotSpec, _layout_from

        if not force and not isinstance(self.spec.layout, lay.Leaf):
            return
        node = _layout_from(value)
        n = len(lay.leaves(node))
        if sorted(lay.leaves(node)) != list(range(n)):
            raise PlotError("layout leaves must be numbered 0..n-1")
        if n < len(self.spec.subplots):
            raise PlotError(f"recipe layout has {n} cells but the plot already has "
                            f"{len(self.spec.subplots)} subplots")
        self.spec.layout = node
        while len(self.spec.subplots) < n:
            self.spec.subplots.append(SubplotSpec())


def apply_recipes(registry, spec, trace: Trace | None = None, max_depth: int = MAX_DEPTH):
    """Expand every series of ``spec`` into primitive series; returns a new spec."""
    if spec.resolved:
        raise PlotError("recipes have already been applied to this plot")
    work = copy.deepcopy(spec)
    return _Expander(registry, work, trace, max_depth).run()
