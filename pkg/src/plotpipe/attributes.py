"""Attribute keys: aliases, hierarchy levels, and the default-value system.

Attributes live at four levels (plot, subplot, axis, series). Keyword
arguments arrive under any accepted alias and are canonicalized before
they are stored. Values that the user did not give are filled in later by
:func:`apply_defaults`, which evaluates :class:`DefaultRule` objects; a
rule either supplies a constant or points at another attribute, and may
be restricted to particular seriestypes.
"""

from __future__ import annotations

import copy
import threading
import warnings
from collections import UserDict
from dataclasses import dataclass
from typing import Any

from .colors import DEFAULT_PALETTE, Palette, resolve_color
from .errors import CyclicDefault, UnknownAttributeWarning
from .values import AUTO, UNSET, normalize_attr_value, values_equal

AXIS_LETTERS = ("x", "y")

# canonical key -> constant default, or Ref to another key
_PLOT_DEFAULTS = {
    "size": (600.0, 400.0),
    "dpi": 100,
    "windowtitle": "plotpipe",
    "background": "white",
    "fontsize": 10.0,
    "palette": "default",
}
_SUBPLOT_DEFAULTS = {
    "title": "",
    "legend": "topright",
    "background_inside": None,  # Ref("background"), filled below
    "foreground": "black",
    "margin": AUTO,
    "titlefontsize": 12.0,
}
_AXIS_DEFAULTS = {
    "limits": AUTO,
    "scale": "linear",
    "label": "",
    "ticks": AUTO,
    "grid": True,
    "flip": False,
}
_SERIES_DEFAULTS = {
    "seriestype": "path",
    "seriescolor": AUTO,
    "linecolor": None,  # Ref("seriescolor")
    "fillcolor": None,
    "markercolor": None,
    "markerstrokecolor": "black",
    "linewidth": 1.0,
    "linestyle": "solid",
    "marker": "none",
    "markersize": 4.0,
    "fillalpha": 1.0,
    "label": AUTO,
    "primary": True,
    "bar_width": AUTO,
    "bins": AUTO,
    "climits": AUTO,
    "colormap": "viridis",
    "texts": (),
}

#: Keys that carry data rather than style; they live on the series itself.
DATA_CHANNELS = ("xerror", "yerror", "fillrange")
#: Keys consumed during construction and never stored in an attribute map.
CONSTRUCTION_KEYS = {"layout": "plot", "subplot": "series"}

COLOR_KEYS = frozenset({
    "seriescolor", "linecolor", "fillcolor", "markercolor", "markerstrokecolor",
    "background", "background_inside", "foreground",
})

_LEVELS: dict[str, str] = {}
for _k in _PLOT_DEFAULTS:
    _LEVELS[_k] = "plot"
for _k in _SUBPLOT_DEFAULTS:
    _LEVELS[_k] = "subplot"
for _letter in AXIS_LETTERS:
    for _k in _AXIS_DEFAULTS:
        _LEVELS[_letter + _k] = "axis"
for _k in _SERIES_DEFAULTS:
    _LEVELS[_k] = "series"
for _k in DATA_CHANNELS:
    _LEVELS[_k] = "series"
_LEVELS.update(CONSTRUCTION_KEYS)

_ALIASES = {
    "c": "seriescolor", "color": "seriescolor", "colour": "seriescolor",
    "seriescolour": "seriescolor",
    "lc": "linecolor", "linecolour": "linecolor",
    "fc": "fillcolor", "fillcolour": "fillcolor",
    "mc": "markercolor", "markercolour": "markercolor",
    "msc": "markerstrokecolor",
    "lw": "linewidth", "width": "linewidth", "w": "linewidth",
    "ls": "linestyle", "style": "linestyle",
    "m": "marker", "shape": "marker", "markershape": "marker",
    "ms": "markersize", "msize": "markersize",
    "lab": "label",
    "st": "seriestype", "t": "seriestype", "typ": "seriestype",
    "falpha": "fillalpha",
    "nbins": "bins",
    "bar_widths": "bar_width", "barwidth": "bar_width",
    "clims": "climits", "clim": "climits",
    "cmap": "colormap",
    "annotations": "texts",
    "yerr": "yerror", "yerrorbar": "yerror",
    "xerr": "xerror", "xerrorbar": "xerror",
    "fill": "fillrange", "fillto": "fillrange",
    "leg": "legend",
    "bg": "background", "background_color": "background",
    "bg_inside": "background_inside", "background_color_inside": "background_inside",
    "fg": "foreground",
    "titlefont": "titlefontsize",
    "sp": "subplot",
}
for _letter in AXIS_LETTERS:
    _ALIASES.update({
        _letter + "lims": _letter + "limits", _letter + "lim": _letter + "limits",
        _letter + "lab": _letter + "label", _letter + "guide": _letter + "label",
        _letter + "tick": _letter + "ticks",
        _letter + "axis": _letter + "scale",
    })

_registry_lock = threading.Lock()


def _rebuild_table() -> dict[str, str]:
    table = dict(_ALIASES)
    for key in _LEVELS:
        table[key] = key
    return table


ALIASES: dict[str, str] = _rebuild_table()


def is_known(key: str) -> bool:
    return key in _LEVELS


def _lookup(key: str) -> str | None:
    hit = ALIASES.get(key)
    if hit is not None:
        return hit
    if key.endswith("s") and len(key) > 1:
        return ALIASES.get(key[:-1])
    return None


def canonicalize_key(key: str, warn: bool = True) -> str:
    """Return the canonical spelling of an attribute key.

    Tries an exact alias hit, then the singular of a plural spelling.
    Unknown keys are returned unchanged with an UnknownAttributeWarning;
    they are passed on to recipes as custom attributes.
    """
    if not key:
        raise ValueError("attribute key must be non-empty")
    hit = _lookup(key)
    if hit is not None:
        return hit
    if warn:
        warnings.warn(f"unknown attribute {key!r}", UnknownAttributeWarning, stacklevel=3)
    return key


def attribute_level(key: str) -> str:
    """Level of a canonical key. Unknown keys are treated as series-level."""
    return _LEVELS.get(key, "series")


def axis_of(key: str) -> str:
    return key[0]


def register_attribute(key: str, level: str, default: Any = UNSET, aliases=()):
    """Add a new canonical attribute (and aliases) at startup time."""
    global ALIASES
    if level not in ("plot", "subplot", "series"):
        raise ValueError(f"cannot register attributes at level {level!r}")
    with _registry_lock:
        _LEVELS[key] = level
        table = {"plot": _PLOT_DEFAULTS, "subplot": _SUBPLOT_DEFAULTS, "series": _SERIES_DEFAULTS}[level]
        table[key] = default
        for a in aliases:
            _ALIASES[a] = key
        ALIASES = _rebuild_table()
        if default is not UNSET:
            DEFAULT_RULES[level].append(DefaultRule(key, normalize_attr_value(default)))


class AttrMap(UserDict):
    """Ordered mapping from canonical attribute keys to attribute values.

    Storing an alias raises KeyError; values are normalized on the way in.
    """

    def __setitem__(self, key, value):
        if not isinstance(key, str) or not key:
            raise KeyError(f"attribute keys must be non-empty strings, got {key!r}")
        canon = _lookup(key)
        if canon is not None and canon != key:
            raise KeyError(f"non-canonical attribute key {key!r} (use {canon!r})")
        self.data[key] = normalize_attr_value(value)

    def __eq__(self, other):
        if isinstance(other, UserDict):
            other = other.data
        if not isinstance(other, dict):
            return NotImplemented
        return values_equal(self.data, other)

    __hash__ = None

    def __repr__(self):
        return f"AttrMap({self.data!r})"

    def is_set(self, key) -> bool:
        return self.data.get(key, UNSET) is not UNSET


def attrmap_from_kwargs(kwargs: dict, warn: bool = True) -> AttrMap:
    out = AttrMap()
    for k, v in kwargs.items():
        out[canonicalize_key(k, warn=warn)] = v
    return out


@dataclass(frozen=True)
class Ref:
    """Default that copies the value of another attribute."""

    key: str


@dataclass(frozen=True)
class DefaultRule:
    attribute: str
    fallback: Any
    condition: frozenset | None = None

    def applies(self, seriestype) -> bool:
        return self.condition is None or seriestype in self.condition


def _rules_from(defaults: dict, refs: dict) -> list[DefaultRule]:
    rules = []
    for key, value in defaults.items():
        if key in refs:
            rules.append(DefaultRule(key, refs[key]))
        else:
            rules.append(DefaultRule(key, normalize_attr_value(value)))
    return rules


DEFAULT_RULES: dict[str, list[DefaultRule]] = {
    "plot": _rules_from(_PLOT_DEFAULTS, {}),
    "subplot": _rules_from(_SUBPLOT_DEFAULTS, {"background_inside": Ref("background")}),
    "axis": _rules_from(_AXIS_DEFAULTS, {}),
    "series": _rules_from(_SERIES_DEFAULTS, {
        "linecolor": Ref("seriescolor"),
        "fillcolor": Ref("seriescolor"),
        "markercolor": Ref("seriescolor"),
    }) + [
        DefaultRule("linecolor", "black", frozenset({"bar"})),
        DefaultRule("marker", "circle", frozenset({"scatter"})),
    ],
}


def _select_rules(rules, seriestype=None, prefix="") -> dict[str, DefaultRule]:
    chosen: dict[str, DefaultRule] = {}
    for rule in rules:
        if not rule.applies(seriestype):
            continue
        key = prefix + rule.attribute
        current = chosen.get(key)
        if current is None or (current.condition is None and rule.condition is not None):
            chosen[key] = rule
    return chosen


def _fill(attrs: AttrMap, rules: dict[str, DefaultRule], parents=(), prefix=""):
    """Fill unset keys of ``attrs`` from ``rules`` in dependency order."""
    state: dict[str, int] = {}

    def visit(key, chain):
        mark = state.get(key)
        if mark == 2:
            return
        if mark == 1:
            raise CyclicDefault("cyclic default rules: " + " -> ".join(chain + [key]))
        state[key] = 1
        rule = rules.get(key)
        if rule is not None and not attrs.is_set(key):
            fb = rule.fallback
            if isinstance(fb, Ref):
                target = prefix + fb.key
                if target in rules:
                    visit(target, chain + [key])
                    attrs[key] = attrs[target]
                else:
                    for parent in parents:
                        if parent.is_set(fb.key):
                            attrs[key] = parent[fb.key]
                            break
                    else:
                        raise CyclicDefault(f"default for {key!r} refers to unknown attribute {fb.key!r}")
            else:
                attrs[key] = copy.deepcopy(fb)
        state[key] = 2

    for key in rules:
        visit(key, [])


def check_rules_acyclic():
    """Raise CyclicDefault if any level's reference graph has a cycle."""
    seriestypes = {None}
    for rule in DEFAULT_RULES["series"]:
        if rule.condition:
            seriestypes |= set(rule.condition)
    for level, rules in DEFAULT_RULES.items():
        for st in seriestypes if level == "series" else [None]:
            _fill(AttrMap(), _select_rules(rules, st), parents=(_dummy_parent(),))


def _dummy_parent():
    m = AttrMap()
    for k in list(_PLOT_DEFAULTS) + list(_SUBPLOT_DEFAULTS):
        m[k] = 0
    return m


def apply_defaults(spec):
    """Return a copy of ``spec`` with every unset attribute filled in.

    Levels are processed top-down so that subplot rules can refer to plot
    attributes. Seriestype-conditioned rules win over unconditioned ones,
    and values the user gave are never touched.
    """
    spec = copy.deepcopy(spec)
    _fill(spec.attrs, _select_rules(DEFAULT_RULES["plot"]))
    for sp in spec.subplots:
        _fill(sp.attrs, _select_rules(DEFAULT_RULES["subplot"]), parents=(spec.attrs,))
        for letter, axis in sp.axes.items():
            _fill(axis.attrs, _select_rules(DEFAULT_RULES["axis"], prefix=letter),
                  parents=(sp.attrs, spec.attrs), prefix=letter)
    for s in spec.series:
        st = s.attrs.get("seriestype", UNSET)
        if st is UNSET:
            s.attrs["seriestype"] = st = "path"
        _fill(s.attrs, _select_rules(DEFAULT_RULES["series"], st))
    return spec


def resolve_auto(spec, palette: Palette | None = None):
    """Replace AUTO colors and labels with concrete values (in place).

    Colors index the palette per subplot, counting primary series only;
    a non-primary series reuses the index of the preceding primary one.
    Labels default to ``y1, y2, ...`` over all primary series.
    """
    if palette is None:
        palette = DEFAULT_PALETTE if spec.attrs.get("palette", "default") == "default" else Palette(
            "custom", tuple(resolve_color(c) for c in spec.attrs["palette"]))
    for key in ("background",):
        if key in spec.attrs:
            spec.attrs[key] = resolve_color(spec.attrs[key], palette)
    for sp in spec.subplots:
        for key in ("background_inside", "foreground"):
            if key in sp.attrs:
                sp.attrs[key] = resolve_color(sp.attrs[key], palette)
    per_subplot: dict[int, int] = {}
    label_index = 0
    for s in spec.series:
        primary = s.attrs.get("primary", True)
        idx = per_subplot.get(s.subplot_index, 0)
        if primary or idx == 0:
            idx += 1
            per_subplot[s.subplot_index] = idx
        if primary:
            label_index += 1
        if s.attrs.get("label") is AUTO:
            s.attrs["label"] = f"y{label_index}" if primary else ""
        if "seriescolor" in s.attrs:
            s.attrs["seriescolor"] = resolve_color(s.attrs["seriescolor"], palette, idx)
        base = s.attrs.get("seriescolor")
        for key in COLOR_KEYS:
            if key == "seriescolor" or key not in s.attrs:
                continue
            v = s.attrs[key]
            if v is AUTO and base is not None:
                s.attrs[key] = base
            elif isinstance(v, tuple) and v and not isinstance(v[0], float):
                s.attrs[key] = tuple(resolve_color(c, palette, idx) for c in v)
            else:
                s.attrs[key] = resolve_color(v, palette, idx)
    return spec
