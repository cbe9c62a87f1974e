"""Recipe-author API.

Everything a package needs in order to describe how its types (or a new
seriestype) should be plotted. This module depends only on the attribute
and value layers; it knows nothing about layout or backends.

A recipe is a pure function. User, plot and series recipes receive a
:class:`SeriesData` and the call-site attributes (read-only), and return a
list of :class:`RecipeOutput`, one per child series. Type recipes receive
a single element and return a plain number.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Mapping

from ..attributes import AttrMap, canonicalize_key
from ..values import UNSET


class RecipeKind(enum.Enum):
    USER = "user"
    TYPE = "type"
    PLOT = "plot"
    SERIES = "series"


class Mode(enum.Enum):
    FORCE = "force"  # overrides any call-site value
    DEFAULT = "default"  # yields to call-site values


@dataclass(frozen=True)
class AttrDirective:
    key: str
    value: Any
    mode: Mode = Mode.DEFAULT

    def __post_init__(self):
        object.__setattr__(self, "key", canonicalize_key(self.key, warn=False))


def force(key: str, value) -> AttrDirective:
    return AttrDirective(key, value, Mode.FORCE)


def default(key: str, value) -> AttrDirective:
    return AttrDirective(key, value, Mode.DEFAULT)


def apply_attr_directive(attrs: Mapping, d: AttrDirective) -> AttrMap:
    """Return a copy of ``attrs`` with the directive applied."""
    out = AttrMap(attrs)
    if d.mode is Mode.FORCE or out.get(d.key, UNSET) is UNSET:
        out[d.key] = d.value
    return out


@dataclass(frozen=True)
class ArrayOf:
    """Matcher for a sequence whose elements are all of ``element`` type."""

    element: type


@dataclass(frozen=True)
class SeriesData:
    """The data of the series a recipe is applied to."""

    x: Any = None
    y: Any = None
    z: Any = None
    xerror: Any = None
    yerror: Any = None
    fillrange: Any = None
    index: int = 0
    subplot: int = 0


@dataclass(frozen=True)
class RecipeOutput:
    """One child series: its data plus attribute directives.

    ``x``/``y``/``z`` may hold numbers or further domain values, in which
    case recipe dispatch continues on the child.
    """

    x: Any = None
    y: Any = None
    z: Any = None
    directives: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "directives", tuple(self.directives))


@dataclass(frozen=True)
class Recipe:
    kind: RecipeKind
    matcher: Any
    transform: Callable
    name: str = ""

    def __post_init__(self):
        if self.kind in (RecipeKind.PLOT, RecipeKind.SERIES):
            if not isinstance(self.matcher, str) or not self.matcher:
                raise ValueError(f"{self.kind.value} recipes match a seriestype name, got {self.matcher!r}")
        elif not isinstance(self.matcher, (type, ArrayOf)):
            raise ValueError(f"{self.kind.value} recipes match a type or ArrayOf(type), got {self.matcher!r}")
        if not self.name:
            m = self.matcher
            label = m if isinstance(m, str) else (
                f"{m.element.__name__}[]" if isinstance(m, ArrayOf) else m.__name__)
            object.__setattr__(self, "name", f"{self.kind.value}:{label}")


def _decorator(kind, matcher, name):
    def wrap(fn):
        return Recipe(kind, matcher, fn, name)
    return wrap


def user_recipe(matcher, name: str = ""):
    return _decorator(RecipeKind.USER, matcher, name)


def type_recipe(matcher: type, name: str = ""):
    return _decorator(RecipeKind.TYPE, matcher, name)


def plot_recipe(seriestype: str, name: str = ""):
    return _decorator(RecipeKind.PLOT, seriestype, name)


def series_recipe(seriestype: str, name: str = ""):
    return _decorator(RecipeKind.SERIES, seriestype, name)
