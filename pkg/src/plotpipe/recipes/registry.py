"""Recipe registry: lookup by domain type or by seriestype name."""

from __future__ import annotations

import threading
import warnings

from ..errors import RecipeReplacedWarning
from .base import ArrayOf, Recipe, RecipeKind

PRIMITIVES = frozenset({"path", "scatter", "shape", "heatmap-grid", "text-annotation"})


class RecipeRegistry:
    def __init__(self, primitives=PRIMITIVES):
        if not primitives:
            raise ValueError("primitive seriestype set must be non-empty")
        self.primitives = frozenset(primitives)
        self._recipes = {kind: {} for kind in RecipeKind}
        self._lock = threading.Lock()

    def register(self, recipe: Recipe):
        with self._lock:
            table = self._recipes[recipe.kind]
            if recipe.matcher in table:
                warnings.warn(f"replacing existing {recipe.kind.value} recipe for {recipe.matcher!r}",
                              RecipeReplacedWarning, stacklevel=3)
            table[recipe.matcher] = recipe
        return recipe

    def copy(self) -> RecipeRegistry:
        new = RecipeRegistry(self.primitives)
        for kind, table in self._recipes.items():
            new._recipes[kind] = dict(table)
        return new

    def recipes(self, kind: RecipeKind) -> dict:
        return dict(self._recipes[kind])

    def lookup_type(self, cls: type) -> Recipe | None:
        table = self._recipes[RecipeKind.TYPE]
        for base in cls.__mro__:
            if base in table:
                return table[base]
        return None

    def lookup_user(self, value) -> Recipe | None:
        table = self._recipes[RecipeKind.USER]
        if not table:
            return None
        if isinstance(value, tuple):
            types = {type(v) for v in value}
            if len(types) != 1:
                return None
            for base in types.pop().__mro__:
                hit = table.get(ArrayOf(base))
                if hit is not None:
                    return hit
            return None
        for base in type(value).__mro__:
            if base in table:
                return table[base]
        return None

    def lookup_plot(self, seriestype: str) -> Recipe | None:
        return self._recipes[RecipeKind.PLOT].get(seriestype)

    def lookup_series(self, seriestype: str) -> Recipe | None:
        return self._recipes[RecipeKind.SERIES].get(seriestype)

    def is_known_seriestype(self, seriestype) -> bool:
        return (seriestype in self.primitives
                or seriestype in self._recipes[RecipeKind.PLOT]
                or seriestype in self._recipes[RecipeKind.SERIES])


def register_recipe(reg: RecipeRegistry, r: Recipe):
    return reg.register(r)


_default = None
_default_lock = threading.Lock()


def default_registry() -> RecipeRegistry:
    """Registry holding the standard and demo recipes, built on first use."""
    global _default
    with _default_lock:
        if _default is None:
            from . import demo, std

            reg = RecipeRegistry()
            std.register_std_recipes(reg)
            demo.register_demo_recipes(reg)
            _default = reg
        return _default
