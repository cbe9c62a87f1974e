"""Recipe-author API and the recursive recipe engine."""

from .base import (
    ArrayOf,
    AttrDirective,
    Mode,
    Recipe,
    RecipeKind,
    RecipeOutput,
    SeriesData,
    apply_attr_directive,
    default,
    force,
    plot_recipe,
    series_recipe,
    type_recipe,
    user_recipe,
)
from .engine import MAX_DEPTH, Trace, apply_recipes
from .registry import PRIMITIVES, RecipeRegistry, default_registry, register_recipe

__all__ = [
    "ArrayOf", "AttrDirective", "Mode", "Recipe", "RecipeKind", "RecipeOutput", "SeriesData",
    "apply_attr_directive", "default", "force", "plot_recipe", "series_recipe", "type_recipe",
    "user_recipe", "MAX_DEPTH", "Trace", "apply_recipes", "PRIMITIVES", "RecipeRegistry",
    "default_registry", "register_recipe",
]
