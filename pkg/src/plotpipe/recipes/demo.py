"""Example domain types with recipes, written only against the recipe API.

``Measurement`` knows nothing about ``SampledSolution`` and vice versa;
plotting a solution of measurements composes the two recipes.
"""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass

from .base import ArrayOf, RecipeOutput, default, force, plot_recipe, type_recipe, user_recipe


@dataclass(frozen=True)
class Measurement:
    """A value with a symmetric uncertainty."""

    value: float
    uncertainty: float = 0.0

    def __post_init__(self):
        if not self.uncertainty >= 0:
            raise ValueError(f"uncertainty must be non-negative, got {self.uncertainty}")


@dataclass(frozen=True)
class SampledSolution:
    """Time series of several variables, e.g. the output of an ODE solver."""

    timestamps: tuple
    states: tuple
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "timestamps", tuple(float(t) for t in self.timestamps))
        object.__setattr__(self, "states", tuple(tuple(s) for s in self.states))
        labels = tuple(self.labels) or tuple(f"u{i + 1}" for i in range(len(self.states)))
        if len(labels) != len(self.states):
            raise ValueError(f"{len(labels)} labels for {len(self.states)} variables")
        object.__setattr__(self, "labels", labels)
        n = len(self.timestamps)
        for i, s in enumerate(self.states):
            if len(s) != n:
                raise ValueError(f"variable {i + 1} has {len(s)} states for {n} timestamps")


def _measurements(v) -> bool:
    return isinstance(v, tuple) and bool(v) and all(isinstance(m, Measurement) for m in v)


@user_recipe(ArrayOf(Measurement))
def measurement_recipe(data, attrs):
    x, y, directives = data.x, data.y, []
    if _measurements(y):
        directives.append(force("yerror", [m.uncertainty for m in y]))
        y = [m.value for m in y]
    if _measurements(x):
        directives.append(force("xerror", [m.uncertainty for m in x]))
        x = [m.value for m in x]
    return [RecipeOutput(x, y, data.z, directives)]


@user_recipe(SampledSolution)
def solution_recipe(data, attrs):
    sol = data.y
    return [RecipeOutput(sol.timestamps, states, None, [default("label", label), default("xlabel", "t")])
            for states, label in zip(sol.states, sol.labels)]


@type_recipe(datetime.date)
def date_recipe(d):
    return float(d.toordinal())


@plot_recipe("scatterhist")
def scatterhist_recipe(data, attrs):
    """Scatter of (x, y) next to a histogram of y."""
    ys = [v for v in data.y if math.isfinite(v)]
    return [
        RecipeOutput(data.x, data.y, None,
                     [force("layout", (1, 2)), force("subplot", 0), force("seriestype", "scatter")]),
        RecipeOutput(None, ys, None,
                     [force("subplot", 1), force("seriestype", "histogram"), force("label", "")]),
    ]


DEMO_RECIPES = (measurement_recipe, solution_recipe, date_recipe, scatterhist_recipe)


def register_demo_recipes(reg):
    for r in DEMO_RECIPES:
        reg.register(r)
