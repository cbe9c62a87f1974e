"""Deterministic example plots shared by golden, backend and round-trip tests."""

from __future__ import annotations

import datetime
import math
import random

import plotpipe as pp
from plotpipe.recipes.demo import Measurement, SampledSolution


def _rng():
    return random.Random(20240611)


def line():
    return pp.plot([1, 3, 2, 5, 4], c="steelblue", lw=2, label="series", title="line")


def scatter_gaps():
    return pp.scatter([1, 2, 3, 4, 5, 6], [2.0, None, 3.5, 1.0, math.nan, 4.0], marker="square",
                      markersize=5, label="points")


def bar():
    return pp.bar([1, 2, 3, 4], [3, 1, 4, 2], label="counts", ylabel="n")


def histogram():
    r = _rng()
    return pp.histogram([r.gauss(0, 1) for _ in range(500)], label="normal", xlabel="value")


def boxplot():
    r = _rng()
    xs, ys = [], []
    for g in (1, 2, 3):
        for _ in range(40):
            xs.append(g)
            ys.append(r.gauss(g, 0.5 * g))
    ys.append(9.0)
    xs.append(1)
    return pp.boxplot(xs, ys, title="groups")


def heatmap():
    z = [[math.sin(i / 3) * math.cos(j / 4) for j in range(12)] for i in range(8)]
    return pp.heatmap(pp.Matrix(z), colormap="viridis")


def functions():
    return pp.plot([math.sin, math.cos], 0, 2 * math.pi, label=["sin", "cos"], linestyle="dash")


def subplots():
    return pp.plot(pp.plot([1, 4, 9, 16], title="squares"), pp.scatter([3, 1, 2], title="points"),
                   pp.bar([2, 5, 3]), layout=(2, 2))


def log_axis():
    xs = [10 ** (i / 4) for i in range(13)]
    return pp.plot(xs, [x ** 1.5 for x in xs], xscale="log10", yscale="log10", marker="circle",
                   fillrange=1.0, fillalpha=0.3)


def showcase():
    ts = [0, 1, 2, 3, 4]
    prey = [Measurement(1.0 + 0.5 * i, 0.1 + 0.05 * i) for i in range(5)]
    pred = [Measurement(3.0 - 0.4 * i, 0.2) for i in range(5)]
    return pp.plot(SampledSolution(ts, [prey, pred], ("prey", "predator")), seriestype="scatter")


def dates():
    days = [datetime.date(2024, 1, d) for d in (1, 8, 15, 22, 29)]
    return pp.plot(days, [3, 5, 4, 6, 7])


def scatterhist():
    r = _rng()
    return pp.plot([r.random() for _ in range(60)], [r.gauss(0, 1) for _ in range(60)],
                   seriestype="scatterhist")


GOLDEN = {
    "line": line,
    "scatter_gaps": scatter_gaps,
    "bar": bar,
    "histogram": histogram,
    "boxplot": boxplot,
    "heatmap": heatmap,
    "functions": functions,
    "subplots": subplots,
    "log_axis": log_axis,
    "showcase": showcase,
}

ALL = {**GOLDEN, "dates": dates, "scatterhist": scatterhist, "empty": lambda: pp.plot()}
