"""Interpretation of the positional arguments accepted by ``plot``.

Each accepted combination of argument kinds turns into a list of series
prototypes (or, for plots passed as arguments, a layout composition).
"""

from __future__ import annotations

import heapq
import itertools
import math
import numbers
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ArgumentError, InvalidRange, LengthMismatchError
from .values import DataColumn, Matrix, is_missing, sanitize_data

ACCEPTED_FORMS = """accepted argument forms:
  ()                          empty plot with axes
  (n: int)                    n empty series
  (y)                         one series, x = 1..len(y)
  (x, y)                      one series
  (Y: 2-D array)              one series per column, x = 1..rows
  (x, Y)                      one series per column of Y
  (X: 2-D array, y)           one series per column of X, y shared
  (f, x) / (x, f)             y = f applied to each x
  (f or [f, g, ...], lo, hi)  one series per function, adaptively sampled on [lo, hi]
  ([y1, f, ...])              one series per vector
  (x, [y1, f, ...])           one series per element, functions applied to x
  (plot, plot, ...)           layout with one cell per plot
  (obj) / (x, obj)            domain object dispatched through recipes"""

DEFAULT_MAX_POINTS = 200
DEFAULT_TOL = 1e-3


@dataclass
class SeriesPrototype:
    x: object = None
    y: object = None
    z: object = None
    attrs: dict = field(default_factory=dict)


@dataclass
class LayoutComposition:
    plots: tuple


def _is_number(v) -> bool:
    return isinstance(v, numbers.Real) or is_missing(v)


def _is_plot(v) -> bool:
    from .model import PlotSpec

    return isinstance(v, PlotSpec)


def _is_function(v) -> bool:
    return callable(v) and not isinstance(v, type) and not _is_plot(v)


def _is_sequence(v) -> bool:
    return isinstance(v, (list, tuple, range, np.ndarray, DataColumn))


def classify(arg, alone: bool = False) -> str:
    if _is_plot(arg):
        return "plot"
    if isinstance(arg, bool):
        raise ArgumentError(f"cannot plot a bare boolean\n{ACCEPTED_FORMS}")
    if isinstance(arg, (numbers.Integral, np.integer)) and alone:
        return "count"
    if isinstance(arg, numbers.Real):
        return "scalar"
    if isinstance(arg, str):
        raise ArgumentError(f"cannot plot a string argument {arg!r}\n{ACCEPTED_FORMS}")
    if _is_function(arg):
        return "function"
    if isinstance(arg, Matrix):
        return "matrix"
    if isinstance(arg, np.ndarray):
        if arg.ndim == 1:
            return "vector"
        if arg.ndim == 2:
            return "matrix"
        raise ArgumentError(f"cannot plot a {arg.ndim}-dimensional array\n{ACCEPTED_FORMS}")
    if isinstance(arg, (DataColumn, range)):
        return "vector"
    if isinstance(arg, (list, tuple)):
        items = list(arg)
        if items and all(_is_function(v) for v in items):
            return "functions"
        if items and all(_is_function(v) or _is_sequence(v) for v in items):
            return "mixed"
        if any(_is_function(v) or _is_sequence(v) or _is_plot(v) for v in items):
            raise ArgumentError(f"cannot mix numbers with vectors, functions or plots in one list\n{ACCEPTED_FORMS}")
        return "vector"
    return "domain"


def _column(v):
    """Numeric vectors become sanitized DataColumns; others stay raw payloads."""
    if isinstance(v, DataColumn):
        return sanitize_data(v)
    items = v.tolist() if isinstance(v, np.ndarray) else list(v)
    if all(_is_number(i) for i in items):
        return sanitize_data(items)
    return tuple(items)


def _length(v) -> int:
    return len(v.values) if isinstance(v, DataColumn) else len(v)


def _raw_len(v) -> int:
    return len(v)


def _default_x(n: int) -> DataColumn:
    return DataColumn([float(i) for i in range(1, n + 1)])


def _pair(x, y, xname="x", yname="y") -> SeriesPrototype:
    nx, ny = _raw_len(x), _raw_len(y)
    if nx != ny:
        raise LengthMismatchError(f"{xname} has length {nx} but {yname} has length {ny}")
    xc, yc = _column(x), _column(y)
    if isinstance(yc, DataColumn) and len(yc) == 0:
        xc = DataColumn()
    return SeriesPrototype(x=xc, y=yc)


def _matrix_columns(m) -> list[list]:
    if isinstance(m, Matrix):
        rows = m.rows
    else:
        rows = np.asarray(m, dtype=float).tolist()
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        from .errors import RaggedMatrix
        raise RaggedMatrix("matrix rows have different lengths")
    return [[r[j] for r in rows] for j in range(ncols)]


def _apply(f: Callable, xs) -> list[float]:
    out = []
    for x in xs:
        out.append(_safe_eval(f, x))
    return out


def _safe_eval(f, x) -> float:
    try:
        y = float(f(x))
    except (ArithmeticError, ValueError, TypeError):
        return math.nan
    return y if math.isfinite(y) else math.nan


def interpret_args(args, seriestype=None):
    """Turn positional ``plot`` arguments into series prototypes.

    Returns a list of SeriesPrototype, or a LayoutComposition when every
    argument is itself a plot. Raises ArgumentError for anything outside
    the accepted forms.
    """
    args = tuple(args)
    if not args:
        return []
    kinds = tuple(classify(a, alone=len(args) == 1) for a in args)

    if all(k == "plot" for k in kinds):
        return LayoutComposition(args)
    if "plot" in kinds:
        raise ArgumentError(f"plots can only be combined with other plots\n{ACCEPTED_FORMS}")

    if seriestype == "heatmap":
        return _heatmap_args(args, kinds)

    if kinds == ("count",):
        n = int(args[0])
        if n < 0:
            raise ArgumentError(f"series count must be non-negative, got {n}")
        return [SeriesPrototype(x=DataColumn(), y=DataColumn()) for _ in range(n)]
    if kinds == ("vector",):
        y = _column(args[0])
        x = _default_x(_raw_len(args[0])) if not (isinstance(y, DataColumn) and len(y) == 0) else DataColumn()
        return [SeriesPrototype(x=x, y=y)]
    if kinds == ("domain",):
        return [SeriesPrototype(y=args[0])]
    if kinds in (("vector", "vector"), ("vector", "domain")):
        if kinds[1] == "domain":
            return [SeriesPrototype(x=_column(args[0]), y=args[1])]
        return [_pair(args[0], args[1])]
    if kinds == ("matrix",):
        cols = _matrix_columns(args[0])
        return [_pair(_default_x(len(c)), c, "x", f"column {j + 1}") for j, c in enumerate(cols)]
    if kinds == ("vector", "matrix"):
        cols = _matrix_columns(args[1])
        return [_pair(args[0], c, "x", f"column {j + 1} of y") for j, c in enumerate(cols)]
    if kinds == ("matrix", "vector"):
        cols = _matrix_columns(args[0])
        return [_pair(c, args[1], f"column {j + 1} of x", "y") for j, c in enumerate(cols)]
    if kinds == ("matrix", "matrix"):
        xc, yc = _matrix_columns(args[0]), _matrix_columns(args[1])
        if len(xc) != len(yc):
            raise LengthMismatchError(f"x has {len(xc)} columns but y has {len(yc)} columns")
        return [_pair(a, b, f"column {j + 1} of x", f"column {j + 1} of y")
                for j, (a, b) in enumerate(zip(xc, yc))]
    if kinds in (("function", "vector"), ("vector", "function")):
        f, x = (args[0], args[1]) if kinds[0] == "function" else (args[1], args[0])
        xc = _column(x)
        return [SeriesPrototype(x=xc, y=DataColumn(_apply(f, xc.values)))]
    if kinds in (("function", "scalar", "scalar"), ("functions", "scalar", "scalar")):
        fs = [args[0]] if kinds[0] == "function" else list(args[0])
        lo, hi = float(args[1]), float(args[2])
        out = []
        for f in fs:
            xs, ys = sample_function(f, lo, hi)
            out.append(SeriesPrototype(x=xs, y=ys))
        return out
    if kinds == ("mixed",):
        out = []
        for j, item in enumerate(args[0]):
            if _is_function(item):
                raise ArgumentError(f"element {j + 1} is a function but no x values were given\n{ACCEPTED_FORMS}")
            out.extend(interpret_args((item,)))
        return out
    if kinds in (("vector", "mixed"), ("vector", "functions")):
        x = args[0]
        out = []
        for j, item in enumerate(args[1]):
            if _is_function(item):
                xc = _column(x)
                out.append(SeriesPrototype(x=xc, y=DataColumn(_apply(item, xc.values))))
            else:
                out.append(_pair(x, item, "x", f"element {j + 1}"))
        return out
    raise ArgumentError(f"cannot interpret arguments of kinds {kinds}\n{ACCEPTED_FORMS}")


def _heatmap_args(args, kinds):
    if kinds == ("matrix",) or kinds == ("mixed",):
        z = Matrix(_rows(args[0]))
        nr, nc = z.shape
        return [SeriesPrototype(x=_default_x(nc), y=_default_x(nr), z=z)]
    if kinds in (("vector", "vector", "matrix"), ("vector", "vector", "mixed")):
        z = Matrix(_rows(args[2]))
        nr, nc = z.shape
        x, y = _column(args[0]), _column(args[1])
        if len(x) != nc or len(y) != nr:
            raise LengthMismatchError(f"heatmap z is {nr}x{nc} but x has length {len(x)} and y has length {len(y)}")
        return [SeriesPrototype(x=x, y=y, z=z)]
    raise ArgumentError(f"heatmap expects (z) or (x, y, z) with a 2-D z, got kinds {kinds}")


def _rows(m):
    if isinstance(m, Matrix):
        return m.rows
    rows = [list(r) for r in (m.tolist() if isinstance(m, np.ndarray) else m)]
    if not rows or not rows[0]:
        raise ArgumentError("heatmap z must be non-empty")
    if any(len(r) != len(rows[0]) for r in rows):
        from .errors import RaggedMatrix
        raise RaggedMatrix("heatmap z rows have different lengths")
    return rows


def sample_function(f: Callable, lo: float, hi: float, max_points: int = DEFAULT_MAX_POINTS,
                    tol: float = DEFAULT_TOL, seed: int = 0) -> tuple[DataColumn, DataColumn]:
    """Sample ``f`` on [lo, hi] with an adaptive grid.

    Starts from the two endpoints and bisects any interval whose midpoint,
    or a random interior probe, deviates from the chord by more than
    ``tol`` times the range of values seen so far. Intervals are refined
    worst-first until all pass or ``max_points`` is reached. Non-finite
    values become NaN gaps.
    """
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise InvalidRange(f"invalid sampling range ({lo}, {hi})")
    if max_points < 2:
        raise ValueError("max_points must be at least 2")
    rng = random.Random(seed)
    vmin, vmax = math.inf, -math.inf
    min_width = (hi - lo) * 1e-12
    gap_width = (hi - lo) / 1024

    def ev(x):
        nonlocal vmin, vmax
        y = _safe_eval(f, x)
        if not math.isnan(y):
            vmin, vmax = min(vmin, y), max(vmax, y)
        return y

    def assess(a, fa, b, fb):
        m = 0.5 * (a + b)
        fm = ev(m)
        u = a + rng.uniform(0.25, 0.75) * (b - a)
        fu = ev(u)
        ends = (fa, fb, fm, fu)
        nan_count = sum(math.isnan(v) for v in ends)
        if nan_count == len(ends):
            dev = 0.0
        elif nan_count:
            dev = math.inf if b - a > gap_width else 0.0
        else:
            chord_m = 0.5 * (fa + fb)
            chord_u = fa + (fb - fa) * (u - a) / (b - a)
            dev = max(abs(fm - chord_m), abs(fu - chord_u))
        return (-dev, next(counter), a, fa, b, fb, m, fm)

    counter = itertools.count()
    points = {lo: ev(lo), hi: ev(hi)}
    heap = [assess(lo, points[lo], hi, points[hi])]
    while heap and len(points) < max_points:
        neg_dev, _, a, fa, b, fb, m, fm = heapq.heappop(heap)
        vrange = vmax - vmin if vmax >= vmin else 0.0
        if -neg_dev <= tol * vrange:
            break
        if b - a <= min_width:
            continue
        points[m] = fm
        heapq.heappush(heap, assess(a, fa, m, fm))
        heapq.heappush(heap, assess(m, fm, b, fb))
    xs = sorted(points)
    return DataColumn(xs), DataColumn([points[x] for x in xs])
