"""Standard series recipes: bar, histogram, boxplot, heatmap and error bars.

None of these need backend support; each lowers to the primitive
seriestypes (shape, path, scatter, heatmap-grid).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import EmptyData, LengthMismatchError, RaggedMatrix
from ..values import AUTO, UNSET, DataColumn, Matrix
from .base import RecipeOutput, default, force, series_recipe

NAN = math.nan
BAR_FRACTION = 0.8
WHISKER_FACTOR = 1.5
CAP_FRACTION = 0.3


def _floats(col) -> list[float]:
    if col is None:
        return []
    if isinstance(col, DataColumn):
        return list(col.values)
    return [float(v) for v in col]


def _finite(values) -> list[float]:
    return [v for v in values if math.isfinite(v)]


def _unset(v) -> bool:
    return v is None or v is AUTO or v is UNSET


def min_spacing(xs) -> float | None:
    """Smallest positive gap between sorted distinct finite values."""
    pts = sorted(set(_finite(xs)))
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    return min(gaps) if gaps else None


def _widths(xs, width, n) -> list[float]:
    if _unset(width):
        gap = min_spacing(xs)
        return [BAR_FRACTION * (gap if gap is not None else 1.0)] * n
    if isinstance(width, (tuple, list)):
        if len(width) != n:
            raise LengthMismatchError(f"bar_width has {len(width)} entries for {n} bars")
        return [float(w) for w in width]
    return [float(width)] * n


def bar_recipe(x, y, attrs) -> RecipeOutput:
    """One closed rectangle per bar, from a zero baseline, separated by NaN."""
    xs, ys = _floats(x), _floats(y)
    if len(xs) != len(ys):
        raise LengthMismatchError(f"bar x has length {len(xs)} but y has length {len(ys)}")
    widths = _widths(xs, attrs.get("bar_width", AUTO), len(xs))
    px, py = [], []
    for xi, yi, w in zip(xs, ys, widths):
        if not (math.isfinite(xi) and math.isfinite(yi)):
            continue
        if px:
            px.append(NAN)
            py.append(NAN)
        lo, hi = xi - w / 2, xi + w / 2
        px += [lo, lo, hi, hi, lo]
        py += [0.0, yi, yi, 0.0, 0.0]
    return RecipeOutput(DataColumn(px), DataColumn(py), None,
                        [force("seriestype", "shape"), default("linecolor", "black")])


@dataclass(frozen=True)
class HistogramSpec:
    edges: tuple
    counts: tuple

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])):
            raise ValueError("histogram edges must be strictly increasing")
        if len(self.counts) != len(self.edges) - 1:
            raise ValueError("need one count per bin")


def _type7(sorted_vals, p: float) -> float:
    n = len(sorted_vals)
    h = (n - 1) * p
    lo = math.floor(h)
    if lo + 1 >= n:
        return sorted_vals[-1]
    return sorted_vals[lo] + (h - lo) * (sorted_vals[lo + 1] - sorted_vals[lo])


def _auto_bin_count(vals) -> int:
    n = len(vals)
    s = sorted(vals)
    iqr = _type7(s, 0.75) - _type7(s, 0.25)
    span = s[-1] - s[0]
    if iqr > 0:
        h = 2 * iqr / n ** (1 / 3)
        return max(1, min(10_000, math.ceil(span / h)))
    return math.ceil(math.log2(n)) + 1


def histogram_bins(values, bins=AUTO) -> HistogramSpec:
    """Bin finite values; bins is an edge list, a bin count, or AUTO.

    AUTO uses the Freedman-Diaconis width, falling back to Sturges' rule
    when the interquartile range is zero. Bins are right-open except the
    last, which is closed.
    """
    vals = _finite(_floats(values))
    if not vals:
        raise EmptyData("histogram needs at least one finite value")
    if isinstance(bins, (tuple, list, np.ndarray)):
        edges = [float(e) for e in bins]
        if len(edges) < 2:
            raise ValueError("explicit bin edges need at least two entries")
    else:
        lo, hi = min(vals), max(vals)
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        k = _auto_bin_count(vals) if _unset(bins) else int(bins)
        if k < 1:
            raise ValueError(f"bin count must be positive, got {k}")
        edges = np.linspace(lo, hi, k + 1).tolist()
    counts, _ = np.histogram(vals, bins=np.asarray(edges))
    return HistogramSpec(tuple(edges), tuple(int(c) for c in counts))


def histogram_recipe(values, attrs) -> RecipeOutput:
    h = histogram_bins(values, attrs.get("bins", AUTO))
    centers = [(a + b) / 2 for a, b in zip(h.edges, h.edges[1:])]
    widths = tuple(b - a for a, b in zip(h.edges, h.edges[1:]))
    return RecipeOutput(DataColumn(centers), DataColumn([float(c) for c in h.counts]), None,
                        [force("seriestype", "bar"), force("bar_width", widths)])


@dataclass(frozen=True)
class BoxStats:
    q1: float
    median: float
    q3: float
    whisker_lo: float
    whisker_hi: float
    outliers: tuple = ()


def box_stats(values) -> BoxStats:
    """Quartiles by linear interpolation between order statistics (type 7).

    Whiskers reach the most extreme data within 1.5 IQR of the box;
    everything beyond is an outlier.
    """
    s = sorted(_finite(_floats(values)))
    if not s:
        raise EmptyData("boxplot group has no finite values")
    q1, med, q3 = _type7(s, 0.25), _type7(s, 0.5), _type7(s, 0.75)
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - WHISKER_FACTOR * iqr, q3 + WHISKER_FACTOR * iqr
    inside = [v for v in s if lo_fence <= v <= hi_fence]
    wlo = min(min(inside), q1)
    whi = max(max(inside), q3)
    outliers = tuple(v for v in s if v < lo_fence or v > hi_fence)
    return BoxStats(q1, med, q3, wlo, whi, outliers)


def _groups(x, y, ordinal):
    xs, ys = _floats(x), _floats(y)
    if len(xs) != len(ys):
        raise LengthMismatchError(f"boxplot x has length {len(xs)} but y has length {len(ys)}")
    if not xs or len(set(xs)) == len(xs):
        return [(float(ordinal + 1), ys)]
    grouped: dict[float, list] = {}
    for xi, yi in zip(xs, ys):
        grouped.setdefault(xi, []).append(yi)
    return sorted(grouped.items())


def boxplot_recipe(groups, attrs) -> list[RecipeOutput]:
    """``groups`` is a list of (position, values) pairs."""
    positions = [p for p, _ in groups]
    width = _widths(positions, attrs.get("bar_width", AUTO), len(groups))
    stats = [box_stats(v) for _, v in groups]
    box_x, box_y, med_x, med_y, wh_x, wh_y, out_x, out_y = ([] for _ in range(8))

    def seg(xs, ys, pts):
        if xs:
            xs.append(NAN)
            ys.append(NAN)
        for px, py in pts:
            xs.append(px)
            ys.append(py)

    for p, w, st in zip(positions, width, stats):
        lo, hi = p - w / 2, p + w / 2
        cap = CAP_FRACTION * w / 2
        seg(box_x, box_y, [(lo, st.q1), (lo, st.q3), (hi, st.q3), (hi, st.q1), (lo, st.q1)])
        seg(med_x, med_y, [(lo, st.median), (hi, st.median)])
        seg(wh_x, wh_y, [(p, st.q3), (p, st.whisker_hi)])
        seg(wh_x, wh_y, [(p - cap, st.whisker_hi), (p + cap, st.whisker_hi)])
        seg(wh_x, wh_y, [(p, st.q1), (p, st.whisker_lo)])
        seg(wh_x, wh_y, [(p - cap, st.whisker_lo), (p + cap, st.whisker_lo)])
        out_x += [p] * len(st.outliers)
        out_y += list(st.outliers)

    aux = [force("primary", False), default("linecolor", "black")]
    out = [
        RecipeOutput(DataColumn(box_x), DataColumn(box_y), None,
                     [force("seriestype", "shape"), default("linecolor", "black")]),
        RecipeOutput(DataColumn(med_x), DataColumn(med_y), None, [force("seriestype", "path"), *aux]),
        RecipeOutput(DataColumn(wh_x), DataColumn(wh_y), None, [force("seriestype", "path"), *aux]),
    ]
    if out_x:
        out.append(RecipeOutput(DataColumn(out_x), DataColumn(out_y), None,
                                [force("seriestype", "scatter"), default("marker", "circle"), *aux]))
    return out


def normalize_z(z: Matrix, climits=AUTO) -> Matrix:
    """Map cell values linearly onto [0, 1]; NaN cells stay NaN."""
    rows = z.rows
    if not rows or not rows[0]:
        raise EmptyData("heatmap needs a non-empty matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise RaggedMatrix("heatmap z rows have different lengths")
    finite = [v for r in rows for v in r if math.isfinite(v)]
    if _unset(climits):
        lo, hi = (min(finite), max(finite)) if finite else (0.0, 1.0)
    else:
        lo, hi = float(climits[0]), float(climits[1])
    span = hi - lo

    def t(v):
        if not math.isfinite(v):
            return NAN
        if span <= 0:
            return 1.0
        return min(1.0, max(0.0, (v - lo) / span))

    return Matrix([[t(v) for v in r] for r in rows])


def heatmap_recipe(z, attrs, x=None, y=None) -> RecipeOutput:
    if not isinstance(z, Matrix):
        z = Matrix(z)
    nz = normalize_z(z, attrs.get("climits", AUTO))
    nr, nc = nz.shape
    x = x if x is not None and len(x) == nc else DataColumn([float(i) for i in range(1, nc + 1)])
    y = y if y is not None and len(y) == nr else DataColumn([float(i) for i in range(1, nr + 1)])
    return RecipeOutput(x, y, nz, [force("seriestype", "heatmap-grid")])


def errorbar_decoration(x, y, yerror=None, xerror=None, attrs=None) -> RecipeOutput:
    """Error bars for a host series: a segment per point plus end caps.

    Caps are a fixed fraction of the smallest spacing along the other axis.
    """
    xs, ys = _floats(x), _floats(y)
    attrs = attrs or {}
    px, py = [], []

    def add(pts):
        if px:
            px.append(NAN)
            py.append(NAN)
        for a, b in pts:
            px.append(a)
            py.append(b)

    for name, err, along_y in (("yerror", yerror, True), ("xerror", xerror, False)):
        if err is None:
            continue
        es = _floats(err)
        if len(es) != len(ys):
            raise LengthMismatchError(f"{name} has length {len(es)} but the series has {len(ys)} points")
        gap = min_spacing(xs if along_y else ys)
        cap = CAP_FRACTION * (gap if gap is not None else 1.0) / 2
        for xi, yi, e in zip(xs, ys, es):
            if not all(math.isfinite(v) for v in (xi, yi, e)):
                continue
            if along_y:
                add([(xi, yi - e), (xi, yi + e)])
                add([(xi - cap, yi - e), (xi + cap, yi - e)])
                add([(xi - cap, yi + e), (xi + cap, yi + e)])
            else:
                add([(xi - e, yi), (xi + e, yi)])
                add([(xi - e, yi - cap), (xi - e, yi + cap)])
                add([(xi + e, yi - cap), (xi + e, yi + cap)])
    color = attrs.get("markerstrokecolor", "black")
    return RecipeOutput(DataColumn(px), DataColumn(py), None,
                        [force("seriestype", "path"), force("primary", False), force("linecolor", color),
                         force("label", "")])


@series_recipe("bar")
def _bar(data, attrs):
    return [bar_recipe(data.x, data.y, attrs)]


@series_recipe("histogram")
def _histogram(data, attrs):
    return [histogram_recipe(data.y, attrs)]


@series_recipe("boxplot")
def _boxplot(data, attrs):
    return boxplot_recipe(_groups(data.x, data.y, data.index), attrs)


@series_recipe("heatmap")
def _heatmap(data, attrs):
    return [heatmap_recipe(data.z, attrs, data.x, data.y)]


@series_recipe("line")
def _line(data, attrs):
    return [RecipeOutput(data.x, data.y, data.z, [force("seriestype", "path")])]


STD_RECIPES = (_bar, _histogram, _boxplot, _heatmap, _line)


def register_std_recipes(reg):
    for r in STD_RECIPES:
        reg.register(r)
