"""Backend-independent lowering of a resolved plot into drawing primitives.

Everything here is in canvas points with the origin at the top-left.
Coordinates are final: data-space clipping, axis mapping, tick placement
and the legend are all decided here, so drawing backends only translate
primitives into their own format.
"""

from __future__ import annotations

import hashlib
import json
import math
import numbers
from dataclasses import dataclass, fields, is_dataclass

from .. import layout as lay
from ..colors import TRANSPARENT, ColorSpec, colormap_lookup
from ..errors import UnresolvedSpec
from ..layout import BoundingBox, Margin, TickSet
from ..recipes.std import errorbar_decoration
from ..values import AUTO, DataColumn, Matrix

TICK_LENGTH = 4.0
LABEL_GAP = 4.0
CHAR_WIDTH = 0.6  # average glyph width as a fraction of the font size


@dataclass(frozen=True)
class Stroke:
    color: ColorSpec
    width: float = 1.0
    dash: str = "solid"


@dataclass(frozen=True)
class Path:
    points: tuple
    stroke: Stroke
    role: str = "series"


@dataclass(frozen=True)
class Polygon:
    points: tuple
    fill: ColorSpec
    stroke: Stroke | None = None
    role: str = "series"


@dataclass(frozen=True)
class Marker:
    x: float
    y: float
    shape: str
    size: float
    fill: ColorSpec
    stroke: Stroke
    role: str = "series"


@dataclass(frozen=True)
class TextItem:
    x: float
    y: float
    text: str
    size: float
    color: ColorSpec
    halign: str = "center"
    valign: str = "middle"
    rotation: float = 0.0
    role: str = "text"


@dataclass(frozen=True)
class CellGrid:
    """Uniform grid of colored cells; ``colors`` rows run top to bottom."""

    x0: float
    y0: float
    cell_w: float
    cell_h: float
    colors: tuple
    role: str = "series"

    @property
    def shape(self):
        return len(self.colors), len(self.colors[0]) if self.colors else 0


@dataclass(frozen=True)
class Group:
    clip: BoundingBox
    primitives: tuple
    subplot: int = -1


@dataclass(frozen=True)
class SceneGraph:
    width: float
    height: float
    background: ColorSpec
    groups: tuple = ()

    def primitives(self):
        for g in self.groups:
            yield from g.primitives


# --- axes ---------------------------------------------------------------


@dataclass(frozen=True)
class AxisFrame:
    letter: str
    lo: float
    hi: float
    scale: str
    flip: bool
    ticks: TickSet

    def unit(self, v: float) -> float:
        """Position of ``v`` along the axis as a fraction in [0, 1] (NaN if unmappable)."""
        if not math.isfinite(v):
            return math.nan
        if self.scale == "log10":
            if v <= 0:
                return math.nan
            lo, hi, v = math.log10(self.lo), math.log10(self.hi), math.log10(v)
        else:
            lo, hi = self.lo, self.hi
        u = (v - lo) / (hi - lo)
        return 1.0 - u if self.flip else u


def _floats(col) -> list[float]:
    if col is None:
        return []
    if isinstance(col, DataColumn):
        return list(col.values)
    return [float(v) for v in col]


def cell_edges(centers: list[float]) -> list[float]:
    """Edges of cells centered on ``centers`` (midpoints, ends extrapolated)."""
    if not centers:
        return []
    if len(centers) == 1:
        return [centers[0] - 0.5, centers[0] + 0.5]
    mids = [(a + b) / 2 for a, b in zip(centers, centers[1:])]
    return [centers[0] - (mids[0] - centers[0])] + mids + [centers[-1] + (centers[-1] - mids[-1])]


def _extent_values(s, letter: str) -> list[float]:
    st = s.seriestype
    if st == "heatmap-grid":
        return cell_edges(_floats(s.x if letter == "x" else s.y))
    vals = _floats(s.x if letter == "x" else s.y)
    err = s.xerror if letter == "x" else s.yerror
    out = list(vals)
    if err is not None and len(err) == len(vals):
        for v, e in zip(vals, _floats(err)):
            out += [v - e, v + e]
    if letter == "y" and s.fillrange is not None and st == "path":
        out += [float(s.fillrange)] if isinstance(s.fillrange, numbers.Real) else _floats(s.fillrange)
    return out


def _ticks_for(axis, lo, hi, scale) -> TickSet:
    t = axis.ticks
    if t is AUTO or t is True:
        if scale == "log10":
            ts = lay.log_ticks(lo, hi)
        else:
            ts = lay.optimize_ticks(lo, hi)
    elif t is False or t == "none" or t == ():
        return TickSet((), ())
    elif isinstance(t, tuple) and len(t) == 2 and isinstance(t[0], tuple):
        ts = TickSet(tuple(float(v) for v in t[0]), tuple(str(v) for v in t[1]))
    elif isinstance(t, tuple):
        pos = tuple(float(v) for v in t)
        ts = TickSet(pos, tuple(f"{v:g}" for v in pos))
    else:
        ts = lay.optimize_ticks(lo, hi)
    eps = 1e-9 * (hi - lo)
    keep = [(p, l) for p, l in zip(ts.positions, ts.labels) if lo - eps <= p <= hi + eps]
    return TickSet(tuple(p for p, _ in keep), tuple(l for _, l in keep), ts.step)


def axis_frames(spec, j: int) -> dict[str, AxisFrame]:
    """Limits and ticks of each axis of subplot ``j``."""
    sp = spec.subplots[j]
    members = [spec.series[i] for i in sp.series]
    out = {}
    for letter, axis in sp.axes.items():
        data = [_extent_values(s, letter) for s in members]
        lo, hi = lay.infer_limits(data, axis)
        out[letter] = AxisFrame(letter, lo, hi, axis.scale, bool(axis.attrs.get(letter + "flip", False)),
                                _ticks_for(axis, lo, hi, axis.scale))
    return out


def subplot_margin(value) -> Margin:
    if value is AUTO or value is None:
        return lay.DEFAULT_MARGIN
    if isinstance(value, (int, float)):
        return Margin.uniform(float(value))
    if isinstance(value, tuple) and len(value) == 4:
        return Margin(*(float(v) for v in value))
    raise ValueError(f"margin must be a number or a (left, top, right, bottom) tuple, got {value!r}")


def canvas_size(spec) -> tuple[float, float]:
    w, h = spec.attrs.get("size", (600.0, 400.0))
    return float(w), float(h)


def layout_boxes(spec) -> tuple[dict, dict]:
    """Pre-margin cells and plot-area boxes for every subplot."""
    w, h = canvas_size(spec)
    cells = lay.layout_cells(spec.layout, w, h)
    margins = {j: subplot_margin(spec.subplots[j].attrs.get("margin", AUTO)) for j in cells}
    return cells, {j: lay.shrink(box, margins[j]) for j, box in cells.items()}


# --- clipping -------------------------------------------------------------


def _clip_segment(p, q, box: BoundingBox):
    """Liang-Barsky; returns the visible part of segment pq or None."""
    x0, y0 = p
    dx, dy = q[0] - x0, q[1] - y0
    t0, t1 = 0.0, 1.0
    for pk, qk in ((-dx, x0 - box.x0), (dx, box.x1 - x0), (-dy, y0 - box.y0), (dy, box.y1 - y0)):
        if pk == 0:
            if qk < 0:
                return None
            continue
        r = qk / pk
        if pk < 0:
            if r > t1:
                return None
            t0 = max(t0, r)
        else:
            if r < t0:
                return None
            t1 = min(t1, r)
    a = (x0 + t0 * dx, y0 + t0 * dy)
    b = (x0 + t1 * dx, y0 + t1 * dy)
    return _clamp(a, box), _clamp(b, box)


def _clamp(p, box):
    return (min(box.x1, max(box.x0, p[0])), min(box.y1, max(box.y0, p[1])))


def clip_polyline(points, box: BoundingBox) -> list[list]:
    """Split a polyline into the runs that lie inside ``box``."""
    if len(points) == 1:
        return [list(points)] if box.contains_point(*points[0], eps=0) else []
    runs, cur = [], []
    for p, q in zip(points, points[1:]):
        seg = _clip_segment(p, q, box)
        if seg is None:
            if cur:
                runs.append(cur)
                cur = []
            continue
        a, b = seg
        if cur and cur[-1] == a:
            cur.append(b)
        else:
            if cur:
                runs.append(cur)
            cur = [a, b]
        if b != q:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def clip_polygon(points, box: BoundingBox) -> list:
    """Sutherland-Hodgman against the four box edges."""
    def clip(pts, inside, cross):
        out = []
        for i, cur in enumerate(pts):
            prev = pts[i - 1]
            if inside(cur):
                if not inside(prev):
                    out.append(cross(prev, cur))
                out.append(cur)
            elif inside(prev):
                out.append(cross(prev, cur))
        return out

    def at_x(x):
        return lambda p, q: (x, p[1] + (q[1] - p[1]) * (x - p[0]) / (q[0] - p[0]))

    def at_y(y):
        return lambda p, q: (p[0] + (q[0] - p[0]) * (y - p[1]) / (q[1] - p[1]), y)

    pts = list(points)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    for inside, cross in (
        (lambda p: p[0] >= box.x0, at_x(box.x0)),
        (lambda p: p[0] <= box.x1, at_x(box.x1)),
        (lambda p: p[1] >= box.y0, at_y(box.y0)),
        (lambda p: p[1] <= box.y1, at_y(box.y1)),
    ):
        if not pts:
            break
        pts = clip(pts, inside, cross)
    return [_clamp(p, box) for p in pts]


def split_gaps(xs, ys) -> list[list]:
    """Runs of consecutive points with finite coordinates."""
    runs, cur = [], []
    for x, y in zip(xs, ys):
        if math.isfinite(x) and math.isfinite(y):
            cur.append((x, y))
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


# --- series -------------------------------------------------------------


class _Mapper:
    def __init__(self, frames, box: BoundingBox):
        self.fx, self.fy, self.box = frames["x"], frames["y"], box

    def point(self, x, y):
        u, v = self.fx.unit(x), self.fy.unit(y)
        return self.box.x0 + u * self.box.w, self.box.y1 - v * self.box.h

    def points(self, xs, ys):
        pts = [self.point(x, y) for x, y in zip(xs, ys)]
        return [p[0] for p in pts], [p[1] for p in pts]


def _with_alpha(c: ColorSpec, alpha: float) -> ColorSpec:
    return ColorSpec(c.r, c.g, c.b, c.a * alpha)


def _line_stroke(attrs) -> Stroke | None:
    if attrs["linestyle"] == "none" or attrs["linewidth"] <= 0:
        return None
    return Stroke(attrs["linecolor"], float(attrs["linewidth"]), attrs["linestyle"])


def _markers(xs, ys, attrs, box, role="series"):
    shape = attrs["marker"]
    if shape in ("none", False):
        return []
    stroke = Stroke(attrs["markerstrokecolor"], 1.0)
    size = float(attrs["markersize"])
    fill = attrs["markercolor"]
    out = []
    for i, (x, y) in enumerate(zip(xs, ys)):
        if math.isfinite(x) and math.isfinite(y) and box.contains_point(x, y, eps=0):
            f = fill[i % len(fill)] if isinstance(fill, tuple) else fill
            out.append(Marker(x, y, shape, size, f, stroke, role))
    return out


def _paths(xs, ys, stroke, box, role="series"):
    out = []
    for run in split_gaps(xs, ys):
        for clipped in clip_polyline(run, box):
            if len(clipped) >= 2:
                out.append(Path(tuple(clipped), stroke, role))
    return out


def _polygons(xs, ys, fill, stroke, box, role="series"):
    out = []
    for run in split_gaps(xs, ys):
        pts = clip_polygon(run, box)
        if len(pts) >= 3:
            out.append(Polygon(tuple(pts), fill, stroke, role))
    return out


def _lower_path(s, m: _Mapper, box):
    attrs = s.attrs
    xs, ys = m.points(_floats(s.x), _floats(s.y))
    out = []
    if s.fillrange is not None:
        base = s.fillrange
        dx, dy = _floats(s.x), _floats(s.y)
        bys = [float(base)] * len(dy) if isinstance(base, numbers.Real) else _floats(base)
        fill = _with_alpha(attrs["fillcolor"], float(attrs["fillalpha"]))
        for run in _fill_runs(dx, dy, bys):
            px, py = m.points([p[0] for p in run], [p[1] for p in run])
            out += _polygons(px, py, fill, None, box, role="fill")
    stroke = _line_stroke(attrs)
    if stroke is not None:
        out += _paths(xs, ys, stroke, box)
    out += _errorbars(s, m, box)
    out += _markers(xs, ys, attrs, box)
    return out


def _fill_runs(xs, ys, base):
    """Closed outlines between a curve and its fill baseline, one per gap-free run."""
    runs, cur = [], []
    for x, y, b in zip(xs, ys, base):
        if all(math.isfinite(v) for v in (x, y, b)):
            cur.append((x, y, b))
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return [[(x, y) for x, y, _ in r] + [(x, b) for x, _, b in reversed(r)] for r in runs if len(r) >= 2]


def _errorbars(s, m: _Mapper, box):
    if s.yerror is None and s.xerror is None:
        return []
    deco = errorbar_decoration(s.x, s.y, s.yerror, s.xerror, s.attrs)
    xs, ys = m.points(_floats(deco.x), _floats(deco.y))
    return _paths(xs, ys, Stroke(s.attrs["markerstrokecolor"], 1.0), box, role="errorbar")


def _lower_scatter(s, m: _Mapper, box):
    xs, ys = m.points(_floats(s.x), _floats(s.y))
    attrs = s.attrs
    if attrs["marker"] in ("none", False):
        attrs = dict(attrs)
        attrs["marker"] = "circle"
    return _errorbars(s, m, box) + _markers(xs, ys, attrs, box)


def _lower_shape(s, m: _Mapper, box):
    attrs = s.attrs
    xs, ys = m.points(_floats(s.x), _floats(s.y))
    fill = _with_alpha(attrs["fillcolor"], float(attrs["fillalpha"]))
    return _polygons(xs, ys, fill, _line_stroke(attrs), box)


def _lower_text(s, m: _Mapper, box, fontsize, color):
    texts = s.attrs.get("texts", ())
    xs, ys = m.points(_floats(s.x), _floats(s.y))
    out = []
    for i, (x, y) in enumerate(zip(xs, ys)):
        if i < len(texts) and math.isfinite(x) and math.isfinite(y) and box.contains_point(x, y, eps=0):
            out.append(TextItem(x, y, str(texts[i]), fontsize, color, "center", "middle", 0.0, "annotation"))
    return out


def _intervals(edges, to_canvas):
    out = []
    for a, b in zip(edges, edges[1:]):
        ca, cb = to_canvas(a), to_canvas(b)
        out.append((min(ca, cb), max(ca, cb)))
    return out


def _lower_heatmap(s, m: _Mapper, box):
    z = s.z if isinstance(s.z, Matrix) else Matrix(s.z)
    nr, nc = z.shape
    cmap = s.attrs["colormap"]
    xcols = _intervals(cell_edges(_floats(s.x)), lambda v: box.x0 + m.fx.unit(v) * box.w)
    yrows = _intervals(cell_edges(_floats(s.y)), lambda v: box.y1 - m.fy.unit(v) * box.h)
    col_order = sorted(range(nc), key=lambda c: xcols[c][0])
    row_order = sorted(range(nr), key=lambda r: yrows[r][0])
    cw = [xcols[c][1] - xcols[c][0] for c in col_order]
    rh = [yrows[r][1] - yrows[r][0] for r in row_order]
    x0, x1 = xcols[col_order[0]][0], xcols[col_order[-1]][1]
    y0, y1 = yrows[row_order[0]][0], yrows[row_order[-1]][1]
    finite = all(math.isfinite(v) for v in (x0, x1, y0, y1))
    uniform = finite and max(cw) - min(cw) <= 1e-6 * max(1.0, max(cw)) and max(rh) - min(rh) <= 1e-6 * max(1.0, max(rh))
    inside = finite and box.contains(BoundingBox(x0, y0, x1 - x0, y1 - y0))
    if uniform and inside:
        colors = tuple(tuple(colormap_lookup(cmap, z.rows[r][c]) for c in col_order) for r in row_order)
        return [CellGrid(x0, y0, (x1 - x0) / nc, (y1 - y0) / nr, colors)]
    out = []
    for r in row_order:
        for c in col_order:
            color = colormap_lookup(cmap, z.rows[r][c])
            (a, b), (p, q) = xcols[c], yrows[r]
            if color == TRANSPARENT or not all(math.isfinite(v) for v in (a, b, p, q)):
                continue
            pts = clip_polygon([(a, p), (b, p), (b, q), (a, q)], box)
            if len(pts) >= 3:
                out.append(Polygon(tuple(pts), color, None, "cell"))
    return out


# --- decorations --------------------------------------------------------


def _inside(x, y, clip: BoundingBox):
    return min(clip.x1, max(clip.x0, x)), min(clip.y1, max(clip.y0, y))


def _decor(spec, j, frames, box: BoundingBox, cell: BoundingBox):
    sp = spec.subplots[j]
    fg = sp.attrs["foreground"]
    fs = float(spec.attrs["fontsize"])
    prims = [Polygon(((box.x0, box.y0), (box.x1, box.y0), (box.x1, box.y1), (box.x0, box.y1)),
                     sp.attrs["background_inside"], None, "background")]
    grid_stroke = Stroke(_with_alpha(fg, 0.15), 0.5)
    tick_stroke = Stroke(fg, 1.0)
    fx, fy = frames["x"], frames["y"]
    xt = [(box.x0 + fx.unit(p) * box.w, lab) for p, lab in zip(fx.ticks.positions, fx.ticks.labels)]
    yt = [(box.y1 - fy.unit(p) * box.h, lab) for p, lab in zip(fy.ticks.positions, fy.ticks.labels)]
    if sp.axes["x"].attrs.get("xgrid", True):
        prims += [Path(((x, box.y0), (x, box.y1)), grid_stroke, "grid") for x, _ in xt]
    if sp.axes["y"].attrs.get("ygrid", True):
        prims += [Path(((box.x0, y), (box.x1, y)), grid_stroke, "grid") for y, _ in yt]
    prims.append(Path(((box.x0, box.y0), (box.x1, box.y0), (box.x1, box.y1), (box.x0, box.y1), (box.x0, box.y0)),
                      Stroke(fg, 1.0), "frame"))
    for x, lab in xt:
        prims.append(Path(((x, box.y1), (x, max(box.y1 - TICK_LENGTH, box.y0))), tick_stroke, "tick"))
        tx, ty = _inside(x, box.y1 + LABEL_GAP, cell)
        prims.append(TextItem(tx, ty, lab, fs, fg, "center", "top", 0.0, "xticklabel"))
    for y, lab in yt:
        prims.append(Path(((box.x0, y), (min(box.x0 + TICK_LENGTH, box.x1), y)), tick_stroke, "tick"))
        tx, ty = _inside(box.x0 - LABEL_GAP, y, cell)
        prims.append(TextItem(tx, ty, lab, fs, fg, "right", "middle", 0.0, "yticklabel"))
    xlabel = sp.axes["x"].label
    if xlabel:
        tx, ty = _inside(box.x0 + box.w / 2, box.y1 + LABEL_GAP + fs * 1.4, cell)
        prims.append(TextItem(tx, ty, str(xlabel), fs, fg, "center", "top", 0.0, "xlabel"))
    ylabel = sp.axes["y"].label
    if ylabel:
        tx, ty = _inside(cell.x0 + fs * 0.8, box.y0 + box.h / 2, cell)
        prims.append(TextItem(tx, ty, str(ylabel), fs, fg, "center", "middle", -90.0, "ylabel"))
    title = sp.attrs["title"]
    if title:
        tfs = float(sp.attrs["titlefontsize"])
        tx, ty = _inside(box.x0 + box.w / 2, box.y0 - LABEL_GAP * 1.5, cell)
        prims.append(TextItem(tx, ty, str(title), tfs, fg, "center", "bottom", 0.0, "title"))
    return Group(cell, tuple(prims), j)


def _legend(spec, j, box: BoundingBox):
    sp = spec.subplots[j]
    where = sp.attrs["legend"]
    if where in (False, "none", None):
        return None
    entries = [spec.series[i] for i in sp.series
               if spec.series[i].attrs.get("primary", True) and spec.series[i].attrs.get("label")
               and spec.series[i].seriestype != "heatmap-grid"]
    if not entries:
        return None
    fs = float(spec.attrs["fontsize"])
    fg = sp.attrs["foreground"]
    row_h = fs * 1.5
    sample_w = 24.0
    text_w = max(len(str(s.attrs["label"])) for s in entries) * fs * CHAR_WIDTH
    w = 6 + sample_w + 6 + text_w + 6
    h = 4 + row_h * len(entries) + 4
    if w > box.w - 12 or h > box.h - 12:
        return None
    where = str(where)
    x0 = box.x0 + 6 if "left" in where else box.x1 - 6 - w
    y0 = box.y1 - 6 - h if "bottom" in where else box.y0 + 6
    prims = [Polygon(((x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)),
                     sp.attrs["background_inside"], Stroke(fg, 0.5), "legend")]
    for n, s in enumerate(entries):
        cy = y0 + 4 + row_h * (n + 0.5)
        sx0, sx1 = x0 + 6, x0 + 6 + sample_w
        a = s.attrs
        if s.seriestype == "shape":
            prims.append(Polygon(((sx0, cy - fs * 0.35), (sx1, cy - fs * 0.35), (sx1, cy + fs * 0.35),
                                  (sx0, cy + fs * 0.35)),
                                 _with_alpha(a["fillcolor"], float(a["fillalpha"])), _line_stroke(a),
                                 "legend-sample"))
        elif s.seriestype == "path" and _line_stroke(a) is not None:
            prims.append(Path(((sx0, cy), (sx1, cy)), _line_stroke(a), "legend-sample"))
        shape = a["marker"]
        if s.seriestype == "scatter" and shape in ("none", False):
            shape = "circle"
        if shape not in ("none", False) and s.seriestype in ("path", "scatter"):
            fill = a["markercolor"]
            fill = fill[0] if isinstance(fill, tuple) else fill
            prims.append(Marker((sx0 + sx1) / 2, cy, shape, float(a["markersize"]), fill,
                                Stroke(a["markerstrokecolor"], 1.0), "legend-sample"))
        prims.append(TextItem(sx1 + 6, cy, str(a["label"]), fs, fg, "left", "middle", 0.0, "legend-text"))
    return Group(box, tuple(prims), j)


_LOWER = {
    "path": _lower_path,
    "scatter": _lower_scatter,
    "shape": _lower_shape,
    "heatmap-grid": _lower_heatmap,
}


def lower(spec, boxes: dict | None = None) -> SceneGraph:
    """Turn a resolved plot into a SceneGraph.

    Per subplot the scene holds a decoration group (background, grid,
    frame, ticks, labels), a series group clipped to the plot area with
    series in declaration order, and a legend group on top.
    """
    if not spec.resolved:
        raise UnresolvedSpec("lower() needs a resolved plot; call resolve() first")
    cells, areas = layout_boxes(spec)
    if boxes is not None:
        areas = dict(boxes)
    w, h = canvas_size(spec)
    groups = []
    for j in sorted(areas):
        box, cell = areas[j], cells.get(j, areas[j])
        if box.w <= 0 or box.h <= 0:
            continue
        frames = axis_frames(spec, j)
        groups.append(_decor(spec, j, frames, box, cell))
        m = _Mapper(frames, box)
        fs = float(spec.attrs["fontsize"])
        prims = []
        for i in spec.subplots[j].series:
            s = spec.series[i]
            if s.seriestype == "text-annotation":
                prims += _lower_text(s, m, box, fs, spec.subplots[j].attrs["foreground"])
            else:
                prims += _LOWER[s.seriestype](s, m, box)
        groups.append(Group(box, tuple(prims), j))
        leg = _legend(spec, j, box)
        if leg is not None:
            groups.append(leg)
    return SceneGraph(w, h, spec.attrs["background"], tuple(groups))


# --- hashing --------------------------------------------------------------


def _plain(obj):
    if is_dataclass(obj):
        return [type(obj).__name__] + [_plain(getattr(obj, f.name)) for f in fields(obj)]
    if isinstance(obj, (tuple, list)):
        return [_plain(v) for v in obj]
    if isinstance(obj, float):
        return repr(obj)
    return obj


def scene_hash(scene: SceneGraph) -> str:
    """Stable digest of a scene; equal scenes hash equal."""
    blob = json.dumps(_plain(scene), separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(blob.encode("ascii")).hexdigest()
