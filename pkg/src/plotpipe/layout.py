"""Subplot layout trees, bounding boxes, tick selection and axis limits.

Canvas coordinates are device-independent points (1/72 inch) with the
origin at the top-left corner and y growing downwards.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import InvalidRange, LayoutWarning
from .values import AUTO

LIMIT_PADDING = 0.05
EMPTY_LIMITS = (0.0, 1.0)
TICK_MULTIPLIERS = (1, 2, 5)


@dataclass(frozen=True)
class Leaf:
    index: int


@dataclass(frozen=True)
class Blank:
    pass


@dataclass(frozen=True)
class Grid:
    rows: int
    cols: int
    children: tuple
    widths: tuple = ()
    heights: tuple = ()

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid must have at least one row and column, got {self.rows}x{self.cols}")
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} grid needs {self.rows * self.cols} children, got {len(self.children)}")
        widths = tuple(float(w) for w in self.widths) or (1.0 / self.cols,) * self.cols
        heights = tuple(float(h) for h in self.heights) or (1.0 / self.rows,) * self.rows
        if len(widths) != self.cols or len(heights) != self.rows:
            raise ValueError("relative widths/heights must match the grid shape")
        if any(w <= 0 for w in widths + heights):
            raise ValueError("relative widths and heights must be positive")
        object.__setattr__(self, "widths", widths)
        object.__setattr__(self, "heights", heights)


LayoutNode = Union[Leaf, Blank, Grid]


@dataclass(frozen=True)
class BoundingBox:
    x0: float
    y0: float
    w: float
    h: float

    @property
    def x1(self):
        return self.x0 + self.w

    @property
    def y1(self):
        return self.y0 + self.h

    def contains(self, other: BoundingBox, eps: float = 1e-9) -> bool:
        return (other.x0 >= self.x0 - eps and other.y0 >= self.y0 - eps
                and other.x1 <= self.x1 + eps and other.y1 <= self.y1 + eps)

    def contains_point(self, x, y, eps: float = 1e-6) -> bool:
        return self.x0 - eps <= x <= self.x1 + eps and self.y0 - eps <= y <= self.y1 + eps


@dataclass(frozen=True)
class Margin:
    left: float = 0.0
    top: float = 0.0
    right: float = 0.0
    bottom: float = 0.0

    @classmethod
    def uniform(cls, m: float) -> Margin:
        return cls(m, m, m, m)


DEFAULT_MARGIN = Margin(left=52.0, top=28.0, right=14.0, bottom=40.0)


def grid(rows: int, cols: int, widths=(), heights=(), start: int = 0) -> Grid:
    """Grid with leaves numbered row-major from ``start``."""
    children = tuple(Leaf(start + i) for i in range(rows * cols))
    return Grid(rows, cols, children, tuple(widths), tuple(heights))


def default_grid(n: int) -> LayoutNode:
    """Near-square grid for ``n`` subplots, filled row-major."""
    if n < 1:
        raise ValueError(f"need at least one subplot, got {n}")
    if n == 1:
        return Leaf(0)
    rows = math.isqrt(n)
    cols = math.ceil(n / rows)
    children = tuple(Leaf(i) if i < n else Blank() for i in range(rows * cols))
    return Grid(rows, cols, children)


def leaves(node: LayoutNode) -> list[int]:
    if isinstance(node, Leaf):
        return [node.index]
    if isinstance(node, Grid):
        out = []
        for c in node.children:
            out.extend(leaves(c))
        return out
    return []


def shift_leaves(node: LayoutNode, offset: int) -> LayoutNode:
    if isinstance(node, Leaf):
        return Leaf(node.index + offset)
    if isinstance(node, Grid):
        return Grid(node.rows, node.cols, tuple(shift_leaves(c, offset) for c in node.children),
                    node.widths, node.heights)
    return node


def _normalized(sizes: tuple) -> tuple:
    total = sum(sizes)
    if abs(total - 1.0) > 1e-9:
        warnings.warn(f"relative sizes {sizes} sum to {total}, normalizing", LayoutWarning, stacklevel=4)
    return tuple(s / total for s in sizes)


def layout_cells(root: LayoutNode, canvas_w: float, canvas_h: float) -> dict[int, BoundingBox]:
    """Pre-margin box of every leaf, by recursive subdivision."""
    if not (canvas_w > 0 and canvas_h > 0):
        raise InvalidRange(f"degenerate canvas {canvas_w}x{canvas_h}")
    out: dict[int, BoundingBox] = {}

    def walk(node, box):
        if isinstance(node, Leaf):
            if node.index in out:
                raise ValueError(f"subplot {node.index} appears in more than one layout cell")
            out[node.index] = box
        elif isinstance(node, Grid):
            widths = _normalized(node.widths)
            heights = _normalized(node.heights)
            # cumulative edges keep the tiling exact
            xs = [box.x0]
            for w in widths:
                xs.append(xs[-1] + w * box.w)
            xs[-1] = box.x1
            ys = [box.y0]
            for h in heights:
                ys.append(ys[-1] + h * box.h)
            ys[-1] = box.y1
            for i, child in enumerate(node.children):
                r, c = divmod(i, node.cols)
                walk(child, BoundingBox(xs[c], ys[r], xs[c + 1] - xs[c], ys[r + 1] - ys[r]))

    walk(root, BoundingBox(0.0, 0.0, float(canvas_w), float(canvas_h)))
    return out


def shrink(box: BoundingBox, m: Margin) -> BoundingBox:
    w = max(0.0, box.w - m.left - m.right)
    h = max(0.0, box.h - m.top - m.bottom)
    return BoundingBox(box.x0 + min(m.left, box.w), box.y0 + min(m.top, box.h), w, h)


def compute_layout(root: LayoutNode, canvas_w: float, canvas_h: float,
                   margins: Margin | Mapping[int, Margin] | None = None) -> dict[int, BoundingBox]:
    """Map each subplot index to its plot-area box (margins subtracted)."""
    cells = layout_cells(root, canvas_w, canvas_h)
    out = {}
    for idx, box in cells.items():
        if margins is None:
            m = Margin()
        elif isinstance(margins, Margin):
            m = margins
        else:
            m = margins.get(idx, Margin())
        out[idx] = shrink(box, m)
    return out


@dataclass(frozen=True)
class TickSet:
    positions: tuple
    labels: tuple
    step: float = 0.0


def _step_value(m: int, k: int) -> float:
    return float(m * 10 ** k) if k >= 0 else m / 10 ** (-k)


def _tick_value(i: int, m: int, k: int) -> float:
    v = float(i * m * 10 ** k) if k >= 0 else (i * m) / 10 ** (-k)
    return v + 0.0  # no negative zero


def _tick_range(lo: float, hi: float, m: int, k: int) -> tuple[int, int]:
    s = _step_value(m, k)
    tol = 1e-9 * (hi - lo) / s
    return math.ceil(lo / s - tol), math.floor(hi / s + tol)


def format_ticks(values, k: int) -> tuple[str, ...]:
    """Labels with just enough decimals for a step of the form m * 10**k."""
    nonzero = [abs(v) for v in values if v != 0]
    exp = math.floor(math.log10(max(nonzero))) if nonzero else 0
    if abs(exp) >= 5:
        digits = max(0, exp - k)
        out = []
        for v in values:
            if v == 0:
                out.append("0")
            else:
                out.append(f"{v / 10 ** exp:.{digits}f}e{exp}")
        return tuple(out)
    decimals = max(0, -k)
    return tuple(f"{v:.{decimals}f}" for v in values)


def optimize_ticks(lo: float, hi: float, target: int = 6) -> TickSet:
    """Pick evenly spaced ticks at multiples of 1, 2 or 5 times a power of ten.

    The step minimizes ``|count - target|``; ties go to fewer ticks, then
    to the smaller step.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise InvalidRange(f"invalid tick range ({lo}, {hi})")
    if target < 2:
        raise InvalidRange(f"tick target must be >= 2, got {target}")
    k0 = math.floor(math.log10((hi - lo) / target))
    best = None
    for k in range(k0 - 3, k0 + 4):
        for m in TICK_MULTIPLIERS:
            i0, i1 = _tick_range(lo, hi, m, k)
            count = max(0, i1 - i0 + 1)
            key = (abs(count - target), count, _step_value(m, k))
            if best is None or key < best[0]:
                best = (key, m, k, i0, i1)
    _, m, k, i0, i1 = best
    positions = tuple(_tick_value(i, m, k) for i in range(i0, i1 + 1))
    return TickSet(positions, format_ticks(positions, k), _step_value(m, k))


def log_ticks(lo: float, hi: float, target: int = 6) -> TickSet:
    """Ticks at powers of ten inside [lo, hi] (lo > 0); falls back to linear."""
    if not (0 < lo < hi):
        raise InvalidRange(f"invalid log tick range ({lo}, {hi})")
    e0 = math.ceil(math.log10(lo) - 1e-9)
    e1 = math.floor(math.log10(hi) + 1e-9)
    if e1 - e0 + 1 < 2:
        return optimize_ticks(lo, hi, target)
    stride = max(1, math.ceil((e1 - e0 + 1) / max(target, 2)))
    exps = range(e0, e1 + 1, stride)
    return TickSet(tuple(10.0 ** e for e in exps), tuple(f"1e{e}" for e in exps), float(stride))


def _limits_of(axis):
    if axis is None:
        return AUTO, "linear"
    return getattr(axis, "limits", AUTO), getattr(axis, "scale", "linear")


def infer_limits(data: Iterable, axis=None) -> tuple[float, float]:
    """Axis limits from data: the extent padded by 5% on each side.

    ``axis`` may be anything with ``limits`` and ``scale`` attributes;
    explicit limits pass through untouched. Log axes pad in log space and
    ignore non-positive values. No data gives (0, 1).
    """
    limits, scale = _limits_of(axis)
    if limits is not AUTO and limits is not None:
        lo, hi = limits
        return float(lo), float(hi)
    values = []
    for item in data:
        if isinstance(item, (int, float)):
            values.append(float(item))
        else:
            values.extend(float(v) for v in item)
    if scale == "log10":
        values = [math.log10(v) for v in values if math.isfinite(v) and v > 0]
        if not values:
            return (1.0, 10.0)
    else:
        values = [v for v in values if math.isfinite(v)]
        if not values:
            return EMPTY_LIMITS
    lo, hi = min(values), max(values)
    span = hi - lo
    if span == 0:
        pad = abs(lo) * LIMIT_PADDING if lo != 0 else 0.5
        if scale == "log10":
            pad = LIMIT_PADDING
    else:
        pad = span * LIMIT_PADDING
    lo, hi = lo - pad, hi + pad
    if scale == "log10":
        return 10.0 ** lo, 10.0 ** hi
    return lo, hi
