"""Terminal output with braille dots and box-drawing characters.

The canvas is mapped onto ``cols x rows`` character cells, each holding a
2x4 grid of braille dots. Plot frames become box-drawing rectangles; text
is placed character by character. Grid lines, tick marks and filled
backgrounds have no terminal equivalent and are left out.
"""

from __future__ import annotations

import math

from ..errors import CanvasTooSmall
from .scene import CellGrid, Marker, Path, Polygon, SceneGraph, TextItem

MIN_COLS, MIN_ROWS = 16, 8
DEFAULT_COLS, DEFAULT_ROWS = 80, 24
BRAILLE_BASE = 0x2800
# bit for the dot at (column, row) inside a cell
DOT_BITS = {(0, 0): 0x01, (0, 1): 0x02, (0, 2): 0x04, (1, 0): 0x08,
            (1, 1): 0x10, (1, 2): 0x20, (0, 3): 0x40, (1, 3): 0x80}
SHADES = " ░▒▓█"
SKIPPED_ROLES = {"grid", "tick", "background", "legend", "fill"}
NUDGE = {"xticklabel": 1, "xlabel": 1, "title": -1, "legend-text": 1}


class _Canvas:
    def __init__(self, scene: SceneGraph, cols: int, rows: int):
        self.cols, self.rows = cols, rows
        self.sx = cols * 2 / scene.width
        self.sy = rows * 4 / scene.height
        self.dots = [[0] * cols for _ in range(rows)]
        self.dot_color = [[None] * cols for _ in range(rows)]
        self.chars: list[list[str | None]] = [[None] * cols for _ in range(rows)]
        self.char_color = [[None] * cols for _ in range(rows)]

        self.view = None
        self.frames = {}

    def dot_xy(self, x, y):
        if self.view is not None:
            (bx0, by0, bx1, by1), (ix0, iy0, ix1, iy1) = self.view
            fx = (x - bx0) / (bx1 - bx0) if bx1 > bx0 else 0.0
            fy = (y - by0) / (by1 - by0) if by1 > by0 else 0.0
            return int(math.floor(ix0 + fx * (ix1 - ix0) + 0.5)), int(math.floor(iy0 + fy * (iy1 - iy0) + 0.5))
        return int(math.floor(x * self.sx)), int(math.floor(y * self.sy))

    def cell(self, x, y):
        dx, dy = self.dot_xy(x, y)
        return dx // 2, dy // 4

    def frame_cells(self, pts):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        c0, r0 = int(min(xs) * self.sx / 2), int(min(ys) * self.sy / 4)
        c1, r1 = int(max(xs) * self.sx / 2), int(max(ys) * self.sy / 4)
        c0, r0 = max(c0, 0), max(r0, 0)
        c1, r1 = min(c1, self.cols - 1), min(r1, self.rows - 1)
        return (min(xs), min(ys), max(xs), max(ys)), (c0, r0, c1, r1)

    def use_view(self, clip):
        """Map the plot area ``clip`` onto the cells inside its frame, if it has one."""
        key = (clip.x0, clip.y0, clip.x1, clip.y1)
        cells = self.frames.get(key)
        if cells is None:
            self.view = None
            return
        c0, r0, c1, r1 = cells
        self.view = (key, (c0 * 2 + 2, r0 * 4 + 4, c1 * 2 - 1, r1 * 4 - 1))

    def set_dot(self, dx, dy, color):
        dx = min(max(dx, 0), self.cols * 2 - 1)
        dy = min(max(dy, 0), self.rows * 4 - 1)
        c, r = dx // 2, dy // 4
        if self.chars[r][c] is not None:
            return
        self.dots[r][c] |= DOT_BITS[(dx % 2, dy % 4)]
        self.dot_color[r][c] = color

    def line(self, p, q, color):
        x0, y0 = self.dot_xy(*p)
        x1, y1 = self.dot_xy(*q)
        dx, dy = abs(x1 - x0), -abs(y1 - y0)
        sx, sy = (1 if x0 < x1 else -1), (1 if y0 < y1 else -1)
        err = dx + dy
        while True:
            self.set_dot(x0, y0, color)
            if x0 == x1 and y0 == y1:
                break
            e2 = 2 * err
            if e2 >= dy:
                err += dy
                x0 += sx
            if e2 <= dx:
                err += dx
                y0 += sy

    def put(self, c, r, ch, color=None, force=False):
        if 0 <= c < self.cols and 0 <= r < self.rows and (force or self.chars[r][c] is None):
            self.chars[r][c] = ch
            self.char_color[r][c] = color

    def frame(self, pts, color):
        box, (c0, r0, c1, r1) = self.frame_cells(pts)
        if c1 - c0 < 2 or r1 - r0 < 2:
            return
        self.frames[box] = (c0, r0, c1, r1)
        for c in range(c0 + 1, c1):
            self.put(c, r0, "─", color, True)
            self.put(c, r1, "─", color, True)
        for r in range(r0 + 1, r1):
            self.put(c0, r, "│", color, True)
            self.put(c1, r, "│", color, True)
        for c, r, ch in ((c0, r0, "┌"), (c1, r0, "┐"), (c0, r1, "└"), (c1, r1, "┘")):
            self.put(c, r, ch, color, True)

    def text(self, t: TextItem):
        s = t.text
        if t.rotation:
            c, r = self.cell(t.x, t.y)
            r0 = r - len(s) // 2
            for i, ch in enumerate(s):
                self.put(c, r0 + i, ch, t.color)
            return
        c, r = self.cell(t.x, t.y)
        if t.halign == "right":
            c0 = c - len(s)
        elif t.halign == "center":
            c0 = c - len(s) // 2
        else:
            c0 = c
        step = NUDGE.get(t.role, 0)
        if step:
            # move off the frame rather than losing the label
            for _ in range(3):
                if all(self.free(c0 + i, r) for i in range(len(s))):
                    break
                r += step
        for i, ch in enumerate(s):
            self.put(c0 + i, r, ch, t.color)

    def free(self, c, r) -> bool:
        return not (0 <= c < self.cols and 0 <= r < self.rows) or self.chars[r][c] is None

    def cellgrid(self, g: CellGrid):
        nr, nc = g.shape
        for r in range(nr):
            for c in range(nc):
                color = g.colors[r][c]
                if color.a == 0:
                    continue
                x0, y0 = g.x0 + c * g.cell_w, g.y0 + r * g.cell_h
                ca, ra = self.cell(x0, y0)
                cb, rb = self.cell(x0 + g.cell_w, y0 + g.cell_h)
                level = 1 + min(3, int((1.0 - color.luminance()) * 4))
                for rr in range(ra, max(ra + 1, rb)):
                    for cc in range(ca, max(ca + 1, cb)):
                        self.put(cc, rr, SHADES[level], color)

    def lines(self, color: bool) -> list[str]:
        out = []
        for r in range(self.rows):
            parts = []
            for c in range(self.cols):
                ch = self.chars[r][c]
                col = self.char_color[r][c]
                if ch is None:
                    bits = self.dots[r][c]
                    ch = chr(BRAILLE_BASE + bits) if bits else " "
                    col = self.dot_color[r][c] if bits else None
                if color and col is not None and ch != " ":
                    red, green, blue = col.to_rgb8()
                    ch = f"\x1b[38;2;{red};{green};{blue}m{ch}\x1b[0m"
                parts.append(ch)
            out.append("".join(parts))
        return out


def render_unicode(scene: SceneGraph, cols: int = DEFAULT_COLS, rows: int = DEFAULT_ROWS,
                   color: bool = False) -> str:
    """Draw the scene on a ``cols x rows`` character grid; one line per row."""
    if cols < MIN_COLS or rows < MIN_ROWS:
        raise CanvasTooSmall(f"terminal canvas must be at least {MIN_COLS}x{MIN_ROWS}, got {cols}x{rows}")
    cv = _Canvas(scene, cols, rows)
    texts = []
    for g in scene.groups:
        for prim in g.primitives:
            if isinstance(prim, Path) and prim.role == "frame":
                cv.frame(prim.points, prim.stroke.color)
    for g in scene.groups:
        cv.use_view(g.clip)
        for prim in g.primitives:
            role = getattr(prim, "role", "")
            if role in SKIPPED_ROLES:
                continue
            if isinstance(prim, Path) and role == "frame":
                continue
            if isinstance(prim, Path):
                for p, q in zip(prim.points, prim.points[1:]):
                    cv.line(p, q, prim.stroke.color)
            elif isinstance(prim, Polygon):
                pts = prim.points
                c = prim.stroke.color if prim.stroke is not None else prim.fill
                for p, q in zip(pts, pts[1:] + pts[:1]):
                    cv.line(p, q, c)
            elif isinstance(prim, Marker):
                cv.set_dot(*cv.dot_xy(prim.x, prim.y), prim.fill)
            elif isinstance(prim, CellGrid):
                cv.cellgrid(prim)
            elif isinstance(prim, TextItem):
                texts.append((cv.view, prim))
    for view, t in texts:
        cv.view = view
        cv.text(t)
    return "\n".join(cv.lines(color)) + "\n"
