"""SVG 1.1 output.

Numbers are written with at most four decimals (trailing zeros dropped)
so that the same scene always yields the same bytes.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from ..colors import ColorSpec
from .scene import CellGrid, Marker, Path, Polygon, SceneGraph, TextItem

SVG_NS = "http://www.w3.org/2000/svg"
DASHES = {"dash": "6 3", "dot": "1.5 3", "dashdot": "6 3 1.5 3"}
ANCHORS = {"left": "start", "center": "middle", "right": "end"}
BASELINES = {"top": "hanging", "middle": "central", "bottom": "alphabetic"}


def fmt(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _color(c: ColorSpec) -> str:
    r, g, b = c.to_rgb8()
    return f"rgb({r},{g},{b})"


def _paint(el, attr: str, c: ColorSpec | None):
    if c is None or c.a == 0:
        el.set(attr, "none")
        return
    el.set(attr, _color(c))
    if c.a < 1:
        el.set(attr + "-opacity", fmt(c.a))


def _stroke(el, stroke):
    if stroke is None:
        el.set("stroke", "none")
        return
    _paint(el, "stroke", stroke.color)
    el.set("stroke-width", fmt(stroke.width))
    if stroke.dash in DASHES:
        el.set("stroke-dasharray", DASHES[stroke.dash])


def _points(pts) -> str:
    return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pts)


def _marker_path(m: Marker) -> str:
    x, y, r = m.x, m.y, m.size
    shapes = {
        "diamond": [(x, y - r), (x + r, y), (x, y + r), (x - r, y)],
        "utriangle": [(x, y - r), (x + r, y + r * 0.8), (x - r, y + r * 0.8)],
        "dtriangle": [(x, y + r), (x + r, y - r * 0.8), (x - r, y - r * 0.8)],
    }
    if m.shape in shapes:
        pts = shapes[m.shape]
        return "M" + " L".join(f"{fmt(a)},{fmt(b)}" for a, b in pts) + " Z"
    if m.shape in ("cross", "+"):
        return f"M{fmt(x - r)},{fmt(y)} L{fmt(x + r)},{fmt(y)} M{fmt(x)},{fmt(y - r)} L{fmt(x)},{fmt(y + r)}"
    d = r * math.sqrt(0.5)
    return (f"M{fmt(x - d)},{fmt(y - d)} L{fmt(x + d)},{fmt(y + d)} "
            f"M{fmt(x - d)},{fmt(y + d)} L{fmt(x + d)},{fmt(y - d)}")


def _emit(parent, prim):
    if isinstance(prim, Path):
        d = "M" + " L".join(f"{fmt(x)},{fmt(y)}" for x, y in prim.points)
        el = ET.SubElement(parent, "path", d=d, fill="none")
        _stroke(el, prim.stroke)
    elif isinstance(prim, Polygon):
        el = ET.SubElement(parent, "polygon", points=_points(prim.points))
        _paint(el, "fill", prim.fill)
        _stroke(el, prim.stroke)
    elif isinstance(prim, Marker):
        if prim.shape == "circle":
            el = ET.SubElement(parent, "circle", cx=fmt(prim.x), cy=fmt(prim.y), r=fmt(prim.size))
        elif prim.shape == "square":
            el = ET.SubElement(parent, "rect", x=fmt(prim.x - prim.size), y=fmt(prim.y - prim.size),
                               width=fmt(2 * prim.size), height=fmt(2 * prim.size))
        else:
            el = ET.SubElement(parent, "path", d=_marker_path(prim))
        _paint(el, "fill", prim.fill)
        _stroke(el, prim.stroke)
    elif isinstance(prim, TextItem):
        el = ET.SubElement(parent, "text", x=fmt(prim.x), y=fmt(prim.y))
        el.set("font-size", fmt(prim.size))
        el.set("font-family", "sans-serif")
        el.set("text-anchor", ANCHORS.get(prim.halign, "middle"))
        el.set("dominant-baseline", BASELINES.get(prim.valign, "central"))
        _paint(el, "fill", prim.color)
        if prim.rotation:
            el.set("transform", f"rotate({fmt(prim.rotation)} {fmt(prim.x)} {fmt(prim.y)})")
        el.text = prim.text
    elif isinstance(prim, CellGrid):
        el = ET.SubElement(parent, "g")
        el.set("class", "cellgrid")
        for r, row in enumerate(prim.colors):
            for c, color in enumerate(row):
                if color.a == 0:
                    continue
                cell = ET.SubElement(el, "rect", x=fmt(prim.x0 + c * prim.cell_w), y=fmt(prim.y0 + r * prim.cell_h),
                                     width=fmt(prim.cell_w), height=fmt(prim.cell_h))
                _paint(cell, "fill", color)
    else:
        raise TypeError(f"unknown primitive {type(prim).__name__}")
    if hasattr(prim, "role"):
        el.set("class", el.get("class") or prim.role)


def render_svg(scene: SceneGraph) -> str:
    root = ET.Element("svg", xmlns=SVG_NS, version="1.1", width=fmt(scene.width), height=fmt(scene.height))
    root.set("viewBox", f"0 0 {fmt(scene.width)} {fmt(scene.height)}")
    bg = ET.SubElement(root, "rect", x="0", y="0", width=fmt(scene.width), height=fmt(scene.height))
    _paint(bg, "fill", scene.background)
    if scene.groups:
        defs = ET.SubElement(root, "defs")
        for i, g in enumerate(scene.groups):
            cp = ET.SubElement(defs, "clipPath", id=f"clip{i}")
            ET.SubElement(cp, "rect", x=fmt(g.clip.x0), y=fmt(g.clip.y0), width=fmt(g.clip.w), height=fmt(g.clip.h))
        for i, g in enumerate(scene.groups):
            el = ET.SubElement(root, "g")
            el.set("clip-path", f"url(#clip{i})")
            for prim in g.primitives:
                _emit(el, prim)
    ET.indent(root, space=" ")
    body = ET.tostring(root, encoding="unicode", short_empty_elements=True)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"
