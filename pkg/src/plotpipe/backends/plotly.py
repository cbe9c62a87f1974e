"""Plotly figure JSON, built from the resolved plot rather than the scene.

Plotly is declarative, so traces keep their data coordinates and plotly
does its own drawing. Axis ranges and subplot domains come from the same
helpers the scene lowering uses.
"""

from __future__ import annotations

import json
import math

from ..colors import COLORMAPS, ColorSpec
from ..values import DataColumn, Matrix
from .scene import axis_frames, canvas_size, layout_boxes

#: seriestype -> (trace type, mode)
TRACE_TYPES = {
    "path": ("scatter", "lines"),
    "scatter": ("scatter", "markers"),
    "shape": ("scatter", "lines"),
    "heatmap-grid": ("heatmap", None),
    "text-annotation": ("scatter", "text"),
}
DASHES = {"solid": "solid", "dash": "dash", "dot": "dot", "dashdot": "dashdot"}
MARKERS = {"circle": "circle", "square": "square", "diamond": "diamond", "utriangle": "triangle-up",
           "dtriangle": "triangle-down", "cross": "cross", "xcross": "x"}


def rgba(c: ColorSpec) -> str:
    return c.rgba_string()


def _num(v: float):
    return v if math.isfinite(v) else None


def _column(col) -> list:
    if col is None:
        return []
    vals = col.values if isinstance(col, DataColumn) else col
    return [_num(float(v)) for v in vals]


def _axis_names(j: int) -> tuple[str, str]:
    return ("x", "y") if j == 0 else (f"x{j + 1}", f"y{j + 1}")


def _trace(s, j: int) -> dict:
    a = s.attrs
    ttype, mode = TRACE_TYPES.get(s.seriestype, ("scatter", "lines"))
    xa, ya = _axis_names(j)
    t = {"type": ttype, "name": str(a.get("label", "")), "showlegend": bool(a.get("primary", True)),
         "xaxis": xa, "yaxis": ya}
    if s.seriestype not in TRACE_TYPES:
        t["meta"] = {"warning": f"seriestype {s.seriestype!r} is not supported by plotly; drawn as scatter"}
    if ttype == "heatmap":
        z = s.z if isinstance(s.z, Matrix) else Matrix(s.z)
        cmap = COLORMAPS[a["colormap"]]
        n = len(cmap)
        t.update(x=_column(s.x), y=_column(s.y), z=[[_num(v) for v in row] for row in z.rows],
                 zmin=0, zmax=1, showscale=False,
                 colorscale=[[i / (n - 1), rgba(c)] for i, c in enumerate(cmap.colors)])
        return t
    t.update(x=_column(s.x), y=_column(s.y))
    has_marker = a["marker"] not in ("none", False)
    if s.seriestype == "path" and has_marker:
        mode = "lines+markers"
    t["mode"] = mode
    if "lines" in mode:
        t["line"] = {"color": rgba(a["linecolor"]), "width": float(a["linewidth"]),
                     "dash": DASHES.get(a["linestyle"], "solid")}
    if "markers" in mode:
        color = a["markercolor"]
        t["marker"] = {
            "color": [rgba(c) for c in color] if isinstance(color, tuple) else rgba(color),
            "size": 2 * float(a["markersize"]),
            "symbol": MARKERS.get(a["marker"], "circle"),
            "line": {"color": rgba(a["markerstrokecolor"]), "width": 1},
        }
    if s.seriestype == "shape":
        f = a["fillcolor"]
        t["fill"] = "toself"
        t["fillcolor"] = rgba(ColorSpec(f.r, f.g, f.b, f.a * float(a["fillalpha"])))
    if s.seriestype == "text-annotation":
        t["text"] = [str(v) for v in a.get("texts", ())]
    if s.yerror is not None:
        t["error_y"] = {"type": "data", "array": _column(s.yerror), "visible": True,
                        "color": rgba(a["markerstrokecolor"])}
    if s.xerror is not None:
        t["error_x"] = {"type": "data", "array": _column(s.xerror), "visible": True,
                        "color": rgba(a["markerstrokecolor"])}
    return t


def _range(frame) -> list:
    lo, hi = frame.lo, frame.hi
    if frame.scale == "log10":
        lo, hi = math.log10(lo), math.log10(hi)
    return [hi, lo] if frame.flip else [lo, hi]


def plotly_figure(spec) -> dict:
    """The figure as a plain dict (``data`` and ``layout``)."""
    w, h = canvas_size(spec)
    _, boxes = layout_boxes(spec)
    data = [_trace(s, s.subplot_index) for s in spec.series]
    layout = {
        "width": w, "height": h,
        "paper_bgcolor": rgba(spec.attrs["background"]),
        "showlegend": any(t["showlegend"] for t in data),
        "annotations": [],
    }
    for j, box in sorted(boxes.items()):
        sp = spec.subplots[j]
        frames = axis_frames(spec, j)
        xa, ya = _axis_names(j)
        xkey, ykey = "xaxis" + xa[1:], "yaxis" + ya[1:]
        for key, letter, anchor, domain in (
            (xkey, "x", ya, [box.x0 / w, box.x1 / w]),
            (ykey, "y", xa, [1 - box.y1 / h, 1 - box.y0 / h]),
        ):
            f = frames[letter]
            layout[key] = {
                "domain": [round(domain[0], 6), round(domain[1], 6)],
                "range": _range(f),
                "type": "log" if f.scale == "log10" else "linear",
                "title": {"text": str(sp.axes[letter].label)},
                "anchor": anchor,
                "showgrid": bool(sp.axes[letter].attrs.get(letter + "grid", True)),
                "tickvals": list(f.ticks.positions),
                "ticktext": list(f.ticks.labels),
            }
        if j == 0:
            layout["plot_bgcolor"] = rgba(sp.attrs["background_inside"])
        if sp.attrs["title"]:
            layout["annotations"].append({
                "text": str(sp.attrs["title"]), "showarrow": False, "xref": "paper", "yref": "paper",
                "x": round((box.x0 + box.w / 2) / w, 6), "y": round(1 - box.y0 / h, 6),
                "xanchor": "center", "yanchor": "bottom",
            })
    return {"data": data, "layout": layout}


def render_plotly_json(spec) -> str:
    return json.dumps(plotly_figure(spec), indent=1, sort_keys=True, allow_nan=False) + "\n"
