"""Lossless JSON container for plots at any stage of the pipeline.

Values JSON cannot express directly are tagged objects: ``{"$color": ...}``,
``{"$auto": true}``, ``{"$unset": true}``, ``{"$float": "nan"}``,
``{"$tuple": [...]}``, ``{"$column": ...}``, ``{"$matrix": ...}`` and
``{"$obj": tag, ...}`` for registered domain payloads. Keys this version
does not know are kept as-is and written back out unchanged.
"""

from __future__ import annotations

import datetime
import json
import math

from .. import layout as lay
from ..attributes import AttrMap
from ..colors import ColorSpec
from ..errors import SpecFormatError, VersionMismatch
from ..model import AxisSpec, PlotSpec, SeriesSpec, SubplotSpec
from ..values import AUTO, UNSET, DataColumn, Matrix

FORMAT_VERSION = "1"
OPAQUE = "$opaque"

_CODECS: dict[type, tuple[str, callable]] = {}
_DECODERS: dict[str, callable] = {}
_builtin_loaded = False


def register_payload_codec(cls: type, tag: str, encode, decode):
    """Teach the container to store ``cls`` values found in data payloads."""
    _CODECS[cls] = (tag, encode)
    _DECODERS[tag] = decode


def _register_builtin():
    global _builtin_loaded
    if _builtin_loaded:
        return
    _builtin_loaded = True
    from ..recipes.demo import Measurement, SampledSolution

    register_payload_codec(Measurement, "Measurement",
                           lambda m: {"value": enc(m.value), "uncertainty": enc(m.uncertainty)},
                           lambda d: Measurement(dec(d["value"]), dec(d["uncertainty"])))
    register_payload_codec(
        SampledSolution, "SampledSolution",
        lambda s: {"timestamps": enc(s.timestamps), "states": enc(s.states), "labels": enc(s.labels)},
        lambda d: SampledSolution(dec(d["timestamps"]), dec(d["states"]), dec(d["labels"])))
    register_payload_codec(datetime.date, "date", lambda v: {"iso": v.isoformat()},
                           lambda d: datetime.date.fromisoformat(d["iso"]))


def _enc_float(v: float):
    if math.isfinite(v):
        return v
    return {"$float": "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")}


def _dec_float(s: str) -> float:
    return {"nan": math.nan, "inf": math.inf, "-inf": -math.inf}[s]


def enc(v):
    if v is AUTO:
        return {"$auto": True}
    if v is UNSET:
        return {"$unset": True}
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, float):
        return _enc_float(v)
    if isinstance(v, ColorSpec):
        return {"$color": [v.r, v.g, v.b, v.a]}
    if isinstance(v, DataColumn):
        out = {"$column": [_enc_float(x) for x in v.values]}
        if v.label is not None:
            out["label"] = v.label
        return out
    if isinstance(v, Matrix):
        return {"$matrix": [[_enc_float(x) for x in r] for r in v.rows]}
    if isinstance(v, tuple):
        return {"$tuple": [enc(x) for x in v]}
    if isinstance(v, list):
        return [enc(x) for x in v]
    if isinstance(v, dict):
        if any(not isinstance(k, str) for k in v):
            raise SpecFormatError("only string keys can be stored")
        return {k: enc(x) for k, x in v.items()}
    for cls in type(v).__mro__:
        if cls in _CODECS:
            tag, encode = _CODECS[cls]
            return {"$obj": tag, **encode(v)}
    raise SpecFormatError(f"cannot store a value of type {type(v).__name__}; register a payload codec")


def dec(v):
    if isinstance(v, list):
        return [dec(x) for x in v]
    if not isinstance(v, dict):
        return v
    if "$auto" in v:
        return AUTO
    if "$unset" in v:
        return UNSET
    if "$float" in v:
        return _dec_float(v["$float"])
    if "$color" in v:
        return ColorSpec(*v["$color"])
    if "$column" in v:
        return DataColumn([_dec_float(x["$float"]) if isinstance(x, dict) else float(x) for x in v["$column"]],
                          v.get("label"))
    if "$matrix" in v:
        return Matrix([[_dec_float(x["$float"]) if isinstance(x, dict) else x for x in r] for r in v["$matrix"]])
    if "$tuple" in v:
        return tuple(dec(x) for x in v["$tuple"])
    if "$obj" in v:
        tag = v["$obj"]
        if tag not in _DECODERS:
            raise SpecFormatError(f"no payload codec registered for {tag!r}")
        return _DECODERS[tag]({k: x for k, x in v.items() if k != "$obj"})
    return {k: dec(x) for k, x in v.items()}


def _enc_attrs(m: AttrMap) -> dict:
    return {k: enc(v) for k, v in m.items()}


def _dec_attrs(d) -> AttrMap:
    out = AttrMap()
    for k, v in d.items():
        out[k] = dec(v)
    return out


def _enc_layout(node):
    if isinstance(node, lay.Leaf):
        return {"leaf": node.index}
    if isinstance(node, lay.Blank):
        return {"blank": True}
    return {"grid": {"rows": node.rows, "cols": node.cols, "widths": list(node.widths),
                     "heights": list(node.heights), "children": [_enc_layout(c) for c in node.children]}}


def _dec_layout(d):
    if "leaf" in d:
        return lay.Leaf(int(d["leaf"]))
    if "blank" in d:
        return lay.Blank()
    g = d["grid"]
    return lay.Grid(g["rows"], g["cols"], tuple(_dec_layout(c) for c in g["children"]),
                    tuple(g["widths"]), tuple(g["heights"]))


def _enc_extras(extras: dict) -> tuple[dict, dict]:
    extras = dict(extras)
    opaque = extras.pop(OPAQUE, {})
    return {"extras": enc(extras)}, opaque


def _with_opaque(obj: dict, extras: dict) -> dict:
    body, opaque = _enc_extras(extras)
    obj.update(body)
    for k, v in opaque.items():
        obj.setdefault(k, v)
    return obj


def _split_known(d: dict, known: set) -> dict:
    extras = dec(d.get("extras", {}))
    unknown = {k: v for k, v in d.items() if k not in known and k != "extras"}
    if unknown:
        extras[OPAQUE] = unknown
    return extras


_SERIES_FIELDS = ("x", "y", "z", "xerror", "yerror", "fillrange")


def spec_to_data(spec: PlotSpec) -> dict:
    _register_builtin()
    subplots = []
    for sp in spec.subplots:
        axes = {k: _with_opaque({"attrs": _enc_attrs(a.attrs)}, a.extras) for k, a in sp.axes.items()}
        subplots.append(_with_opaque({"attrs": _enc_attrs(sp.attrs), "axes": axes, "series": list(sp.series)},
                                     sp.extras))
    series = []
    for s in spec.series:
        obj = {f: enc(getattr(s, f)) for f in _SERIES_FIELDS}
        obj["attrs"] = _enc_attrs(s.attrs)
        obj["subplot"] = s.subplot_index
        series.append(_with_opaque(obj, s.extras))
    top = {"format": "plotpipe-spec", "version": FORMAT_VERSION, "resolved": spec.resolved,
           "attrs": _enc_attrs(spec.attrs), "layout": _enc_layout(spec.layout),
           "subplots": subplots, "series": series}
    return _with_opaque(top, spec.extras)


def serialize_spec(spec: PlotSpec) -> bytes:
    data = spec_to_data(spec)
    return (json.dumps(data, sort_keys=True, indent=1, allow_nan=False) + "\n").encode("utf-8")


def data_to_spec(data) -> PlotSpec:
    _register_builtin()
    if not isinstance(data, dict) or "version" not in data:
        raise SpecFormatError("not a plot container: missing version field")
    if data["version"] != FORMAT_VERSION:
        raise VersionMismatch(f"container version {data['version']!r} is not supported "
                              f"(this build reads version {FORMAT_VERSION!r})")
    try:
        subplots = []
        for sd in data["subplots"]:
            axes = {}
            for k, ad in sd["axes"].items():
                axes[k] = AxisSpec(k, _dec_attrs(ad["attrs"]), _split_known(ad, {"attrs"}))
            subplots.append(SubplotSpec(_dec_attrs(sd["attrs"]), axes, list(sd["series"]),
                                        _split_known(sd, {"attrs", "axes", "series"})))
        series = []
        for d in data["series"]:
            s = SeriesSpec(**{f: dec(d.get(f)) for f in _SERIES_FIELDS}, attrs=_dec_attrs(d["attrs"]),
                           subplot_index=int(d["subplot"]),
                           extras=_split_known(d, set(_SERIES_FIELDS) | {"attrs", "subplot"}))
            series.append(s)
        top_known = {"format", "version", "resolved", "attrs", "layout", "subplots", "series"}
        return PlotSpec(_dec_attrs(data["attrs"]), _dec_layout(data["layout"]), subplots, series,
                        bool(data["resolved"]), _split_known(data, top_known))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, SpecFormatError):
            raise
        raise SpecFormatError(f"malformed plot container: {e!r}") from e


def deserialize_spec(blob) -> PlotSpec:
    if isinstance(blob, bytes):
        blob = blob.decode("utf-8")
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"malformed plot container: {e}") from e
    return data_to_spec(data)
