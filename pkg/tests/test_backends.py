import json
import math
import random
import warnings
import xml.etree.ElementTree as ET
from importlib import resources

import jsonschema
import pytest

import fixtures
from fuzz import random_spec
import plotpipe as pp
from plotpipe.backends import backend_for_path, backend_names, get_backend
from plotpipe.backends.plotly import plotly_figure
from plotpipe.backends.scene import (
    CellGrid, Marker, Path, Polygon, TextItem, clip_polygon, clip_polyline, lower, scene_hash, split_gaps,
)
from plotpipe.backends.serialize import deserialize_spec, serialize_spec
from plotpipe.backends.svg import fmt, render_svg
from plotpipe.errors import CanvasTooSmall, SpecFormatError, UnresolvedSpec, VersionMismatch
from plotpipe.layout import BoundingBox
from plotpipe.recipes.demo import Measurement
from plotpipe.values import AUTO, UNSET, Matrix

SVG = "{http://www.w3.org/2000/svg}"


def schema(name):
    return json.loads(resources.files("plotpipe.schemas").joinpath(name).read_text())


# clipping -----------------------------------------------------------------------

BOX = BoundingBox(0, 0, 10, 10)


def test_clip_polyline_cuts_at_box():
    runs = clip_polyline([(-5, 5), (5, 5), (15, 5)], BOX)
    assert runs == [[(0.0, 5.0), (5, 5), (10.0, 5.0)]]


def test_clip_polyline_outside_dropped():
    assert clip_polyline([(-5, -5), (-1, -1)], BOX) == []


def test_clip_polygon_inside_box():
    pts = clip_polygon([(-5, -5), (15, -5), (15, 15), (-5, 15)], BOX)
    assert all(BOX.contains_point(x, y) for x, y in pts)
    assert len(pts) == 4


def test_split_gaps():
    runs = split_gaps([1, 2, 3, 4, 5], [1, math.nan, 3, 4, 5])
    assert [len(r) for r in runs] == [1, 3]


# scene ---------------------------------------------------------------------------

def _bbox_of(prim):
    if isinstance(prim, (Path, Polygon)):
        return prim.points
    if isinstance(prim, Marker):
        return [(prim.x, prim.y)]
    if isinstance(prim, CellGrid):
        nr, nc = prim.shape
        return [(prim.x0, prim.y0), (prim.x0 + nc * prim.cell_w, prim.y0 + nr * prim.cell_h)]
    return [(prim.x, prim.y)]


@pytest.mark.parametrize("name", sorted(fixtures.ALL))
def test_primitives_inside_clip(name):
    scene = lower(pp.resolve(fixtures.ALL[name]()))
    for g in scene.groups:
        for prim in g.primitives:
            for x, y in _bbox_of(prim):
                assert g.clip.contains_point(x, y), (name, prim)


def test_lower_requires_resolved():
    with pytest.raises(UnresolvedSpec):
        lower(pp.plot([1, 2]))


def test_scene_has_legend_and_labels():
    scene = lower(pp.resolve(pp.plot([1, 2, 3], label="data", xlabel="time", title="T")))
    texts = {p.role: p.text for p in scene.primitives() if isinstance(p, TextItem) and p.role != "xticklabel"
             and p.role != "yticklabel"}
    assert texts == {"xlabel": "time", "title": "T", "legend-text": "data"}


def test_gap_splits_line():
    scene = lower(pp.resolve(pp.plot([1, 2, None, 4, 5])))
    lines = [p for p in scene.primitives() if isinstance(p, Path) and p.role == "series"]
    assert len(lines) == 2


def test_heatmap_lowered_to_cells():
    scene = lower(pp.resolve(pp.heatmap(Matrix([[1, 2], [3, 4]]))))
    grids = [p for p in scene.primitives() if isinstance(p, CellGrid)]
    assert len(grids) == 1 and grids[0].shape == (2, 2)


def test_scene_hash_stable_and_sensitive():
    a = lower(pp.resolve(pp.plot([1, 2, 3])))
    b = lower(pp.resolve(pp.plot([1, 2, 3])))
    c = lower(pp.resolve(pp.plot([1, 2, 4])))
    assert scene_hash(a) == scene_hash(b) != scene_hash(c)


# svg -------------------------------------------------------------------------------

def test_fmt():
    assert fmt(1.0) == "1" and fmt(-0.0) == "0" and fmt(0.123456) == "0.1235" and fmt(-1e-7) == "0"


def test_svg_structure_and_counts():
    scene = lower(pp.resolve(pp.scatter([1, 2, 3], [3, 1, 2], label="pts")))
    root = ET.fromstring(render_svg(scene))
    assert root.tag == SVG + "svg" and root.get("width") == "600"
    n_paths = sum(1 for p in scene.primitives() if isinstance(p, Path))
    assert len(root.findall(f".//{SVG}path")) >= n_paths
    assert len(root.findall(f".//{SVG}circle")) == sum(1 for p in scene.primitives() if isinstance(p, Marker))
    texts = [t.text for t in root.iter(SVG + "text")]
    assert "pts" in texts


def test_svg_empty_scene_is_valid():
    from plotpipe.backends.scene import SceneGraph
    from plotpipe.colors import WHITE
    root = ET.fromstring(render_svg(SceneGraph(100, 50, WHITE)))
    assert root.get("viewBox") == "0 0 100 50"


# unicode --------------------------------------------------------------------------

def test_unicode_dimensions():
    out = pp.render(pp.plot([1, 3, 2]), "unicode", cols=40, rows=12)
    lines = out.split("\n")
    assert lines[-1] == "" and len(lines) == 13
    assert all(len(line) == 40 for line in lines[:-1])


def test_unicode_uses_braille_and_box_chars():
    out = pp.render(pp.plot([1, 3, 2]), "unicode")
    assert any(0x2800 < ord(ch) <= 0x28FF for ch in out)
    assert "┌" in out and "┘" in out


def test_unicode_too_small():
    with pytest.raises(CanvasTooSmall):
        pp.render(pp.plot([1]), "unicode", cols=10, rows=4)


def test_unicode_color_adds_ansi():
    assert "\x1b[38;2;" in pp.render(pp.plot([1, 2]), "unicode", color=True)


def test_unicode_heatmap_shades():
    out = pp.render(pp.heatmap(Matrix([[0, 1], [2, 3]])), "unicode")
    assert any(ch in out for ch in "░▒▓█")


# plotly ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(fixtures.ALL))
def test_plotly_output_matches_schema(name):
    fig = json.loads(pp.render(fixtures.ALL[name](), "plotly"))
    jsonschema.validate(fig, schema("plotly-subset.json"))


def test_plotly_errors_are_native():
    fig = plotly_figure(pp.resolve(pp.plot([Measurement(1, 0.5), Measurement(2, 0.25)])))
    assert fig["data"][0]["error_y"]["array"] == [0.5, 0.25]


def test_plotly_log_axis_range():
    fig = plotly_figure(pp.resolve(pp.plot([1, 10, 100], yscale="log10", ylims=(1, 1000))))
    assert fig["layout"]["yaxis"]["type"] == "log" and fig["layout"]["yaxis"]["range"] == [0.0, 3.0]


def test_plotly_missing_values_are_null():
    fig = plotly_figure(pp.resolve(pp.plot([1, None, 3])))
    assert fig["data"][0]["y"] == [1.0, None, 3.0]


def test_plotly_subplots_have_domains():
    fig = plotly_figure(pp.resolve(fixtures.subplots()))
    assert {"xaxis", "xaxis2", "xaxis3"} <= set(fig["layout"])
    assert fig["data"][1]["xaxis"] == "x2"


# registry -------------------------------------------------------------------------

def test_backend_registry():
    assert backend_names() == ["plotly", "spec", "svg", "unicode"]
    assert get_backend("svg").capabilities.consumes_scene
    assert not get_backend("plotly").capabilities.consumes_scene
    assert backend_for_path("a/b.plot.json").capabilities.name == "spec"
    assert backend_for_path("x.svg").capabilities.name == "svg"
    with pytest.raises(ValueError):
        get_backend("png")


def test_save_writes_file(tmp_path):
    p = pp.plot([1, 2, 3])
    pp.save(p, tmp_path / "out.svg")
    assert (tmp_path / "out.svg").read_text().startswith("<?xml")


def test_render_does_not_change_spec():
    p = pp.plot([1, 2, 3])
    before = repr(p)
    pp.render(p, "svg", size=(300, 200))
    assert repr(p) == before


def test_scene_backends_receive_same_scene():
    hashes = {}
    p = fixtures.showcase()
    for name in ("svg", "unicode"):
        pp.render(p, name, on_scene=lambda s, n=name: hashes.__setitem__(n, scene_hash(s)))
    assert hashes["svg"] == hashes["unicode"]


# serialization ----------------------------------------------------------------------

def test_serialize_round_trip_fuzzed():
    rng = random.Random(11)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for _ in range(200):
            p = random_spec(rng)
            blob = serialize_spec(p)
            q = deserialize_spec(blob)
            assert q == p
            assert serialize_spec(q) == blob


def test_serialized_container_matches_schema():
    data = json.loads(serialize_spec(pp.resolve(fixtures.showcase())))
    jsonschema.validate(data, schema("plotspec-v1.json"))


def test_sentinels_round_trip():
    p = pp.plot([1, 2], c="auto")
    p.series[0].attrs["markersize"] = UNSET
    q = deserialize_spec(serialize_spec(p))
    assert q.series[0].attrs["seriescolor"] == "auto"
    assert q.series[0].attrs["markersize"] is UNSET
    assert pp.resolve(q) == pp.resolve(p)


def test_version_mismatch():
    data = json.loads(serialize_spec(pp.plot([1])))
    data["version"] = "2"
    with pytest.raises(VersionMismatch):
        deserialize_spec(json.dumps(data))


def test_malformed_container():
    with pytest.raises(SpecFormatError):
        deserialize_spec(b"{not json")
    with pytest.raises(SpecFormatError):
        deserialize_spec(json.dumps({"version": "1"}))


def test_unknown_keys_preserved():
    data = json.loads(serialize_spec(pp.plot([1])))
    data["series"][0]["from_the_future"] = {"x": 1}
    blob = json.dumps(data)
    again = json.loads(serialize_spec(deserialize_spec(blob)))
    assert again["series"][0]["from_the_future"] == {"x": 1}


def test_auto_sentinel_is_tagged():
    p = pp.plot([1])
    p.series[0].attrs["seriescolor"] = AUTO
    data = json.loads(serialize_spec(p))
    assert data["series"][0]["attrs"]["seriescolor"] == {"$auto": True}
    assert deserialize_spec(json.dumps(data)).series[0].attrs["seriescolor"] is AUTO
