import math
import warnings

import numpy as np
import pytest

import plotpipe as pp
from plotpipe.attributes import AttrMap, attribute_level, canonicalize_key, check_rules_acyclic
from plotpipe.colors import DEFAULT_PALETTE, ColorSpec, colormap_lookup, resolve_color
from plotpipe.errors import ArgumentError, LengthMismatchError, PlotError, UnknownColorName
from plotpipe.model import validate
from plotpipe.values import AUTO, UNSET, DataColumn, Matrix, normalize_attr_value, sanitize_data

STEELBLUE = ColorSpec(0.275, 0.51, 0.706, 1.0)


# values -------------------------------------------------------------------

def test_sanitize_maps_missing_to_nan():
    col = sanitize_data([1, None, 3.5, math.nan])
    assert len(col) == 4
    assert col[0] == 1.0 and math.isnan(col[1]) and col[2] == 3.5 and math.isnan(col[3])


def test_datacolumn_equality_treats_nan_as_equal():
    assert DataColumn([1.0, math.nan]) == DataColumn([1.0, math.nan])
    assert DataColumn([1.0], label="a") != DataColumn([1.0], label="b")


def test_datacolumn_is_immutable():
    with pytest.raises(AttributeError):
        DataColumn([1.0]).values = ()


def test_matrix_ragged_rejected():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


def test_normalize_attr_value_kinds():
    assert normalize_attr_value(None) is UNSET
    assert normalize_attr_value([1, 2.5]) == (1.0, 2.5)
    assert normalize_attr_value(np.float64(2.0)) == 2.0
    with pytest.raises(TypeError):
        normalize_attr_value([1, "a"])


# colors -------------------------------------------------------------------

def test_named_color_steelblue():
    assert resolve_color("steelblue") == STEELBLUE


def test_palette_index_is_one_based_and_wraps():
    assert resolve_color(1) == STEELBLUE
    assert resolve_color(len(DEFAULT_PALETTE) + 1) == STEELBLUE


def test_auto_color_uses_series_index():
    assert resolve_color(AUTO, series_index=2) == DEFAULT_PALETTE.color(2)


def test_unknown_color_name():
    with pytest.raises(UnknownColorName):
        resolve_color("notacolor")


def test_color_channels_validated():
    with pytest.raises(ValueError):
        ColorSpec(1.5, 0, 0)


def test_colormap_endpoints_and_nan():
    assert colormap_lookup("viridis", 0.0) != colormap_lookup("viridis", 1.0)
    assert colormap_lookup("viridis", math.nan).a == 0.0


# attributes ---------------------------------------------------------------

@pytest.mark.parametrize("alias,canon", [
    ("c", "seriescolor"), ("color", "seriescolor"), ("colour", "seriescolor"),
    ("seriescolors", "seriescolor"), ("lw", "linewidth"), ("xlims", "xlimits"), ("ms", "markersize"),
])
def test_aliases_canonicalize(alias, canon):
    assert canonicalize_key(alias) == canon


def test_unknown_key_warns_and_passes_through():
    with pytest.warns(pp.UnknownAttributeWarning):
        assert canonicalize_key("wibble") == "wibble"


def test_attrmap_rejects_alias_keys():
    m = AttrMap()
    with pytest.raises(KeyError):
        m["c"] = "red"


def test_attribute_levels():
    assert attribute_level("size") == "plot"
    assert attribute_level("title") == "subplot"
    assert attribute_level("xlimits") == "axis"
    assert attribute_level("linecolor") == "series"


def test_default_rules_are_acyclic():
    check_rules_acyclic()


def test_bar_linecolor_defaults_black_path_inherits_seriescolor():
    r = pp.resolve(pp.plot(pp.plot([1, 2, 3], c="red")))
    s = r.series[0]
    red = resolve_color("red")
    assert s.attrs["linecolor"] == red and s.attrs["markercolor"] == red and s.attrs["fillcolor"] == red
    b = pp.resolve(pp.bar([1, 2, 3], c="red")).series[0]
    assert b.attrs["linecolor"] == ColorSpec(0, 0, 0, 1) and b.attrs["fillcolor"] == red


def test_user_value_beats_default():
    b = pp.resolve(pp.bar([1, 2], linecolor="blue")).series[0]
    assert b.attrs["linecolor"] == resolve_color("blue")


def test_palette_per_subplot():
    p = pp.plot(pp.plot([1, 2]), pp.plot([2, 3]))
    r = pp.resolve(p)
    assert r.series[0].attrs["seriescolor"] == r.series[1].attrs["seriescolor"] == STEELBLUE


def test_auto_labels_count_primary_series():
    r = pp.resolve(pp.plot([[1, 2], [3, 4]]))
    assert [s.attrs["label"] for s in r.series] == ["y1", "y2"]


# model --------------------------------------------------------------------

def test_plot_is_delayed_and_unresolved():
    p = pp.plot([1, 2, 3])
    assert not p.resolved
    assert p.series[0].x == DataColumn([1.0, 2.0, 3.0])


def test_plot_mut_adds_series_and_attrs():
    p = pp.plot([1, 2])
    pp.plot_(p, [3, 4], label="b")
    pp.plot_(p, title="t")
    assert len(p.series) == 2 and p.series[1].attrs["label"] == "b"
    assert p.subplots[0].attrs["title"] == "t"


def test_plot_mut_without_data_restyles_series():
    p = pp.plot([1, 2])
    pp.plot_(p, lw=3)
    assert p.series[0].attrs["linewidth"] == 3.0


def test_resolved_plot_cannot_be_mutated():
    r = pp.resolve(pp.plot([1, 2]))
    with pytest.raises(PlotError):
        pp.plot_(r, [1])


def test_resolve_does_not_touch_input():
    p = pp.plot([1, 2], c="red")
    before = repr(p)
    pp.resolve(p)
    assert repr(p) == before


def test_resolve_is_idempotent():
    r = pp.resolve(pp.plot([1, 2, 3]))
    assert pp.resolve(r) is r


def test_length_mismatch():
    with pytest.raises(LengthMismatchError):
        pp.plot([1, 2, 3], [1, 2])


def test_uninterpretable_arguments_list_forms():
    with pytest.raises(ArgumentError) as e:
        pp.plot(object(), object(), object())
    assert "accepted argument forms" in str(e.value)


def test_layout_kwarg_creates_subplots():
    p = pp.plot([1, 2], [3, 4], layout=(2, 1))
    assert len(p.subplots) == 2


def test_subplot_out_of_range():
    with pytest.raises(PlotError):
        pp.plot([1, 2], subplot=3)


def test_per_series_label_list_is_split():
    p = pp.plot([math.sin, math.cos], 0, 1, label=["s", "c"])
    assert [s.attrs["label"] for s in p.series] == ["s", "c"]


def test_validate_accepts_constructed_specs():
    validate(pp.plot(pp.plot([1]), pp.plot([2]), layout=(1, 2)))


def test_shorthand_sets_seriestype():
    assert pp.scatter([1, 2]).series[0].attrs["seriestype"] == "scatter"
    assert pp.scatter([1, 2], seriestype="path").series[0].attrs["seriestype"] == "path"


def test_unknown_attribute_kept_on_series():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p = pp.plot([1, 2], wibble=3)
    assert p.series[0].attrs["wibble"] == 3
