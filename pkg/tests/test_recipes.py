import math
import random
import warnings

import numpy as np
import pytest

import plotpipe as pp
from oracles import box_oracle, fd_bin_count_oracle, histogram_count_oracle, showcase_oracle
from plotpipe.errors import (
    EmptyData, LengthMismatchError, NoRecipeFound, RecipeReplacedWarning, RecursionLimitExceeded,
)
from plotpipe.recipes import (
    ArrayOf, RecipeKind, RecipeOutput, RecipeRegistry, apply_attr_directive, default, default_registry,
    force, series_recipe, type_recipe, user_recipe,
)
from plotpipe.recipes.demo import Measurement, SampledSolution
from plotpipe.recipes.engine import Trace, apply_recipes
from plotpipe.recipes.std import (
    box_stats, errorbar_decoration, histogram_bins, normalize_z, register_std_recipes,
)
from plotpipe.values import DataColumn, Matrix


def fresh_registry():
    reg = RecipeRegistry()
    register_std_recipes(reg)
    return reg


# directives ----------------------------------------------------------------

def test_force_overrides_default_yields():
    attrs = {"linewidth": 3.0}
    assert apply_attr_directive(attrs, force("lw", 1.0))["linewidth"] == 1.0
    assert apply_attr_directive(attrs, default("lw", 1.0))["linewidth"] == 3.0
    assert apply_attr_directive({}, default("lw", 1.0))["linewidth"] == 1.0


def test_directive_canonicalizes_key():
    assert force("c", "red").key == "seriescolor"


def test_apply_attr_directive_does_not_mutate():
    attrs = pp.AttrMap({"linewidth": 2.0})
    apply_attr_directive(attrs, force("linewidth", 5.0))
    assert attrs["linewidth"] == 2.0


# registry ------------------------------------------------------------------

class Celsius(float):
    pass


def test_registry_lookup_by_mro_and_arrayof():
    reg = RecipeRegistry()

    @user_recipe(ArrayOf(float))
    def floats(data, attrs):
        return RecipeOutput(data.x, data.y)

    reg.register(floats)
    assert reg.lookup_user((Celsius(1.0), Celsius(2.0))) is floats
    assert reg.lookup_user((1, 2.0)) is None


def test_registry_replacement_warns():
    reg = RecipeRegistry()
    r = series_recipe("foo")(lambda d, a: [])
    reg.register(r)
    with pytest.warns(RecipeReplacedWarning):
        reg.register(r)


def test_registry_copy_is_independent():
    reg = fresh_registry()
    c = reg.copy()
    c.register(series_recipe("only-in-copy")(lambda d, a: []))
    assert not reg.is_known_seriestype("only-in-copy")
    assert c.is_known_seriestype("only-in-copy")


def test_recipe_names():
    assert default_registry().lookup_user(SampledSolution([0], [[1]])).name == "user:SampledSolution"


def test_recipe_validates_matcher():
    with pytest.raises(ValueError):
        series_recipe(3)(lambda d, a: [])


# engine ----------------------------------------------------------------------

def test_primitive_series_pass_through():
    p = pp.plot([1, 2, 3])
    out = apply_recipes(fresh_registry(), p)
    assert out.series[0].y == p.series[0].y


def test_unknown_seriestype():
    with pytest.raises(NoRecipeFound):
        pp.resolve(pp.plot([1, 2], seriestype="nosuch"))


def test_unknown_domain_type():
    with pytest.raises(NoRecipeFound):
        pp.resolve(pp.plot([object(), object()]))


def test_recursion_limit():
    reg = fresh_registry()
    reg.register(series_recipe("loop")(lambda d, a: [RecipeOutput(d.x, d.y, None, [force("seriestype", "loop")])]))
    with pytest.raises(RecursionLimitExceeded) as e:
        apply_recipes(reg, pp.plot([1, 2], seriestype="loop"), max_depth=5)
    assert e.value.depth == 5


def test_type_recipe_maps_elements():
    import datetime
    p = pp.plot([datetime.date(2024, 1, 1), datetime.date(2024, 1, 3)], [1, 2])
    r = pp.resolve(p)
    d0 = float(datetime.date(2024, 1, 1).toordinal())
    assert r.series[0].x == DataColumn([d0, d0 + 2])


def test_outer_force_pins_key_over_inner_force():
    reg = fresh_registry()

    class Outer:
        pass

    class Inner:
        pass

    reg.register(user_recipe(Outer)(lambda d, a: [RecipeOutput(None, (Inner(),), None, [force("lw", 7.0)])]))
    reg.register(user_recipe(ArrayOf(Inner))(lambda d, a: [RecipeOutput(None, [1.0], None, [force("lw", 2.0)])]))
    out = apply_recipes(reg, pp.plot(Outer()))
    assert out.series[0].attrs["linewidth"] == 7.0


def test_recipe_receives_read_only_attrs():
    reg = fresh_registry()
    seen = {}

    def peek(data, attrs):
        seen.update(attrs)
        with pytest.raises(TypeError):
            attrs["linewidth"] = 1
        return [RecipeOutput(data.x, data.y, None, [force("seriestype", "path")])]

    reg.register(series_recipe("peek")(peek))
    apply_recipes(reg, pp.plot([1, 2], seriestype="peek", lw=4))
    assert seen["linewidth"] == 4.0


def test_plot_recipe_sets_layout():
    r = pp.resolve(pp.plot([1, 2, 3], [3, 1, 2], seriestype="scatterhist"))
    assert len(r.subplots) == 2
    assert {s.subplot_index for s in r.series} == {0, 1}


def test_trace_records_chain():
    t = Trace()
    apply_recipes(default_registry(), pp.histogram([1, 2, 2, 3]), t)
    assert t.chains == [("series:histogram", "series:bar")]
    assert [e.kind for e in t.entries] == [RecipeKind.SERIES, RecipeKind.SERIES]


# std recipes -----------------------------------------------------------------

def test_bar_becomes_closed_rectangles():
    r = pp.resolve(pp.bar([1, 2], [3, 4]))
    s = r.series[0]
    assert s.seriestype == "shape"
    xs = [v for v in s.x if not math.isnan(v)]
    assert min(xs) == pytest.approx(0.6) and max(xs) == pytest.approx(2.4)
    assert max(v for v in s.y if not math.isnan(v)) == 4.0


def test_histogram_explicit_and_counted_bins():
    h = histogram_bins([0, 1, 2, 3, 4], bins=[0, 2, 4])
    assert h.counts == (2, 3)
    h = histogram_bins([5.0], bins=1)
    assert h.counts == (1,) and h.edges == (4.5, 5.5)


def test_histogram_auto_bins_cover_and_sum():
    rng = np.random.default_rng(1)
    vals = rng.standard_normal(10_000).tolist()
    h = histogram_bins(vals)
    assert sum(h.counts) == 10_000
    assert h.edges[0] <= min(vals) and h.edges[-1] >= max(vals)
    assert len(h.counts) == fd_bin_count_oracle(vals)


def test_histogram_zero_iqr_uses_sturges():
    vals = [1.0] * 15 + [2.0]
    assert len(histogram_bins(vals).counts) == fd_bin_count_oracle(vals) == 5


def test_histogram_counts_match_brute_force():
    rng = random.Random(3)
    for _ in range(30):
        vals = [rng.gauss(0, 1) for _ in range(rng.randint(1, 200))]
        h = histogram_bins(vals)
        assert list(h.counts) == histogram_count_oracle(vals, h.edges)


def test_histogram_empty():
    with pytest.raises(EmptyData):
        histogram_bins([math.nan])


def test_box_stats_example():
    b = box_stats([1, 2, 3, 4, 5, 6, 7, 8, 9, 100])
    assert (b.q1, b.median, b.q3) == (3.25, 5.5, 7.75)
    assert b.outliers == (100.0,) and b.whisker_hi == 9.0 and b.whisker_lo == 1.0


def test_box_stats_match_oracle():
    rng = random.Random(5)
    for _ in range(50):
        vals = [rng.expovariate(1.0) for _ in range(rng.randint(1, 60))]
        got, want = box_stats(vals), box_oracle(vals)
        for k in ("q1", "median", "q3", "whisker_lo", "whisker_hi"):
            assert abs(getattr(got, k) - want[k]) <= 1e-12
        assert list(got.outliers) == want["outliers"]


def test_boxplot_expands_to_primitives():
    r = pp.resolve(pp.boxplot([1, 1, 1, 2, 2, 2], [1, 2, 3, 4, 5, 6]))
    assert {s.seriestype for s in r.series} <= {"shape", "path", "scatter"}
    assert sum(1 for s in r.series if s.attrs["primary"]) == 1


def test_normalize_z():
    assert normalize_z(Matrix([[0, 5], [10, math.nan]])).rows[0] == (0.0, 0.5)
    assert normalize_z(Matrix([[5, 5]]), (0, 10)).rows == ((0.5, 0.5),)
    assert normalize_z(Matrix([[5, 5]])).rows == ((1.0, 1.0),)


def test_heatmap_resolves_to_grid():
    r = pp.resolve(pp.heatmap(Matrix([[1, 2], [3, 4]])))
    assert r.series[0].seriestype == "heatmap-grid"


def test_errorbar_decoration_segments():
    out = errorbar_decoration([1, 2], [5, 6], yerror=[0.5, 1.0])
    ys = [v for v in out.y if not math.isnan(v)]
    assert 4.5 in ys and 5.5 in ys and 5.0 in ys and 7.0 in ys
    with pytest.raises(LengthMismatchError):
        errorbar_decoration([1, 2], [5, 6], yerror=[0.5])


# showcase ---------------------------------------------------------------------

def showcase_input():
    ts = [0.0, 0.5, 1.0, 1.5, 2.0]
    prey = [Measurement(1.0 + i, 0.1 * (i + 1)) for i in range(5)]
    pred = [Measurement(2.0 - 0.25 * i, 0.05) for i in range(5)]
    return ts, (prey, pred), ("prey", "predator")


def test_showcase_matches_hand_unrolled_expansion():
    ts, states, labels = showcase_input()
    p = pp.plot(SampledSolution(ts, states, labels), seriestype="scatter")
    trace = Trace()
    out = apply_recipes(default_registry(), p, trace)
    assert trace.chains == [("user:SampledSolution", "user:Measurement[]")] * 2
    expected = showcase_oracle(ts, states, labels)
    assert len(out.series) == len(expected)
    for s, e in zip(out.series, expected):
        assert list(s.x) == e["x"] and list(s.y) == e["y"] and list(s.yerror) == e["yerror"]
        assert s.attrs["label"] == e["label"] and s.seriestype == "scatter"
    assert out.subplots[0].axes["x"].label == "t"


def test_measurement_rejects_negative_uncertainty():
    with pytest.raises(ValueError):
        Measurement(1.0, -0.1)


def test_call_site_label_beats_recipe_default():
    ts, states, _ = showcase_input()
    r = pp.resolve(pp.plot(SampledSolution(ts, states), label="mine"))
    assert [s.attrs["label"] for s in r.series] == ["mine", "mine"]


def test_recipe_force_beats_call_site():
    r = pp.resolve(pp.plot([Measurement(1, 0.5), Measurement(2, 0.5)], yerror=[9, 9]))
    assert list(r.series[0].yerror) == [0.5, 0.5]


def test_registration_after_import():
    reg = default_registry().copy()

    class Kelvin:
        def __init__(self, v):
            self.v = v

    @type_recipe(Kelvin)
    def kelvin(k):
        return k.v - 273.15

    reg.register(kelvin)
    r = pp.resolve(pp.plot([Kelvin(273.15), Kelvin(283.15)]), registry=reg)
    assert list(r.series[0].y) == pytest.approx([0.0, 10.0])


def test_custom_series_recipe_uses_defaults():
    reg = default_registry().copy()
    reg.register(series_recipe("stem")(
        lambda d, a: [RecipeOutput(d.x, d.y, None, [force("seriestype", "scatter"), default("marker", "diamond")])]))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        r = pp.resolve(pp.plot([1, 2], seriestype="stem"), registry=reg)
    assert r.series[0].attrs["marker"] == "diamond"
    r = pp.resolve(pp.plot([1, 2], seriestype="stem", marker="square"), registry=reg)
    assert r.series[0].attrs["marker"] == "square"
