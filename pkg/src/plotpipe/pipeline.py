"""From an unresolved plot to output: recipes, defaults, then a backend."""

from __future__ import annotations

import copy
import math

from .attributes import AttrMap, apply_defaults, resolve_auto
from .errors import InvalidRange, PlotError, UnresolvedSpec
from .model import PlotSpec, validate
from .recipes.engine import apply_recipes
from .recipes.registry import default_registry
from .values import AUTO, UNSET


def _check_limits(spec: PlotSpec):
    for j, sp in enumerate(spec.subplots):
        for letter, axis in sp.axes.items():
            lim = axis.limits
            if lim is AUTO:
                continue
            if not (isinstance(lim, tuple) and len(lim) == 2):
                raise InvalidRange(f"subplot {j}: {letter}limits must be a (lo, hi) pair, got {lim!r}")
            lo, hi = float(lim[0]), float(lim[1])
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidRange(f"subplot {j}: {letter}limits {lim!r} need lo < hi")
            if axis.scale == "log10" and lo <= 0:
                raise InvalidRange(f"subplot {j}: log10 {letter}axis needs positive limits, got {lim!r}")
            if axis.scale not in ("linear", "log10"):
                raise InvalidRange(f"subplot {j}: unknown {letter}scale {axis.scale!r}")


def _no_unset(spec: PlotSpec):
    maps = [("plot", spec.attrs)]
    for j, sp in enumerate(spec.subplots):
        maps.append((f"subplot {j}", sp.attrs))
        maps += [(f"subplot {j} {k}axis", a.attrs) for k, a in sp.axes.items()]
    maps += [(f"series {i}", s.attrs) for i, s in enumerate(spec.series)]
    for where, attrs in maps:
        for k, v in attrs.items():
            if v is UNSET:
                raise PlotError(f"{where}: attribute {k} is still unset after applying defaults")


def resolve(spec: PlotSpec, registry=None, palette=None) -> PlotSpec:
    """Apply recipes and defaults; returns a new, resolved spec."""
    if spec.resolved:
        return spec
    reg = registry if registry is not None else default_registry()
    validate(spec)
    out = apply_recipes(reg, spec)
    out = apply_defaults(out)
    resolve_auto(out, palette)
    _check_limits(out)
    _no_unset(out)
    for i, s in enumerate(out.series):
        if s.seriestype not in reg.primitives:
            raise PlotError(f"series {i} still has non-primitive seriestype {s.seriestype!r}")
    validate(out)
    out.resolved = True
    return out


def require_resolved(spec: PlotSpec):
    if not spec.resolved:
        raise UnresolvedSpec("this operation needs a resolved plot; call resolve() first")


def render(spec: PlotSpec, backend="svg", size=None, registry=None, on_scene=None, **options) -> str:
    """Resolve (if needed) and emit through ``backend``; returns the output text.

    ``on_scene`` is called with the SceneGraph handed to scene-based backends.
    """
    from .backends import get_backend
    from .backends.scene import lower

    be = get_backend(backend) if isinstance(backend, str) else backend
    resolved = resolve(spec, registry) if not spec.resolved else spec
    if size is not None:
        resolved = copy.copy(resolved)
        resolved.attrs = AttrMap(resolved.attrs)
        resolved.attrs["size"] = (float(size[0]), float(size[1]))
    if be.capabilities.consumes_scene:
        scene = lower(resolved)
        if on_scene is not None:
            on_scene(scene)
        return be.render_scene(scene, **options)
    return be.render_spec(resolved, **options)


def save(spec: PlotSpec, path, backend=None, **kwargs):
    """Render to a file; the backend defaults from the file extension."""
    from .backends import backend_for_path

    be = backend if backend is not None else backend_for_path(str(path))
    text = render(spec, be, **kwargs)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
