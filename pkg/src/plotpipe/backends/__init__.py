"""Output backends and their registry.

Drawing backends (svg, unicode) consume the shared SceneGraph; declarative
ones (plotly, spec) consume the resolved plot directly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

from .plotly import render_plotly_json
from .scene import SceneGraph, lower, scene_hash
from .serialize import deserialize_spec, serialize_spec
from .svg import render_svg
from .unicode import render_unicode


@dataclass(frozen=True)
class BackendCapabilities:
    name: str
    supports: frozenset = field(default_factory=frozenset)
    consumes_scene: bool = True


@dataclass(frozen=True)
class Backend:
    capabilities: BackendCapabilities
    emit: Callable
    extension: str

    @property
    def name(self) -> str:
        return self.capabilities.name

    def render_scene(self, scene: SceneGraph, **options) -> str:
        return self.emit(scene, **options)

    def render_spec(self, spec, **options) -> str:
        return self.emit(spec, **options)


def _spec_text(spec) -> str:
    return serialize_spec(spec).decode("utf-8")


_BACKENDS = {
    "svg": Backend(BackendCapabilities("svg", frozenset({"transparency", "text-rotation", "cell-grids"})),
                   render_svg, ".svg"),
    # no transparency or rotation: rotated text is written top to bottom,
    # cell grids are drawn with shade characters
    "unicode": Backend(BackendCapabilities("unicode", frozenset()), render_unicode, ".txt"),
    "plotly": Backend(BackendCapabilities("plotly", frozenset({"transparency", "text-rotation", "cell-grids",
                                                               "interactivity-metadata"}), False),
                      render_plotly_json, ".json"),
    "spec": Backend(BackendCapabilities("spec", frozenset({"transparency", "text-rotation", "cell-grids"}), False),
                    _spec_text, ".plot.json"),
}


def register_backend(backend: Backend):
    _BACKENDS[backend.name] = backend


def get_backend(name: str) -> Backend:
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}") from None


def backend_names() -> list[str]:
    return sorted(_BACKENDS)


def backend_for_path(path: str) -> Backend:
    if path.endswith(".plot.json"):
        return _BACKENDS["spec"]
    ext = os.path.splitext(path)[1].lower()
    for be in _BACKENDS.values():
        if be.extension == ext:
            return be
    raise ValueError(f"cannot infer a backend from file name {path!r}")


__all__ = [
    "Backend", "BackendCapabilities", "SceneGraph", "backend_for_path", "backend_names", "deserialize_spec",
    "get_backend", "lower", "register_backend", "render_plotly_json", "render_svg", "render_unicode",
    "scene_hash", "serialize_spec",
]
