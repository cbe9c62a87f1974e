"""Colors, palettes and color-attribute resolution."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from PIL import ImageColor

from .errors import UnknownColorName
from .values import AUTO, UNSET


@dataclass(frozen=True)
class ColorSpec:
    r: float
    g: float
    b: float
    a: float = 1.0

    def __post_init__(self):
        for name in ("r", "g", "b", "a"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"color channel {name}={v!r} outside [0, 1]")

    @classmethod
    def from_rgb8(cls, r: int, g: int, b: int, a: float = 1.0) -> ColorSpec:
        # named colors are stored at 3-decimal precision, so that e.g.
        # steelblue is exactly (0.275, 0.51, 0.706)
        return cls(round(r / 255, 3), round(g / 255, 3), round(b / 255, 3), a)

    def to_rgb8(self) -> tuple[int, int, int]:
        return (round(self.r * 255), round(self.g * 255), round(self.b * 255))

    def luminance(self) -> float:
        return 0.2126 * self.r + 0.7152 * self.g + 0.0722 * self.b

    def rgba_string(self) -> str:
        r, g, b = self.to_rgb8()
        return f"rgba({r},{g},{b},{format_alpha(self.a)})"


def format_alpha(a: float) -> str:
    return format(round(a, 3), "g")


BLACK = ColorSpec(0.0, 0.0, 0.0, 1.0)
WHITE = ColorSpec(1.0, 1.0, 1.0, 1.0)
TRANSPARENT = ColorSpec(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Palette:
    """Ordered discrete color list, indexed from 1 with wraparound."""

    name: str
    colors: tuple[ColorSpec, ...]

    def __post_init__(self):
        if not self.colors:
            raise ValueError("palette must contain at least one color")

    def __len__(self):
        return len(self.colors)

    def color(self, n: int) -> ColorSpec:
        return self.colors[(n - 1) % len(self.colors)]


def _hex_palette(name: str, codes: Sequence[str]) -> Palette:
    return Palette(name, tuple(ColorSpec.from_rgb8(*ImageColor.getrgb(c)[:3]) for c in codes))


DEFAULT_PALETTE = _hex_palette(
    "default",
    ["#4682b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
     "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"],
)

COLORMAPS = {
    "viridis": _hex_palette(
        "viridis",
        ["#440154", "#482878", "#3e4989", "#31688e", "#26828e",
         "#1f9e89", "#35b779", "#6ece58", "#b5de2b", "#fde725"],
    ),
    "grays": _hex_palette(
        "grays",
        ["#000000", "#1c1c1c", "#393939", "#555555", "#717171",
         "#8e8e8e", "#aaaaaa", "#c6c6c6", "#e3e3e3", "#ffffff"],
    ),
}


def colormap_lookup(name: str, t: float) -> ColorSpec:
    """Map a normalized value in [0, 1] onto a discrete colormap.

    NaN maps to a fully transparent color.
    """
    if isinstance(t, float) and math.isnan(t):
        return TRANSPARENT
    try:
        cmap = COLORMAPS[name]
    except KeyError:
        raise UnknownColorName(f"unknown colormap {name!r}; known: {sorted(COLORMAPS)}") from None
    t = min(1.0, max(0.0, t))
    return cmap.colors[int(math.floor(t * (len(cmap) - 1) + 0.5))]


def named_color(name: str) -> ColorSpec:
    key = name.strip().lower().replace("_", "").replace(" ", "")
    if key in ("transparent", "none"):
        return TRANSPARENT
    try:
        rgb = ImageColor.getrgb(key)
    except ValueError:
        raise UnknownColorName(f"unknown color name {name!r}") from None
    alpha = rgb[3] / 255 if len(rgb) == 4 else 1.0
    return ColorSpec.from_rgb8(rgb[0], rgb[1], rgb[2], round(alpha, 3))


def resolve_color(value, palette: Palette = DEFAULT_PALETTE, series_index: int = 1) -> ColorSpec:
    """Turn a color-valued attribute into a concrete ColorSpec.

    ``series_index`` is the 1-based index of the series, used when the
    value is ``"auto"``. Integers index the palette from 1 with wraparound.
    """
    if isinstance(value, ColorSpec):
        return value
    if value is AUTO or value is UNSET or value == "auto":
        return palette.color(series_index)
    if isinstance(value, bool):
        raise UnknownColorName(f"cannot interpret {value!r} as a color")
    if isinstance(value, int):
        return palette.color(value)
    if isinstance(value, str):
        return named_color(value)
    if isinstance(value, tuple) and len(value) in (3, 4):
        return ColorSpec(*(float(c) for c in value))
    raise UnknownColorName(f"cannot interpret {value!r} as a color")
