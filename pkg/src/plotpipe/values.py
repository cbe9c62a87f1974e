"""Attribute value sentinels, data columns and missing-data handling."""

from __future__ import annotations

import math
import numbers
from typing import Any, Iterable

import numpy as np

from .errors import RaggedMatrix


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name

    def __reduce__(self):
        return self._name

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


#: Ask the pipeline to infer the value.
AUTO = _Sentinel("AUTO")
#: Not given; falls through to the default rules.
UNSET = _Sentinel("UNSET")


def is_missing(v) -> bool:
    if v is None:
        return True
    if isinstance(v, float) and math.isnan(v):
        return True
    return False


def values_equal(a, b) -> bool:
    """Structural equality that treats NaN as equal to NaN."""
    if isinstance(a, float) and isinstance(b, float):
        return a == b or (math.isnan(a) and math.isnan(b))
    if isinstance(a, (tuple, list)) and isinstance(b, (tuple, list)):
        return len(a) == len(b) and all(values_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(values_equal(a[k], b[k]) for k in a)
    if type(a) is not type(b) and not (isinstance(a, numbers.Real) and isinstance(b, numbers.Real)):
        return False
    return a == b


class DataColumn:
    """An immutable column of float values; NaN marks a gap."""

    __slots__ = ("values", "label")

    def __init__(self, values: Iterable = (), label: str | None = None):
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("DataColumn is immutable")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        if not isinstance(other, DataColumn):
            return NotImplemented
        return self.label == other.label and values_equal(self.values, other.values)

    def __hash__(self):
        return hash((len(self.values), self.label))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (DataColumn, (self.values, self.label))

    def __repr__(self):
        lab = f", label={self.label!r}" if self.label is not None else ""
        return f"DataColumn({list(self.values)!r}{lab})"

    def finite(self) -> list[float]:
        return [v for v in self.values if math.isfinite(v)]


class Matrix:
    """Immutable row-major matrix of floats used for heatmap values."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(float(v) if not is_missing(v) else math.nan for v in r) for r in rows)
        if any(len(r) != len(rows[0]) for r in rows):
            raise RaggedMatrix("matrix rows have different lengths")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return values_equal(self.rows, other.rows)

    def __hash__(self):
        return hash(self.shape)

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (Matrix, (self.rows,))

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]!r})"


def sanitize_data(col) -> DataColumn:
    """Replace missing markers with NaN; drop columns with no finite values."""
    if isinstance(col, DataColumn):
        values, label = col.values, col.label
    else:
        values, label = tuple(np.asarray(col, dtype=object).ravel()) if col is not None else (), None
    out = []
    for v in values:
        if is_missing(v):
            out.append(math.nan)
        else:
            out.append(float(v))
    if not any(math.isfinite(v) for v in out):
        out = []
    return DataColumn(out, label)


_TAGS = {bool: "bool", int: "int", float: "number", str: "text"}


def value_tag(v) -> str:
    from .colors import ColorSpec

    if v is AUTO:
        return "auto"
    if v is UNSET:
        return "unset"
    if isinstance(v, ColorSpec):
        return "color"
    if isinstance(v, tuple):
        return "list"
    tag = _TAGS.get(type(v))
    if tag is None:
        raise TypeError(f"unsupported attribute value {v!r} of type {type(v).__name__}")
    return tag


def normalize_attr_value(v: Any):
    """Coerce user input into the closed set of attribute value kinds.

    None becomes UNSET, sequences become tuples, numpy scalars become
    Python scalars. Mixed int/float lists are promoted to float; any
    other mixing raises TypeError.
    """
    if v is None:
        return UNSET
    if isinstance(v, DataColumn):
        return tuple(v.values)
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, np.ndarray):
        v = v.tolist()
    if isinstance(v, range):
        v = list(v)
    if isinstance(v, (list, tuple)):
        items = [normalize_attr_value(x) for x in v]
        tags = {value_tag(x) for x in items}
        if tags == {"int", "number"}:
            items = [float(x) for x in items]
            tags = {"number"}
        if len(tags) > 1:
            raise TypeError(f"attribute list mixes value kinds {sorted(tags)}: {v!r}")
        return tuple(items)
    value_tag(v)
    return v
