"""Boundary encoding: newline-delimited JSON commands and notifications.

One message per line, UTF-8, keys sorted, no whitespace, floats rounded
to at most 15 significant digits before serialization so identical state
always produces identical bytes.  The CLI scripting format and the UI
embedding layer share this schema verbatim.
"""

from __future__ import annotations

import datetime
import json
import math

import numpy as np

from .crossfilter import KeyFilter, RangeFilter, SetFilter, SpatialFilter, TagAnyFilter
from .geo import geometry_from_dict, geometry_to_dict


def canon(value):
    """Normalize a payload tree for deterministic serialization."""
    if isinstance(value, dict):
        return {str(k): canon(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canon(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number in payload: {value!r}")
        if value == int(value) and abs(value) < 2**53:
            return int(value)
        return float(format(value, ".15g"))
    if isinstance(value, (datetime.date, datetime.datetime)):
        return value.isoformat()
    if isinstance(value, np.ndarray):
        return [canon(v) for v in value.tolist()]
    if isinstance(value, (set, frozenset)):
        return sorted(canon(v) for v in value)
    raise TypeError(f"cannot serialize {type(value).__name__} in payload")


def dumps_line(obj) -> str:
    return json.dumps(canon(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads_line(line: str):
    return json.loads(line)


def filter_to_dict(spec):
    if spec is None:
        return None
    if isinstance(spec, RangeFilter):
        lo = spec.lo.isoformat() if isinstance(spec.lo, datetime.date) else spec.lo
        hi = spec.hi.isoformat() if isinstance(spec.hi, datetime.date) else spec.hi
        return {"type": "range", "lo": lo, "hi": hi}
    if isinstance(spec, SetFilter):
        return {"type": "set", "values": sorted(spec.values)}
    if isinstance(spec, TagAnyFilter):
        return {"type": "tag_any", "values": sorted(spec.values)}
    if isinstance(spec, SpatialFilter):
        return {"type": "spatial", "geometry": geometry_to_dict(spec.geometry)}
    if isinstance(spec, KeyFilter):
        return {"type": "key", "keys": sorted(spec.keys)}
    raise TypeError(f"cannot serialize filter {spec!r}")


def filter_from_dict(d):
    if d is None:
        return None
    kind = d.get("type")
    if kind == "range":
        return RangeFilter(d["lo"], d["hi"])
    if kind == "set":
        return SetFilter(d["values"])
    if kind == "tag_any":
        return TagAnyFilter(d["values"])
    if kind == "spatial":
        return SpatialFilter(geometry_from_dict(d["geometry"]))
    if kind == "key":
        return KeyFilter(d["keys"])
    raise ValueError(f"unknown filter type: {kind!r}")
