"""Rendering of reports and verdicts as key=value text, JSON, or aligned tables."""
from __future__ import annotations

import json
import math


def _plain(obj):
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def flatten(obj, prefix=""):
    """Nested dicts to ``[(dotted.key, value), ...]`` in insertion order."""
    obj = _plain(obj)
    items = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}.{k}" if prefix else k
            if isinstance(v, dict):
                items.extend(flatten(v, key))
            else:
                items.append((key, v))
    else:
        items.append((prefix or "value", obj))
    return items


def _scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if isinstance(v, list):
        return ",".join(_scalar(x) for x in v)
    return str(v)


def to_keyvalue(obj) -> str:
    return "".join(f"{k}={_scalar(v)}\n" for k, v in flatten(obj))


def to_json(obj) -> str:
    """JSON with floats written by ``repr``, which round-trips exactly."""
    return json.dumps(_plain(obj), indent=2, allow_nan=True) + "\n"


def to_table(obj, title=None) -> str:
    rows = [(k, _scalar(v)) for k, v in flatten(obj)]
    width = max((len(k) for k, _ in rows), default=0)
    lines = [title, "-" * len(title)] if title else []
    lines += [f"{k.ljust(width)}  {v}" for k, v in rows]
    return "\n".join(lines) + "\n"


def render(obj, fmt="table", title=None) -> str:
    if fmt == "json":
        return to_json(obj)
    if fmt in ("kv", "text"):
        return to_keyvalue(obj)
    if fmt == "table":
        return to_table(obj, title)
    raise ValueError(f"unknown format {fmt!r}")
