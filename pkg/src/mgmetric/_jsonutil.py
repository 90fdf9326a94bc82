"""Deterministic JSON rendering with 17-significant-digit floats.

Reports round-trip exactly (17 digits pins every double) and identical
inputs render byte-identically, which the CLI's determinism contract
relies on.  Only the primitive shapes reports actually use are handled.
"""

from __future__ import annotations

import json
import math


def _render(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite float {obj} is not representable in a report")
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{pad}{json.dumps(str(k))}: {_render(v, indent, level + 1)}"
            for k, v in obj.items())
        return "{\n" + items + "\n" + close_pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}{_render(v, indent, level + 1)}" for v in obj)
        return "[\n" + items + "\n" + close_pad + "]"
    raise TypeError(f"cannot render {type(obj).__name__} in a report")


def dumps(doc, indent: int = 2) -> str:
    return _render(doc, indent, 0)
