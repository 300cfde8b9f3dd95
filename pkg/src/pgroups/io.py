"""JSON file formats for groups and rings.

Group files: {"format": "cayley", "order": n, "mul": [[...]]} or
{"format": "pc", "p": 3, "rank": 3, "powers": {...}, "commutators": {...}};
exponent vectors are little-endian in generator index.  Ring files:
{"format": "ring", "order": n, "add": [[...]], "mul": [[...]]}.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .groups import DEFAULT_MAX_ORDER, FiniteGroup
from .presentations import PcPresentation, from_pc_presentation
from .rings import FiniteRing


def load_group_json(source: Union[str, Path, dict], *,
                    max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    data = _as_data(source)
    fmt = data.get("format")
    if fmt == "cayley":
        mul = data["mul"]
        if data.get("order") is not None and int(data["order"]) != len(mul):
            raise ValueError("declared order does not match the table size")
        return FiniteGroup.from_cayley_table(mul, max_order=max_order)
    if fmt == "pc":
        pcp = PcPresentation.from_json(data)
        return from_pc_presentation(pcp, max_order=max_order)
    raise ValueError(f"unknown group file format {fmt!r}")


def load_ring_json(source: Union[str, Path, dict], *,
                   max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    data = _as_data(source)
    if data.get("format") != "ring":
        raise ValueError(f"unknown ring file format {data.get('format')!r}")
    add, mul = data["add"], data["mul"]
    if data.get("order") is not None and int(data["order"]) != len(add):
        raise ValueError("declared order does not match the table size")
    return FiniteRing.make_ring(add, mul, max_order=max_order)


def dump_group_cayley(G: FiniteGroup) -> dict:
    return {"format": "cayley", "order": G.order,
            "mul": [[int(v) for v in row] for row in G.mul]}


def _as_data(source: Union[str, Path, dict]) -> dict:
    if isinstance(source, dict):
        return source
    return json.loads(Path(source).read_text(encoding="utf-8"))
