"""JSON and DOT formats for split presentations.

The JSON document (schema ``asl-1``)::

    {"schema": "asl-1", "g": 1, "s": 1, "m": 1,
     "arcs": [{"id": 0, "u": 1, "v": 1}, ...],
     "pieces": [{"h": 0, "n": 0, "interior_marked": [],
                 "cycles": [[{"arc": 0, "dir": "+"}, ...], ...]}, ...]}
"""
from __future__ import annotations

import json

from .core import (
    Arc,
    ArcSystemError,
    BoundaryCycle,
    Direction,
    InvalidSpec,
    Piece,
    Side,
    SplitPresentation,
    SurfaceSpec,
    classify_piece,
)

SCHEMA = "asl-1"


class ParseError(ArcSystemError, ValueError):
    pass


class SchemaVersionMismatch(ParseError):
    pass


def to_document(sp: SplitPresentation) -> dict:
    return {
        "schema": SCHEMA,
        "g": sp.spec.g,
        "s": sp.spec.s,
        "m": sp.spec.m,
        "arcs": [{"id": a.id, "u": a.u, "v": a.v} for a in sp.arcs],
        "pieces": [
            {
                "h": p.h,
                "n": p.n,
                "interior_marked": sorted(p.interior_marked),
                "cycles": [[{"arc": s.arc, "dir": s.dir.symbol} for s in c.sides] for c in p.cycles],
            }
            for p in sp.pieces
        ],
    }


def write_presentation(sp: SplitPresentation) -> str:
    return json.dumps(to_document(sp), indent=2, sort_keys=True) + "\n"


def _get(obj, key, path, kind=int):
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected an object")
    if key not in obj:
        raise ParseError(f"{path}: missing field {key!r}")
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"{path}.{key}: expected an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise ParseError(f"{path}.{key}: expected a list, got {type(value).__name__}")
    return value


def from_document(doc) -> SplitPresentation:
    if not isinstance(doc, dict):
        raise ParseError("$: expected a JSON object")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise SchemaVersionMismatch(f"$.schema: expected {SCHEMA!r}, got {schema!r}")
    try:
        spec = SurfaceSpec(_get(doc, "g", "$"), _get(doc, "s", "$"), _get(doc, "m", "$"))
    except InvalidSpec as exc:
        raise ParseError(f"$: {exc}") from exc

    arcs = []
    for i, item in enumerate(_get(doc, "arcs", "$", list)):
        path = f"$.arcs[{i}]"
        arcs.append(Arc(_get(item, "id", path), _get(item, "u", path), _get(item, "v", path)))

    pieces = []
    for i, item in enumerate(_get(doc, "pieces", "$", list)):
        path = f"$.pieces[{i}]"
        interior = _get(item, "interior_marked", path, list)
        for j, x in enumerate(interior):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"{path}.interior_marked[{j}]: expected an integer, got {x!r}")
        cycles = []
        for c, raw in enumerate(_get(item, "cycles", path, list)):
            if not isinstance(raw, list):
                raise ParseError(f"{path}.cycles[{c}]: expected a list")
            sides = []
            for k, side in enumerate(raw):
                spath = f"{path}.cycles[{c}][{k}]"
                arc = _get(side, "arc", spath)
                try:
                    direction = Direction.from_symbol(_get(side, "dir", spath, str))
                except ValueError as exc:
                    raise ParseError(f"{spath}.dir: {exc}") from exc
                sides.append(Side(arc, direction))
            cycles.append(BoundaryCycle(tuple(sides)))
        pieces.append(Piece(_get(item, "h", path), _get(item, "n", path), frozenset(interior), tuple(cycles)))
    return SplitPresentation(spec, tuple(arcs), tuple(pieces))


def read_presentation(text: str) -> SplitPresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_document(doc)


def export_dot(sp: SplitPresentation) -> str:
    """Dual graph: one node per piece, one edge per arc joining the pieces on its two sides."""
    host = {}
    for p, piece in enumerate(sp.pieces):
        for side in piece.sides():
            host.setdefault(side.arc, []).append(p)
    lines = ["graph arc_system {"]
    for p, piece in enumerate(sp.pieces):
        lines.append(f'  p{p} [label="P{p}: {classify_piece(piece).describe()}"];')
    for arc in sp.arcs:
        ends = host.get(arc.id, [])
        if len(ends) == 2:
            lines.append(f'  p{ends[0]} -- p{ends[1]} [label="a{arc.id}: p{arc.u}-p{arc.v}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
