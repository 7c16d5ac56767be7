"""JSON encoding of point sets, matrices, and systems.

Coordinates are written as decimal strings ("5", "-3/4") rather than floats:
round-tripping must be exact.  All emitters sort keys and order points
canonically so identical mathematical objects serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import (
    Basis,
    Coord,
    LinearSystem,
    PointSet,
    RationalMatrix,
    Vec,
    as_coord,
)


def encode_coord(c: Coord) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def decode_coord(raw) -> Coord:
    if isinstance(raw, bool):
        raise ValueError("coordinates must be integers or fraction strings")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return as_coord(Fraction(raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad coordinate {raw!r}") from exc
    raise ValueError(f"bad coordinate {raw!r} (floats are not accepted)")


def encode_point(p: Vec) -> list[str]:
    return [encode_coord(c) for c in p]


def decode_point(raw, dim: int) -> Vec:
    if not isinstance(raw, (list, tuple)) or len(raw) != dim:
        raise ValueError(f"point {raw!r} does not have {dim} coordinates")
    return tuple(decode_coord(c) for c in raw)


def pointset_to_dict(A: PointSet) -> dict:
    return {
        "dim": A.dim,
        "points": [encode_point(p) for p in A.sorted_points()],
    }


def pointset_from_dict(data: dict) -> PointSet:
    if not isinstance(data, dict) or "dim" not in data or "points" not in data:
        raise ValueError("point set JSON needs keys 'dim' and 'points'")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ValueError("'dim' must be a positive integer")
    return PointSet(dim, [decode_point(p, dim) for p in data["points"]])


def matrix_to_rows(M: RationalMatrix) -> list[list[str]]:
    return [[encode_coord(c) for c in row] for row in M.rows]


def matrix_from_rows(raw, dim: int) -> RationalMatrix:
    if not isinstance(raw, (list, tuple)) or len(raw) != dim:
        raise ValueError(f"matrix must have {dim} rows")
    return RationalMatrix([[decode_coord(c) for c in row] for row in raw])


def matrix_to_dict(M: RationalMatrix) -> dict:
    return {"dim": M.dim, "entries": matrix_to_rows(M)}


def matrix_from_dict(data: dict) -> RationalMatrix:
    if not isinstance(data, dict) or "dim" not in data or "entries" not in data:
        raise ValueError("matrix JSON needs keys 'dim' and 'entries'")
    return matrix_from_rows(data["entries"], data["dim"])


def system_to_dict(system: LinearSystem) -> dict:
    return {
        "dim": system.dim,
        "maps": [matrix_to_rows(M) for M in system.maps],
    }


def system_from_dict(data: dict) -> LinearSystem:
    if not isinstance(data, dict) or "dim" not in data or "maps" not in data:
        raise ValueError("system JSON needs keys 'dim' and 'maps'")
    dim = data["dim"]
    return LinearSystem([matrix_from_rows(raw, dim) for raw in data["maps"]])


def basis_to_dict(basis: Basis) -> dict:
    return {"dim": basis.dim, "vectors": [encode_point(v) for v in basis.vectors]}


def basis_from_dict(data: dict) -> Basis:
    if not isinstance(data, dict) or "dim" not in data or "vectors" not in data:
        raise ValueError("basis JSON needs keys 'dim' and 'vectors'")
    dim = data["dim"]
    return Basis([decode_point(v, dim) for v in data["vectors"]])


def dumps_canonical(obj) -> str:
    """Pretty, key-sorted JSON with a trailing newline: byte-stable output."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
