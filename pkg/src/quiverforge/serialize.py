"""JSON forms for representations and matrices.

Scalars serialize as exact strings: "3/2" style fractions over the
rationals, plain residues over a prime field.
"""

from __future__ import annotations

from typing import Optional

from .errors import InputError
from .linalg import GF, Mat, PrimeField, QQ
from .quiver import dimvec_from_json, dimvec_to_json, quiver_from_json, quiver_to_json
from .reps import Representation


def field_to_json(field) -> dict:
    if isinstance(field, PrimeField):
        return {"type": "fp", "p": field.p}
    return {"type": "rational"}


def field_from_json(obj: Optional[dict]):
    if obj is None or obj.get("type") == "rational":
        return QQ
    if obj.get("type") == "fp":
        return GF(int(obj["p"]))
    raise InputError(f"unknown field spec {obj!r}")


def parse_field_flag(flag: str):
    """CLI field flag: 'q' for the rationals, 'fp:P' for a prime field."""
    if flag == "q":
        return QQ
    if flag.startswith("fp:"):
        return GF(int(flag[3:]))
    raise InputError(f"unknown field flag {flag!r} (use 'q' or 'fp:P')")


def mat_to_json(m: Mat) -> list:
    return [[m.field.fmt(x) for x in row] for row in m.data]


def mat_from_json(rows: int, cols: int, obj: list, field) -> Mat:
    data = [[field.parse(str(x)) for x in row] for row in obj]
    return Mat(rows, cols, data, field)


def rep_to_json(x: Representation) -> dict:
    return {
        "quiver": quiver_to_json(x.quiver),
        "field": field_to_json(x.field),
        "dims": dimvec_to_json(x.quiver, x.dims),
        "mats": {str(a.id): mat_to_json(x.mats[a.id]) for a in x.quiver.arrows},
    }


def rep_from_json(obj: dict) -> Representation:
    try:
        q = quiver_from_json(obj["quiver"])
        field = field_from_json(obj.get("field"))
        dims = dimvec_from_json(q, obj["dims"])
        mats = {}
        for a in q.arrows:
            raw = obj["mats"][str(a.id)]
            mats[a.id] = mat_from_json(dims[a.head], dims[a.tail], raw, field)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed representation JSON: {exc}") from exc
    return Representation(q, dims, mats, field)
