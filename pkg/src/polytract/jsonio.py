"""JSON readers and writers.

Point sets are {"n", "r", "bases"} with bases sorted ascending; integers
whose absolute value exceeds 2**53 - 1 are written as decimal strings.
Representations are {"tract", "set", "values": [{"basis", "value"}]} with
values in the tract's text encoding.  Dumps are compact with sorted keys so
re-emitting a parsed document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import MalformedInputError
from .hives import HiveLabeling
from .mconvex import MConvexSet, PointSet
from .representations import Representation
from .tracts import format_element, get_tract, parse_element, tract_id

SAFE_INT = 2**53 - 1


def encode_int(x: int) -> int | str:
    return str(x) if abs(x) > SAFE_INT else x


def decode_int(x: Any, what: str = "value") -> int:
    if isinstance(x, bool):
        raise MalformedInputError(f"{what} must be an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise MalformedInputError(f"{what} must be an integer, got {x!r}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# point sets

def set_to_json(J: PointSet) -> dict:
    return {
        "n": encode_int(J.n),
        "r": encode_int(J.r),
        "bases": [[encode_int(x) for x in p] for p in sorted(J.points)],
    }


def _require(d: Any, keys: tuple[str, ...], what: str) -> None:
    if not isinstance(d, dict):
        raise MalformedInputError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise MalformedInputError(f"{what} is missing {missing}")


def pointset_from_json(d: Any) -> PointSet:
    """Read a point set without testing M-convexity."""
    _require(d, ("n", "r", "bases"), "set")
    n = decode_int(d["n"], "n")
    r = decode_int(d["r"], "r")
    if not isinstance(d["bases"], list):
        raise MalformedInputError("bases must be a list")
    pts = []
    for b in d["bases"]:
        if not isinstance(b, list):
            raise MalformedInputError(f"basis {b!r} must be a list")
        pts.append(tuple(decode_int(x, "basis entry") for x in b))
    return PointSet(n, r, pts)


def set_from_json(d: Any) -> MConvexSet:
    """Read an M-convex set; raises NotMConvexError otherwise."""
    ps = pointset_from_json(d)
    return MConvexSet(ps.n, ps.r, ps.points)


# ---------------------------------------------------------------------------
# representations

def representation_to_json(rho: Representation) -> dict:
    T = get_tract(rho.tract)
    return {
        "tract": T.id.value,
        "set": set_to_json(rho.J),
        "values": [
            {"basis": [encode_int(x) for x in b], "value": T.format(v)}
            for b, v in rho.items_by_basis()
        ],
    }


def representation_from_json(d: Any) -> Representation:
    _require(d, ("tract", "set", "values"), "representation")
    try:
        tid = tract_id(d["tract"])
    except (KeyError, ValueError) as exc:
        raise MalformedInputError(f"unknown tract {d['tract']!r}") from exc
    J = set_from_json(d["set"])
    if not isinstance(d["values"], list):
        raise MalformedInputError("values must be a list")
    mapping = {}
    for entry in d["values"]:
        _require(entry, ("basis", "value"), "value entry")
        b = tuple(decode_int(x, "basis entry") for x in entry["basis"])
        if b in mapping:
            raise MalformedInputError(f"basis {list(b)} listed twice")
        el = parse_element(tid, str(entry["value"]))
        if el.is_zero:
            raise MalformedInputError(f"value at {list(b)} must be a unit")
        mapping[b] = el.payload
    return Representation.from_bases(J, tid, mapping)


def element_to_json(el) -> str:
    return format_element(el)


# ---------------------------------------------------------------------------
# hives

def hive_to_json(h: HiveLabeling) -> dict:
    out = {}
    for p, v in sorted(h.labels.items()):
        key = "(" + ",".join(map(str, p)) + ")"
        out[key] = encode_int(int(v)) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return out


def hive_from_json(d: Any, r: int) -> HiveLabeling:
    from fractions import Fraction

    if not isinstance(d, dict):
        raise MalformedInputError("a hive must be a JSON object")
    labels = {}
    for k, v in d.items():
        try:
            p = tuple(int(x) for x in k.strip("()").split(","))
            labels[p] = Fraction(str(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"bad hive entry {k!r}: {v!r}") from exc
    return HiveLabeling(r, labels)
