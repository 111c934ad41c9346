"""Versioned JSON encodings with exact rationals as "p/q" strings.

Every document carries a "schema" field of the form "quanthelly/<kind>-v1".
Encoding is deterministic: keys are sorted and rationals are canonical
(reduced, "p" for integers, "p/q" otherwise), so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .combinat import Family
from .geometry import ConvexBody, Halfspace
from .measures import DEFAULT_TOL, Measure, MeasureValue

SCHEMAS = {
    "body": "quanthelly/body-v1",
    "measure": "quanthelly/measure-v1",
    "family": "quanthelly/family-v1",
    "certificate": "quanthelly/certificate-v1",
    "generator": "quanthelly/generator-v1",
    "experiment": "quanthelly/experiment-v1",
    "report": "quanthelly/report-v1",
    "result": "quanthelly/result-v1",
}


class JsonError(ValueError):
    pass


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise JsonError(f"bad rational {s!r}") from e


def jsonify(obj):
    """Recursively convert rationals / tuples / values into JSON-safe data."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "INF"
        return obj
    if isinstance(obj, MeasureValue):
        if obj.is_infinite:
            return "INF"
        if obj.is_exact:
            return frac_str(obj.exact_value)
        return {"lo": frac_str(obj.lo), "hi": frac_str(obj.hi)}
    if isinstance(obj, ConvexBody):
        return body_to_json(obj)
    if isinstance(obj, Halfspace):
        return {"normal": [frac_str(c) for c in obj.normal], "offset": frac_str(obj.offset)}
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    raise JsonError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonify(obj), indent=2, sort_keys=True) + "\n"


def dump(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def load(path):
    with open(path) as fh:
        return json.load(fh)


def _expect_schema(obj, kind):
    want = SCHEMAS[kind]
    got = obj.get("schema")
    if got != want:
        raise JsonError(f"expected schema {want}, got {got!r}")


# -- bodies -------------------------------------------------------------------


def body_to_json(body: ConvexBody) -> dict:
    out = {"schema": SCHEMAS["body"], "dim": body.dim}
    if body.is_empty:
        out["vertices"] = []
        return out
    if body.bounded and body.has_vertices():
        out["vertices"] = [[frac_str(c) for c in v] for v in body.vertices]
    else:
        out["halfspaces"] = [
            {"normal": [frac_str(c) for c in h.normal], "offset": frac_str(h.offset)}
            for h in body.halfspaces
        ]
    return out


def body_from_json(obj) -> ConvexBody:
    _expect_schema(obj, "body")
    dim = int(obj["dim"])
    if "vertices" in obj:
        verts = [tuple(parse_frac(c) for c in v) for v in obj["vertices"]]
        if not verts:
            return ConvexBody.empty(dim)
        return ConvexBody.from_points(verts)
    if "halfspaces" in obj:
        hs = [
            Halfspace.make(
                tuple(parse_frac(c) for c in h["normal"]), parse_frac(h["offset"])
            )
            for h in obj["halfspaces"]
        ]
        return ConvexBody.from_halfspaces(hs, dim)
    raise JsonError("body needs vertices or halfspaces")


# -- measures -----------------------------------------------------------------


def measure_to_json(m: Measure) -> dict:
    out = {"schema": SCHEMAS["measure"], "kind": m.kind}
    if m.kind == "perimeter":
        out["tol"] = frac_str(m.tol)
    if m.kind == "lattice":
        out["basis"] = [[frac_str(c) for c in row] for row in m.basis]
        out["excluded"] = [
            [[frac_str(c) for c in row] for row in sub] for sub in m.excluded
        ]
    return out


def measure_from_json(obj) -> Measure:
    _expect_schema(obj, "measure")
    kind = obj["kind"]
    if kind == "volume":
        return Measure.volume()
    if kind == "perimeter":
        return Measure.perimeter(parse_frac(obj.get("tol", DEFAULT_TOL)))
    if kind == "lattice":
        basis = obj.get("basis", [[1, 0], [0, 1]])
        excluded = obj.get("excluded", [])
        return Measure.lattice(
            tuple(tuple(parse_frac(c) for c in row) for row in basis),
            tuple(
                tuple(tuple(parse_frac(c) for c in row) for row in sub)
                for sub in excluded
            ),
        )
    if kind == "nonempty":
        return Measure.nonempty()
    raise JsonError(f"unknown measure kind {kind!r}")


# -- families -----------------------------------------------------------------


def family_to_json(fam: Family) -> dict:
    out = {
        "schema": SCHEMAS["family"],
        "members": [body_to_json(b) for b in fam.members],
    }
    if fam.labels is not None:
        out["labels"] = list(fam.labels)
    return out


def family_from_json(obj) -> Family:
    _expect_schema(obj, "family")
    members = tuple(body_from_json(b) for b in obj["members"])
    labels = tuple(obj["labels"]) if "labels" in obj else None
    return Family(members, labels)


# -- certificates ---------------------------------------------------------------


def certificate_to_json(cert) -> dict:
    return {
        "schema": SCHEMAS["certificate"],
        "witnesses": [body_to_json(w) for w in cert.witnesses],
        "coverage": list(cert.coverage),
        "values": [jsonify(v) for v in cert.values],
        "transcript": jsonify(cert.transcript),
    }
