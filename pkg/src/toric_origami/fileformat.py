"""JSON template files: parsing with field-level errors, and canonical output.

Layout::

    {"dimension": n,
     "polytopes": [{"id": "A", "normals": [[...], ...], "offsets": [0, "1/2", ...]}],
     "edges": [{"id": "e0", "ends": [{"polytope": "A", "facet": 0}, ...]}],
     "name": optional string, "notes": optional list of strings}

An edge with a single end is dangling.  Offsets are integers or "p/q"
strings; floats are rejected.
"""
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Union

from .errors import RationalParseError, SchemaError, TemplateFileError
from .template import OrigamiTemplate, validate_template

OPTIONAL_KEYS = ("name", "notes")


def parse_rational(value, field: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise RationalParseError(field, f"{value!r} is not an integer or 'p/q' string")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise RationalParseError(field, f"cannot parse {value!r} as a rational") from None
    raise RationalParseError(field, f"{value!r} is not an integer or 'p/q' string")


def format_rational(x: Fraction) -> Union[int, str]:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(field, f"expected an integer, got {value!r}")
    return value


def _list(value, field):
    if not isinstance(value, list):
        raise SchemaError(field, f"expected a list, got {type(value).__name__}")
    return value


def _id(value, field):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SchemaError(field, f"expected a string id, got {value!r}")
    return str(value)


def check_schema(data: Any) -> Dict:
    """Check the structure of loaded JSON and normalise it.

    Returns a dict with the same layout where offsets are Fractions and ids
    are strings.  Raises SchemaError naming the offending field.
    """
    if not isinstance(data, dict):
        raise SchemaError("<root>", "top level must be an object")
    for key in ("dimension", "polytopes", "edges"):
        if key not in data:
            raise SchemaError(key, "missing")
    unknown = set(data) - {"dimension", "polytopes", "edges", *OPTIONAL_KEYS}
    if unknown:
        raise SchemaError(sorted(unknown)[0], "unknown top-level key")
    n = _int(data["dimension"], "dimension")
    if n < 1:
        raise SchemaError("dimension", "must be at least 1")

    polytopes, facet_counts = [], {}
    for i, p in enumerate(_list(data["polytopes"], "polytopes")):
        where = f"polytopes[{i}]"
        if not isinstance(p, dict):
            raise SchemaError(where, "expected an object")
        for key in ("id", "normals", "offsets"):
            if key not in p:
                raise SchemaError(f"{where}.{key}", "missing")
        pid = _id(p["id"], f"{where}.id")
        if pid in facet_counts:
            raise SchemaError(f"{where}.id", f"duplicate polytope id {pid!r}")
        normals = []
        for j, u in enumerate(_list(p["normals"], f"{where}.normals")):
            u = _list(u, f"{where}.normals[{j}]")
            if len(u) != n:
                raise SchemaError(f"{where}.normals[{j}]", f"expected {n} entries")
            normals.append([_int(x, f"{where}.normals[{j}]") for x in u])
        offsets = [parse_rational(c, f"{where}.offsets[{j}]")
                   for j, c in enumerate(_list(p["offsets"], f"{where}.offsets"))]
        if len(offsets) != len(normals):
            raise SchemaError(f"{where}.offsets", "must have one entry per normal")
        facet_counts[pid] = len(normals)
        polytopes.append({"id": pid, "normals": normals, "offsets": offsets})

    edges, seen = [], set()
    for i, e in enumerate(_list(data["edges"], "edges")):
        where = f"edges[{i}]"
        if not isinstance(e, dict) or "id" not in e or "ends" not in e:
            raise SchemaError(where, "expected an object with 'id' and 'ends'")
        eid = _id(e["id"], f"{where}.id")
        if eid in seen:
            raise SchemaError(f"{where}.id", f"duplicate edge id {eid!r}")
        seen.add(eid)
        ends = _list(e["ends"], f"{where}.ends")
        if len(ends) not in (1, 2):
            raise SchemaError(f"{where}.ends", "an edge has one or two ends")
        parsed = []
        for j, end in enumerate(ends):
            f = f"{where}.ends[{j}]"
            if not isinstance(end, dict) or "polytope" not in end or "facet" not in end:
                raise SchemaError(f, "expected {'polytope': id, 'facet': index}")
            pid = _id(end["polytope"], f"{f}.polytope")
            if pid not in facet_counts:
                raise SchemaError(f"{f}.polytope", f"unknown polytope {pid!r}")
            facet = _int(end["facet"], f"{f}.facet")
            if not 0 <= facet < facet_counts[pid]:
                raise SchemaError(f"{f}.facet", f"index {facet} out of range for polytope "
                                  f"{pid!r} with {facet_counts[pid]} facets")
            parsed.append({"polytope": pid, "facet": facet})
        edges.append({"id": eid, "ends": parsed})

    out = {"dimension": n, "polytopes": polytopes, "edges": edges}
    if "name" in data:
        if not isinstance(data["name"], str):
            raise SchemaError("name", "expected a string")
        out["name"] = data["name"]
    if "notes" in data:
        notes = _list(data["notes"], "notes")
        if not all(isinstance(x, str) for x in notes):
            raise SchemaError("notes", "expected a list of strings")
        out["notes"] = list(notes)
    return out


def loads(text: str) -> Dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TemplateFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return check_schema(data)


def parse_template_file(path) -> Dict:
    """Read and schema-check a template file; returns normalised raw data."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise TemplateFileError(f"cannot read {path}: {exc}") from None
    return loads(text)


def load_template(path) -> OrigamiTemplate:
    return validate_template(parse_template_file(path))


def serialize(raw: Dict) -> Dict:
    """Canonical JSON-ready form of normalised raw data."""
    out = {"dimension": raw["dimension"]}
    for key in OPTIONAL_KEYS:
        if key in raw:
            out[key] = raw[key]
    out["polytopes"] = [{"id": p["id"], "normals": [list(u) for u in p["normals"]],
                         "offsets": [format_rational(c) for c in p["offsets"]]}
                        for p in sorted(raw["polytopes"], key=lambda p: p["id"])]
    out["edges"] = [{"id": e["id"], "ends": [dict(x) for x in e["ends"]]}
                    for e in sorted(raw["edges"], key=lambda e: e["id"])]
    return out


def template_to_raw(t: OrigamiTemplate) -> Dict:
    return {
        "dimension": t.dim,
        "polytopes": [{"id": v, "normals": [list(u) for u in p.normals],
                       "offsets": list(p.offsets)} for v, p in t.polytopes.items()],
        "edges": [{"id": e.id, "ends": [{"polytope": x.vertex, "facet": x.facet}
                                        for x in e.ends]} for e in t.edges],
    }


def dumps(raw: Dict) -> str:
    return json.dumps(serialize(raw), indent=2) + "\n"
