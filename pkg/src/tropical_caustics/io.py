"""JSON forms of polygons, wave-front states and point sets."""

import json
import re
import sys

from .caustic import fmt_number, parse_number
from .domain import from_vertices, state_vertices


def read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as f:
        return json.load(f)


_FLAT = re.compile(r"\[\s+([^\[\]{}\"]*|(?:\s*\"[^\"]*\",?)*)\s+\]")


def dumps(obj):
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2)
    text = _FLAT.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1).strip()) + "]", text)
    return text + "\n"


def write_text(text, path=None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def polygon_from_json(d):
    """{"vertices": [[x, y], ...]} with ints, floats or "num/den" strings."""
    try:
        pts = [(parse_number(x), parse_number(y)) for x, y in d["vertices"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed polygon JSON: {exc}") from exc
    if any(isinstance(c, float) for p in pts for c in p):
        raise ValueError("polygon coordinates must be integers or rationals")
    return from_vertices(pts)


def point_json(p, exact=True):
    return [fmt_number(p[0], exact), fmt_number(p[1], exact)]


def polygon_to_json(P):
    return {"vertices": [point_json(v) for v in P.vertices]}


def state_to_json(state):
    if state.kind == "empty":
        return {"empty": True}
    return {"kind": state.kind, "vertices": [point_json(v) for v in state_vertices(state)]}


def points_to_json(arr):
    return [[fmt_number(float(x), False), fmt_number(float(y), False)] for x, y in arr]
