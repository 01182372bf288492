"""Caustic graph data model and its JSON form."""

from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import Covector, LatticeVector

LEAF = "leaf"
BRANCH = "branch"
FINAL_POINT = "final_point"
FINAL_SEGMENT_END = "final_segment_end"
KINDS = (LEAF, BRANCH, FINAL_POINT, FINAL_SEGMENT_END)


@dataclass
class CausticVertex:
    id: int
    pos: tuple
    time: object
    kind: str
    stub: bool = False


@dataclass
class CausticEdge:
    id: int
    source: int
    target: object  # vertex id, or None for a ray to infinity
    direction: LatticeVector
    weight: int
    length: object
    normals: tuple = None  # flanking (left, right) covectors when known
    final: bool = False


@dataclass
class CausticGraph:
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    final_kind: str = None  # "point", "segment" or None (open domains)
    t_final: object = None
    final_normals: list = None
    exact: bool = True

    def add_vertex(self, pos, time, kind, stub=False):
        v = CausticVertex(len(self.vertices), tuple(pos), time, kind, stub)
        self.vertices.append(v)
        return v.id

    def add_edge(self, source, target, direction, weight, length, normals=None, final=False):
        e = CausticEdge(len(self.edges), source, target, LatticeVector(*direction), weight,
                        length, normals, final)
        self.edges.append(e)
        return e.id

    def vertex(self, i):
        return self.vertices[i]

    def incoming(self, v):
        return [e for e in self.edges if e.target == v and not e.final]

    def outgoing(self, v):
        return [e for e in self.edges if e.source == v and not e.final]

    def final_edge(self):
        for e in self.edges:
            if e.final:
                return e
        return None

    def final_vertices(self):
        return [v for v in self.vertices if v.kind in (FINAL_POINT, FINAL_SEGMENT_END)]

    def leaves(self):
        return [v for v in self.vertices if v.kind == LEAF]

    def weights(self):
        return sorted({e.weight for e in self.edges})

    def to_float(self):
        g = CausticGraph(final_kind=self.final_kind, exact=False,
                         t_final=None if self.t_final is None else float(self.t_final),
                         final_normals=self.final_normals)
        for v in self.vertices:
            g.vertices.append(CausticVertex(v.id, (float(v.pos[0]), float(v.pos[1])),
                                            float(v.time), v.kind, v.stub))
        for e in self.edges:
            g.edges.append(CausticEdge(e.id, e.source, e.target, e.direction, e.weight,
                                       float(e.length), e.normals, e.final))
        return g


# serialization

def fmt_number(x, exact=True):
    if x is None:
        return None
    if isinstance(x, Fraction) or (exact and isinstance(x, int)):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    x = float(x)
    if x != x or x in (float("inf"), float("-inf")):
        return None
    s = float(f"{x:.12g}")
    return 0.0 if s == 0 else s


def parse_number(v):
    if v is None:
        return None
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, bool):
        raise ValueError("boolean is not a number")
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def graph_to_json(g):
    ex = g.exact
    out = {
        "vertices": [
            {"id": v.id, "pos": [fmt_number(v.pos[0], ex), fmt_number(v.pos[1], ex)],
             "time": fmt_number(v.time, ex), "kind": v.kind, **({"stub": True} if v.stub else {})}
            for v in g.vertices
        ],
        "edges": [
            {"id": e.id, "from": e.source, "to": e.target, "dir": [e.direction.x, e.direction.y],
             "weight": e.weight, "len": fmt_number(e.length, ex),
             **({"normals": [list(e.normals[0]), list(e.normals[1])]} if e.normals else {}),
             **({"final": True} if e.final else {})}
            for e in g.edges
        ],
        "final": {"kind": g.final_kind,
                  "normals": [list(n) for n in g.final_normals] if g.final_normals else None},
        "t_final": fmt_number(g.t_final, ex),
        "exact": ex,
    }
    return out


def graph_from_json(d):
    try:
        exact = bool(d.get("exact", True))
        g = CausticGraph(exact=exact)
        fin = d.get("final") or {}
        g.final_kind = fin.get("kind")
        if fin.get("normals"):
            g.final_normals = [Covector(int(a), int(b)) for a, b in fin["normals"]]
        g.t_final = parse_number(d.get("t_final"))
        for i, v in enumerate(d["vertices"]):
            if int(v["id"]) != i:
                raise ValueError("vertex ids must be 0..n-1 in order")
            if v["kind"] not in KINDS:
                raise ValueError(f"unknown vertex kind {v['kind']!r}")
            pos = tuple(parse_number(c) for c in v["pos"])
            g.vertices.append(CausticVertex(i, pos, parse_number(v["time"]), v["kind"],
                                            bool(v.get("stub", False))))
        for i, e in enumerate(d["edges"]):
            normals = None
            if e.get("normals"):
                normals = tuple(Covector(int(a), int(b)) for a, b in e["normals"])
            length = e.get("len")
            g.edges.append(CausticEdge(i, int(e["from"]), None if e["to"] is None else int(e["to"]),
                                       LatticeVector(int(e["dir"][0]), int(e["dir"][1])),
                                       int(e["weight"]),
                                       float("inf") if length is None else parse_number(length),
                                       normals, bool(e.get("final", False))))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed caustic JSON: {exc!r}") from exc
    n = len(g.vertices)
    for e in g.edges:
        if not 0 <= e.source < n or (e.target is not None and not 0 <= e.target < n):
            raise ValueError(f"edge {e.id} references a missing vertex")
    return g
