"""Caustic coordinates: realizability of abstract caustics and recovery of the domain.

Abstract caustic encoding.  Edges carry ids, lengths and weights; "from"
points away from the final locus.  The final element carries its type as
the counterclockwise list of monomial normals active just before the final
time.  For a final point at vertex F, the edges into F listed in order
carry the particles (n[0], n[1]), (n[1], n[2]), ... cyclically.  For a
final segment the final edge runs from its first end to its second end;
n[0] and some n[j] = -n[0] are the two normals of the segment, the first
end receives the particles (n[0], n[1]) .. (n[j-1], n[j]) and the second
end the remaining ones.  At every vertex the edges leading away from the
final locus are listed in the counterclockwise order of the wave front.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .caustic import BRANCH, FINAL_POINT, FINAL_SEGMENT_END, LEAF, CausticGraph
from .lattice import Covector, LatticeVector, det2, primitive
from .verify import CheckResult, VerificationReport, _angle_cmp


@dataclass
class AbstractEdge:
    id: str
    source: str
    target: str
    length: object
    weight: int


@dataclass
class AbstractCaustic:
    edges: list
    final_kind: str
    final_at: str  # final vertex id (point) or final edge id (segment)
    normals: list

    def edge(self, eid):
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def to_json(self):
        from .caustic import fmt_number

        return {
            "edges": [{"id": e.id, "from": e.source, "to": e.target,
                       "len": fmt_number(e.length, not isinstance(e.length, float)),
                       "weight": e.weight} for e in self.edges],
            "final": {"kind": self.final_kind,
                      ("vertex" if self.final_kind == "point" else "edge"): self.final_at,
                      "type": {"normals": [list(n) for n in self.normals]}},
        }

    @classmethod
    def from_json(cls, d):
        from .caustic import parse_number

        try:
            edges = [AbstractEdge(str(e["id"]), str(e["from"]), str(e["to"]),
                                  parse_number(e.get("len")), int(e["weight"])) for e in d["edges"]]
            fin = d["final"]
            kind = fin["kind"]
            if kind not in ("point", "segment"):
                raise ValueError(f"unknown final kind {kind!r}")
            at = str(fin["vertex"] if kind == "point" else fin["edge"])
            normals = [Covector(int(a), int(b)) for a, b in fin["type"]["normals"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed abstract caustic: {exc!r}") from exc
        return cls(edges, kind, at, normals)


# linear forms in the edge lengths

class Form(dict):
    """Linear form: variable -> coefficient (Fractions)."""

    def __add__(self, other):
        out = Form(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
            if out[k] == 0:
                del out[k]
        return out

    def scale(self, s):
        return Form({k: v * s for k, v in self.items() if v * s != 0})

    def __sub__(self, other):
        return self + other.scale(-1)

    def value(self, lengths):
        if any(lengths.get(k) is None for k in self):
            return None
        return sum((v * lengths[k] for k, v in self.items()), Fraction(0))

    def text(self, order):
        terms = sorted(self.items(), key=lambda kv: order.index(kv[0]))
        out = ""
        for k, v in terms:
            sign = "-" if v < 0 else "+"
            a = abs(v)
            coef = "" if a == 1 else f"{a}*"
            if not out:
                out = f"{'-' if v < 0 else ''}{coef}{k}"
            else:
                out += f" {sign} {coef}{k}"
        return out or "0"


def var(name):
    return Form({name: Fraction(1)})


def vec_form(lf, d):
    return (lf.scale(d[0]), lf.scale(d[1]))


@dataclass
class Relation:
    text: str
    form: Form  # relation is form == 0 or form >= 0
    value: object = None
    satisfied: object = None
    kind: str = ""
    implied: bool = False


@dataclass
class RealizabilityReport:
    equalities: list = field(default_factory=list)
    inequalities: list = field(default_factory=list)
    chain: str = ""
    verdict: str = None  # None when lengths are symbolic

    def nontrivial(self):
        return [r for r in self.inequalities if r.kind == "side" and not r.implied]

    def to_json(self):
        from .caustic import fmt_number

        def rel(r):
            return {"relation": r.text, "value": None if r.value is None else
                    fmt_number(r.value, not isinstance(r.value, float)),
                    "satisfied": r.satisfied, "kind": r.kind, "implied": r.implied}

        return {"chain": self.chain, "equalities": [rel(r) for r in self.equalities],
                "inequalities": [rel(r) for r in self.inequalities], "verdict": self.verdict}


@dataclass
class Walk:
    """Result of assigning normals along an abstract caustic."""
    pairs: dict  # edge id -> (L, R)
    directions: dict  # edge id -> primitive direction (towards the final locus)
    positions: dict  # vertex id -> (Form, Form)
    paths: dict  # vertex id -> Form (length of the path to the final locus)
    leaves: list  # leaf vertex ids in counterclockwise order
    root: str
    order: list  # variable order for printing
    outer: dict  # edge id -> endpoint farther from the final locus


def _tree(a):
    adj = {}
    for e in a.edges:
        if e.weight < 1:
            raise ValueError(f"edge {e.id} has non-positive weight")
        adj.setdefault(e.source, []).append(e)
        adj.setdefault(e.target, []).append(e)
    if len({e.id for e in a.edges}) != len(a.edges):
        raise ValueError("duplicate edge ids")
    if len(adj) != len(a.edges) + 1:
        raise ValueError("graph is not a tree")
    return adj


def walk(a):
    """Assign monomial normals to all edges, starting at the final type."""
    adj = _tree(a)
    normals = [Covector(*n) for n in a.normals]
    k = len(normals)
    if k < 2:
        raise ValueError("final type needs at least two normals")
    pairs, dirs, pos, paths, outer = {}, {}, {}, {}, {}
    leaves = []
    zero = (Form(), Form())

    def children(v, parent_edge):
        return [e for e in adj[v] if e is not parent_edge and not (
            a.final_kind == "segment" and e.id == a.final_at)]

    def motion(L, R, e):
        d = det2(L, R)
        if d <= 0:
            raise ValueError(f"edge {e.id}: normals {tuple(L)}, {tuple(R)} are not positively oriented")
        direction, mass = primitive((R[1] - L[1], L[0] - R[0]))
        if mass != d or mass != e.weight:
            raise ValueError(f"edge {e.id}: weight {e.weight} does not match the final type")
        return direction

    def descend(v, e, L, R):
        # e leads from the final side vertex v outward, carrying particle (L, R)
        child = e.source if e.target == v else e.target
        direction = motion(L, R, e)
        pairs[e.id] = (L, R)
        dirs[e.id] = direction
        outer[e.id] = child
        lv = var(e.id)
        pos[child] = (pos[v][0] - lv.scale(direction[0]), pos[v][1] - lv.scale(direction[1]))
        paths[child] = paths[v] + lv
        kids = children(child, e)
        if not kids:
            leaves.append(child)
            return
        if len(kids) != 2:
            raise ValueError(f"vertex {child} has {len(kids) + 1} edges; branch points are trivalent")
        if det2(L, R) != 1:
            raise ValueError(f"edge {e.id} of weight {e.weight} cannot branch")
        wa, wb = kids[0].weight, kids[1].weight
        if min(wa, wb) != 1:
            raise ValueError(f"vertex {child}: two incoming weights above one")
        mu = Covector(wb * L[0] + wa * R[0], wb * L[1] + wa * R[1])
        descend(child, kids[0], L, mu)
        descend(child, kids[1], mu, R)

    if a.final_kind == "point":
        root = a.final_at
        if root not in adj:
            raise ValueError(f"final vertex {root} not in the tree")
        kids = children(root, None)
        if len(kids) != k:
            raise ValueError(f"final vertex has {len(kids)} edges but the type lists {k} normals")
        pos[root], paths[root] = zero, Form()
        for i, e in enumerate(kids):
            descend(root, e, normals[i], normals[(i + 1) % k])
    else:
        fe = a.edge(a.final_at)
        if fe.weight != 2:
            raise ValueError("the final segment must have weight 2")
        n = normals[0]
        try:
            j = normals.index(Covector(-n[0], -n[1]))
        except ValueError:
            raise ValueError("segment final type needs an antipodal pair of normals") from None
        u, v = fe.source, fe.target
        d0 = LatticeVector(-n[1], n[0])
        root = u
        pos[u], paths[u] = zero, Form()
        pos[v], paths[v] = vec_form(var(fe.id), d0), Form()
        dirs[fe.id] = d0
        pairs[fe.id] = (n, normals[j])
        outer[fe.id] = u
        ku, kv = children(u, fe), children(v, fe)
        if len(ku) != j or len(kv) != k - j:
            raise ValueError("segment ends do not match the final type")
        for i, e in enumerate(ku):
            descend(u, e, normals[i], normals[i + 1])
        for i, e in enumerate(kv):
            descend(v, e, normals[j + i], normals[(j + i + 1) % k])
    order = [e.id for e in a.edges]
    return Walk(pairs, dirs, pos, paths, leaves, root, order, outer)


def _implied(form, eqs, variables):
    """Does form >= 0 follow from the equalities and nonnegative lengths?"""
    from scipy.optimize import linprog

    idx = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    c = [0.0] * n
    for k, v in form.items():
        c[idx[k]] = float(v)
    A = [[0.0] * n for _ in eqs] + [[1.0] * n]
    for row, f in zip(A, eqs):
        for k, v in f.items():
            row[idx[k]] = float(v)
    b = [0.0] * len(eqs) + [1.0]
    res = linprog(c, A_eq=A, b_eq=b, bounds=[(0, None)] * n, method="highs")
    return res.status == 0 and res.fun >= -1e-12


def _cmp(value, tol):
    if value is None:
        return None
    return value if tol is None or isinstance(value, Fraction) else (0 if abs(value) <= tol else value)


def realizability_check(a, tol=1e-9):
    w = walk(a)
    lengths = {e.id: e.length for e in a.edges}
    rep = RealizabilityReport()

    # equal distances from the final locus to every endpoint
    leaf_paths = [w.paths[v] for v in w.leaves]
    rep.chain = " = ".join(p.text(w.order) for p in leaf_paths)
    eq_forms = []
    for p, q in zip(leaf_paths, leaf_paths[1:]):
        f = q - p
        eq_forms.append(f)
        val = _cmp(f.value(lengths), tol)
        rep.equalities.append(Relation(f"{p.text(w.order)} = {q.text(w.order)}", f,
                                       val, None if val is None else val == 0, "distance"))

    for e in a.edges:
        f = var(e.id)
        val = f.value(lengths)
        rep.inequalities.append(Relation(f"{e.id} > 0", f, val, None if val is None else val > 0,
                                         "positivity", True))

    # side lengths of the reconstructed boundary
    nl = len(w.leaves)
    for i in range(nl):
        p, q = w.leaves[i], w.leaves[(i + 1) % nl]
        lam = _leaf_pair(a, w, q)[0]
        if lam != _leaf_pair(a, w, p)[1]:
            raise ValueError("consecutive endpoints do not share a side")
        d = (lam[1], -lam[0])
        dx = w.positions[q][0] - w.positions[p][0]
        dy = w.positions[q][1] - w.positions[p][1]
        comps = [(abs(d[0]), dx.scale(Fraction(1, d[0]))) if d[0] else None,
                 (abs(d[1]), dy.scale(Fraction(1, d[1]))) if d[1] else None]
        s = min((c for c in comps if c), key=lambda c: c[0])[1]
        val = _cmp(s.value(lengths), tol)
        implied = _implied(s, eq_forms, w.order)
        rep.inequalities.append(Relation(f"{s.text(w.order)} >= 0", s, val,
                                         None if val is None else val >= 0, "side", implied))

    if all(e.length is not None for e in a.edges):
        ok_eq = all(r.satisfied for r in rep.equalities)
        ok_in = all(r.satisfied for r in rep.inequalities)
        if not (ok_eq and ok_in):
            rep.verdict = "violated"
        elif any(r.kind == "side" and r.value == 0 for r in rep.inequalities):
            rep.verdict = "boundary"
        else:
            rep.verdict = "realizable"
    return rep


def _leaf_pair(a, w, leaf):
    for e in a.edges:
        if leaf in (e.source, e.target) and e.id in w.pairs:
            return w.pairs[e.id]
    raise KeyError(leaf)


def embed(a):
    """Embed an abstract caustic with numeric lengths; the root sits at the origin."""
    w = walk(a)
    lengths = {e.id: e.length for e in a.edges}
    if any(v is None for v in lengths.values()):
        raise ValueError("embedding needs numeric lengths")
    exact = all(isinstance(v, Fraction) for v in lengths.values())
    g = CausticGraph(exact=exact, final_kind=a.final_kind, final_normals=list(a.normals))
    ids = {}
    leafset = set(w.leaves)
    for vid, (fx, fy) in w.positions.items():
        kind = LEAF if vid in leafset else BRANCH
        if vid == w.root or (a.final_kind == "segment" and vid in (a.edge(a.final_at).source,
                                                                   a.edge(a.final_at).target)):
            kind = FINAL_POINT if a.final_kind == "point" else FINAL_SEGMENT_END
        ids[vid] = g.add_vertex((fx.value(lengths), fy.value(lengths)), None, kind)
    t_final = max(w.paths[v].value(lengths) for v in w.leaves)
    for vid, i in ids.items():
        v = g.vertices[i]
        v.time = 0 if v.kind == LEAF else t_final - w.paths[vid].value(lengths)
    g.t_final = t_final
    for e in a.edges:
        final = a.final_kind == "segment" and e.id == a.final_at
        src = w.outer[e.id]
        dst = e.target if src == e.source else e.source
        g.add_edge(ids[src], ids[dst], w.directions[e.id], e.weight, e.length,
                   normals=w.pairs[e.id], final=final)
    return g


@dataclass
class DomainPolygon:
    vertices: list
    convex: bool

    def polygon(self):
        from .domain import from_vertices

        return from_vertices(self.vertices)


def reconstruct_domain(G):
    """Join the endpoints of an embedded caustic in their cyclic order.

    Endpoints shared by several edges are split, one copy per edge, so the
    walk around the caustic is a walk around a tree.
    """
    nbrs, posn = {}, {}

    def node(v, e):
        key = ("leaf", v, e.id) if G.vertices[v].kind == LEAF else v
        posn[key] = tuple(G.vertices[v].pos)
        nbrs.setdefault(key, [])
        return key

    for e in G.edges:
        if e.target is None:
            raise ValueError("caustics with rays to infinity are not supported")
        a, b = node(e.source, e), node(e.target, e)
        d = tuple(e.direction)
        nbrs[a].append((d, b))
        nbrs[b].append(((-d[0], -d[1]), a))
    for k in nbrs:
        nbrs[k].sort(key=cmp_to_key(lambda p, q: _angle_cmp(p[0], q[0])))
    finals = G.final_vertices()
    if not finals:
        raise ValueError("caustic has no final locus")
    start = finals[0].id
    first = (start, nbrs[start][0][1])
    cur = first
    seq = []
    for _ in range(2 * len(G.edges) + 2):
        u, w = cur
        lst = nbrs[w]
        if isinstance(w, tuple):
            seq.append(posn[w])
        back = next(i for i, (_, x) in enumerate(lst) if x == u)
        cur = (w, lst[(back + 1) % len(lst)][1])
        if cur == first:
            break
    else:
        raise ValueError("tour did not close")
    pts = []
    for p in seq:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if pts:
        k = pts.index(min(pts))
        pts = pts[k:] + pts[:k]
    from .domain import from_vertices

    try:
        from_vertices(pts)
        convex = True
    except ValueError:
        convex = False
    return DomainPolygon(pts, convex)


def abstract_from_caustic(G):
    """Abstract caustic of an engine result, endpoints split per edge."""
    fin = G.final_vertices()
    if G.final_kind is None or not fin:
        raise ValueError("caustic has no final locus")
    fe = G.final_edge()
    name = {v.id: f"v{v.id}" for v in G.vertices}
    incoming = {}
    for e in G.edges:
        if not e.final:
            incoming.setdefault(e.target, []).append(e)

    def chain(v, start):
        kids = incoming.get(v, [])
        by_left = {tuple(e.normals[0]): e for e in kids}
        out = []
        cur = tuple(start)
        while cur in by_left and len(out) < len(kids):
            e = by_left[cur]
            out.append(e)
            cur = tuple(e.normals[1])
        if len(out) != len(kids):
            raise ValueError(f"edges into vertex {v} do not chain")
        return out

    edges = []

    def emit(v, start):
        for e in chain(v, start):
            src = e.source
            if G.vertices[src].kind == LEAF:
                sid = f"v{src}e{e.id}"
            else:
                sid = name[src]
            edges.append(AbstractEdge(f"e{e.id}", sid, name[v], e.length, e.weight))
            if G.vertices[src].kind != LEAF:
                emit(src, e.normals[0])

    normals = list(G.final_normals)
    if G.final_kind == "point":
        emit(fin[0].id, normals[0])
        return AbstractCaustic(edges, "point", name[fin[0].id], normals)
    n = normals[0]
    j = normals.index(Covector(-n[0], -n[1]))
    edges.append(AbstractEdge(f"e{fe.id}", name[fe.source], name[fe.target], fe.length, 2))
    emit(fe.source, normals[0])
    emit(fe.target, normals[j])
    return AbstractCaustic(edges, "segment", f"e{fe.id}", normals)


def same_cycle(a, b):
    a, b = [tuple(p) for p in a], [tuple(p) for p in b]
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = b.index(a[0])
    except ValueError:
        return False
    return b[k:] + b[:k] == a


def round_trip_check(P, run=None):
    if run is None:
        from .engine import run
    res = run(P)
    checks = []
    dom = reconstruct_domain(res.caustic)
    ok = dom.convex and same_cycle(dom.vertices, P.vertices)
    checks.append(CheckResult("reconstruct_domain", ok,
                              [] if ok else [{"got": [list(p) for p in dom.vertices]}]))
    a = abstract_from_caustic(res.caustic)
    rep = realizability_check(a)
    bad = [r.text for r in rep.equalities + rep.inequalities if r.satisfied is False]
    checks.append(CheckResult("realizability", rep.verdict != "violated", bad))
    dom2 = reconstruct_domain(embed(a))
    ok2 = any(same_cycle([(p[0] + P.vertices[0][0] - q[0], p[1] + P.vertices[0][1] - q[1])
                          for p in dom2.vertices], P.vertices) for q in dom2.vertices)
    checks.append(CheckResult("abstract_round_trip", ok2))
    return VerificationReport(checks)
