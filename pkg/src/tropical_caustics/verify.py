"""Checks on caustic graphs: balancing, local models, Noether-type identity,
time/length coherence and Minkowski additivity."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .caustic import BRANCH, FINAL_POINT, FINAL_SEGMENT_END, LEAF
from .domain import distance_series_eval, lattice_perimeter, minkowski_sum, monomial_set
from .lattice import det2


@dataclass
class CheckResult:
    name: str
    passed: object  # True, False, or None for "not comparable"
    witnesses: list = field(default_factory=list)
    residual: object = 0
    note: str = ""

    def to_json(self):
        from .caustic import fmt_number

        res = self.residual
        return {
            "check": self.name,
            "status": {True: "pass", False: "fail", None: "not comparable"}[self.passed],
            "residual": fmt_number(res, isinstance(res, (int, Fraction))),
            "witnesses": [_jsonable(w) for w in self.witnesses],
            **({"note": self.note} if self.note else {}),
        }


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed is not False for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def merge(self, other):
        return VerificationReport(self.checks + other.checks)

    def to_json(self):
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _jsonable(x):
    from .caustic import fmt_number

    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return fmt_number(x)
    return x


def _single(name, witnesses, residual=0, note=""):
    return VerificationReport([CheckResult(name, not witnesses, witnesses, residual, note)])


def _interior(v):
    return v.kind != LEAF and not v.stub


def check_balancing(G):
    """Weighted outgoing primitive directions cancel at every interior vertex."""
    sums = {v.id: [0, 0] for v in G.vertices if _interior(v)}
    for e in G.edges:
        if e.source in sums:
            sums[e.source][0] += e.weight * e.direction[0]
            sums[e.source][1] += e.weight * e.direction[1]
        if e.target is not None and e.target in sums:
            sums[e.target][0] -= e.weight * e.direction[0]
            sums[e.target][1] -= e.weight * e.direction[1]
    bad = [{"vertex": v, "sum": s} for v, s in sums.items() if s != [0, 0]]
    return _single("balancing", bad)


def _angle_cmp(u, v):
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = det2(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def interior_points_of_cycle(vectors):
    """Interior lattice points of the convex polygon with the given edge vectors.

    The vectors must sum to zero; they are sorted by angle and chained.
    """
    vs = sorted(vectors, key=cmp_to_key(_angle_cmp))
    area2 = 0
    x = y = 0
    for dx, dy in vs:
        area2 += x * dy - y * dx
        x, y = x + dx, y + dy
    assert (x, y) == (0, 0)
    boundary = sum(gcd(dx, dy) for dx, dy in vs)
    # Pick: A = I + B/2 - 1
    return (area2 - boundary + 2) // 2


def _momenta_into(G, v):
    out = []
    for e in G.edges:
        if e.target == v and not e.final:
            out.append((e.weight * e.direction[0], e.weight * e.direction[1]))
    return out


def check_local_models(G):
    bad = []
    for v in G.vertices:
        if v.kind == BRANCH:
            ins = [e for e in G.edges if e.target == v.id and not e.final]
            outs = [e for e in G.edges if e.source == v.id and not e.final]
            if len(ins) != 2 or len(outs) != 1:
                bad.append({"vertex": v.id, "reason": f"valence {len(ins)}+{len(outs)}"})
                continue
            if outs[0].weight != 1:
                bad.append({"vertex": v.id, "reason": f"emits mass {outs[0].weight}"})
                continue
            w = sorted(e.weight for e in ins)
            if w[0] != 1:
                bad.append({"vertex": v.id, "reason": f"two heavy incoming masses {w}"})
                continue
            m1, m2 = [(e.weight * e.direction[0], e.weight * e.direction[1]) for e in ins]
            if abs(det2(m1, m2)) != w[1]:
                bad.append({"vertex": v.id, "reason": "dual triangle is not of type A_n"})
        elif v.kind == FINAL_POINT:
            moms = _momenta_into(G, v.id)
            if len(moms) < 2 or sum(m[0] for m in moms) or sum(m[1] for m in moms):
                bad.append({"vertex": v.id, "reason": "unbalanced final point"})
                continue
            rot = [(-m[1], m[0]) for m in moms]
            k = interior_points_of_cycle(rot)
            if k != 1:
                bad.append({"vertex": v.id, "reason": f"dual polygon has {k} interior points"})
        elif v.kind == FINAL_SEGMENT_END:
            fe = G.final_edge()
            if fe is None or fe.weight != 2 or v.id not in (fe.source, fe.target):
                bad.append({"vertex": v.id, "reason": "no weight-2 final segment"})
                continue
            moms = _momenta_into(G, v.id)
            sx, sy = sum(m[0] for m in moms), sum(m[1] for m in moms)
            sign = 1 if v.id == fe.source else -1
            if (sx, sy) != (2 * sign * fe.direction[0], 2 * sign * fe.direction[1]):
                bad.append({"vertex": v.id, "reason": "momenta do not form a mass-2 particle"})
                continue
            # lattice polygons without interior points that carry an edge of
            # length two are exactly the end schemes of a final segment
            rot = [(-m[1], m[0]) for m in moms] + [(sy, -sx)]
            if interior_points_of_cycle(rot) != 0:
                bad.append({"vertex": v.id, "reason": "end scheme has interior points"})
    return _single("local_models", bad)


def weighted_length(G):
    return sum(e.weight * e.length for e in G.edges if e.target is not None)


def final_segment_length(G):
    fe = G.final_edge()
    return fe.length if fe is not None else 0


def check_noether(P, G):
    """perimeter + weighted caustic length = 4 * final segment + 12 * t_final."""
    lhs = lattice_perimeter(P) + weighted_length(G)
    rhs = 4 * final_segment_length(G) + 12 * G.t_final
    res = lhs - rhs
    bad = [] if res == 0 else [{"lhs": lhs, "rhs": rhs}]
    return _single("noether", bad, res)


def check_times_lengths(P, G, tol=None):
    mons = monomial_set(P)
    bad = []
    worst = 0

    def differ(a, b):
        nonlocal worst
        if tol is None:
            return a != b
        worst = max(worst, abs(a - b))
        return abs(a - b) > tol

    for v in G.vertices:
        f = distance_series_eval(P, v.pos, mons) if tol is None else \
            min(m.normal[0] * v.pos[0] + m.normal[1] * v.pos[1] + float(m.c) for m in mons)
        if differ(f, v.time):
            bad.append({"vertex": v.id, "time": v.time, "series": f})
    for e in G.edges:
        if e.target is None:
            continue
        a, b = G.vertices[e.source], G.vertices[e.target]
        if e.final:
            if differ(a.time, G.t_final) or differ(b.time, G.t_final):
                bad.append({"edge": e.id, "reason": "final segment ends off the final time"})
        elif differ(e.length, b.time - a.time):
            bad.append({"edge": e.id, "length": e.length, "dt": b.time - a.time})
        for k in (0, 1):
            if differ(a.pos[k] + e.length * e.direction[k], b.pos[k]):
                bad.append({"edge": e.id, "reason": "length times direction misses the endpoint"})
                break
    return _single("times_lengths", bad, worst)


def _edge_key(e):
    return (tuple(e.normals[0]), tuple(e.normals[1]), e.weight, e.final)


def check_minkowski_additivity(P, Q, run=None):
    """Edge lengths of caustics with the same combinatorics add under P + Q."""
    if run is None:
        from .engine import run
    gp, gq = run(P).caustic, run(Q).caustic
    gs = run(minkowski_sum(P, Q)).caustic
    kp = {_edge_key(e): e.length for e in gp.edges}
    kq = {_edge_key(e): e.length for e in gq.edges}
    ks = {_edge_key(e): e.length for e in gs.edges}
    if gp.final_kind != gq.final_kind or set(kp) != set(kq) or set(kp) != set(ks):
        return VerificationReport([CheckResult("minkowski_additivity", None,
                                               note="caustics are not combinatorially identical")])
    bad = [{"edge": list(k[:2]), "sum": ks[k], "parts": [kp[k], kq[k]]}
           for k in sorted(kp) if ks[k] != kp[k] + kq[k]]
    return _single("minkowski_additivity", bad)


CHECKS = ("balancing", "local_models", "noether", "times_lengths")


def verify(G, P=None, checks=CHECKS, tol=None):
    report = VerificationReport()
    for name in checks:
        if name == "balancing":
            report = report.merge(check_balancing(G))
        elif name == "local_models":
            report = report.merge(check_local_models(G))
        elif name == "noether":
            if P is None:
                raise ValueError("the noether check needs the polygon")
            report = report.merge(check_noether(P, G))
        elif name == "times_lengths":
            if P is None:
                raise ValueError("the times_lengths check needs the polygon")
            report = report.merge(check_times_lengths(P, G, tol))
        else:
            raise ValueError(f"unknown check {name!r}")
    return report
