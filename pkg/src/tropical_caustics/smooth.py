"""Caustics of smooth convex domains from support constants.

A domain is described by its support constants c(lam) = -inf over the domain
of lam, for primitive covectors lam, plus a seed fan: the normals of a
polygon whose caustic has no vertices away from the final locus.  The rest
of the caustic grows by Stern-Brocot refinement of unimodular seed pairs.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .caustic import BRANCH, LEAF, CausticGraph, CausticVertex
from .domain import Monomial
from .engine import meet, run_monomials
from .lattice import Covector, LatticeVector, det2, hull_boundary_in_cone

RIGID = 1e-12


@dataclass
class SupportOracle:
    c: object
    seed_fan: list
    corner_marks: frozenset = frozenset()
    name: str = ""
    symmetry: str = ""
    compact: bool = True
    extra: dict = field(default_factory=dict)

    def is_corner(self, l1, l2):
        return (tuple(l1), tuple(l2)) in self.corner_marks


def critical_time(o, l1, l2):
    if det2(l1, l2) != 1:
        raise ValueError(f"pair {tuple(l1)}, {tuple(l2)} is not unimodular")
    mu = (l1[0] + l2[0], l1[1] + l2[1])
    return float(o.c(l1)) + float(o.c(l2)) - float(o.c(mu))


def branch_vertex(o, l1, l2):
    """Point where both monomials reach the pair's critical time."""
    t = critical_time(o, l1, l2)
    r1, r2 = t - float(o.c(l1)), t - float(o.c(l2))
    (a1, b1), (a2, b2) = l1, l2
    d = a1 * b2 - b1 * a2
    return ((r1 * b2 - b1 * r2) / d, (a1 * r2 - r1 * a2) / d)


def pair_velocity(l1, l2):
    d = det2(l1, l2)
    return LatticeVector((l2[1] - l1[1]) // d, (l1[0] - l2[0]) // d)


# built-in domains

def disc(r=1.0):
    return SupportOracle(lambda lam: r * math.hypot(lam[0], lam[1]),
                         [Covector(1, 0), Covector(0, 1), Covector(-1, 0), Covector(0, -1)],
                         name="disc", symmetry="D4", extra={"r": r})


def ellipse(alpha):
    return SupportOracle(lambda lam: math.hypot(lam[0], alpha * lam[1]),
                         [Covector(1, 0), Covector(0, 1), Covector(-1, 0), Covector(0, -1)],
                         name="ellipse", symmetry="D2", extra={"alpha": alpha})


def amoeba_c(lam):
    """Support constant of {x < 0, y <= log(1 - e^x)} for lam = (-p, -q)."""
    p, q = -lam[0], -lam[1]
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise ValueError(f"covector {tuple(lam)} has unbounded support on the amoeba component")
    s = p + q
    out = 0.0
    if p:
        out += p * math.log(p / s)
    if q:
        out += q * math.log(q / s)
    return out


def amoeba_tangency(lam):
    """Abscissa of the boundary point where lam attains its infimum."""
    p, q = -lam[0], -lam[1]
    return math.log(p / (p + q))


def amoeba_line():
    return SupportOracle(amoeba_c, [Covector(-1, 0), Covector(0, -1)],
                         name="amoeba", symmetry="x<->y", compact=False)


def cubic_c(lam):
    """Support constant of the loop of y^2 = x^2 (x + 1).

    The loop is (m^2 - 1, m^3 - m) for slopes m in [-1, 1]; the minimum of
    lam along it is found among the endpoints and the critical slopes.
    """
    a, b = lam[0], abs(lam[1])

    def g(m):
        return a * (m * m - 1) + b * (m ** 3 - m)

    cands = [0.0]
    if b == 0:
        cands.append(g(0.0))
    else:
        disc_ = math.sqrt(a * a + 3 * b * b)
        for m in ((-a + disc_) / (3 * b), (-a - disc_) / (3 * b)):
            if -1 <= m <= 1:
                cands.append(g(m))
    return 0.0 - min(cands)


def nodal_cubic():
    fan = [Covector(1, 0), Covector(0, 1), Covector(-1, 1), Covector(-1, -1), Covector(0, -1)]
    return SupportOracle(cubic_c, fan, frozenset({((-1, 1), (-1, -1))}),
                         name="nodal_cubic", symmetry="y->-y")


def polygon_oracle(P):
    """Oracle with the exact support constants of a rational polygon."""
    from .domain import monomial_set

    fan = [m.normal for m in monomial_set(P)]
    marks = frozenset((tuple(a), tuple(b)) for a, b in zip(fan, fan[1:] + fan[:1])
                      if det2(a, b) > 1)
    return SupportOracle(P.support, fan, marks, name="polygon")


def builtin_oracles():
    return {"disc": disc, "ellipse": ellipse, "amoeba": amoeba_line, "cubic": nodal_cubic}


# caustic construction

def _seed_monomials(o):
    fan = [Covector(*l) for l in o.seed_fan]
    mons = [Monomial(l, Fraction(o.c(l))) for l in fan]
    out = []
    n = len(fan)
    for i in range(n):
        a, b = mons[i], mons[(i + 1) % n]
        out.append(a)
        d = det2(a.normal, b.normal)
        if d <= 0:
            raise ValueError("seed fan does not bound a compact minimal model")
        if d > 1:
            if not o.is_corner(a.normal, b.normal):
                raise ValueError(f"seed pair {tuple(a.normal)}, {tuple(b.normal)} "
                                 "has det > 1 but is not corner-marked")
            apex = meet(a, b)
            for lam in hull_boundary_in_cone((a.normal, b.normal))[1:-1]:
                out.append(Monomial(lam, -(lam[0] * apex[0] + lam[1] * apex[1])))
    return out


def _cone_spine(o):
    l1, l2 = [Covector(*l) for l in o.seed_fan]
    if det2(l1, l2) <= 0:
        raise ValueError("seed cone is not salient")
    m1, m2 = Monomial(l1, Fraction(o.c(l1))), Monomial(l2, Fraction(o.c(l2)))
    apex = meet(m1, m2)
    g = CausticGraph(exact=False)
    v = g.add_vertex((float(apex[0]), float(apex[1])), 0.0, LEAF)
    from .lattice import cone_rule

    verts = hull_boundary_in_cone((l1, l2))
    for (a, b), ray in zip(zip(verts, verts[1:]), cone_rule((l1, l2))):
        g.add_edge(v, None, ray.direction, ray.weight, math.inf, normals=(a, b))
    return g


def build_caustic(o, eps=1e-3, max_depth=8, tol=1e-9):
    """Float caustic: exact spine of the minimal model plus Farey refinement."""
    if o.compact:
        res = run_monomials(_seed_monomials(o), tol=tol)
        g = res.caustic.to_float()
    else:
        if len(o.seed_fan) != 2:
            raise ValueError("open domains are supported only with a two-normal seed cone")
        g = _cone_spine(o)

    seeds = [Covector(*l) for l in o.seed_fan]
    pairs = list(zip(seeds, seeds[1:] + seeds[:1])) if o.compact else [tuple(seeds)]
    by_normals = {tuple(map(tuple, e.normals)): e for e in g.edges if e.normals and not e.final}
    for l1, l2 in pairs:
        if det2(l1, l2) != 1 or o.is_corner(l1, l2):
            continue
        e = by_normals.get((tuple(l1), tuple(l2)))
        if e is None:
            raise ValueError(f"seed pair {tuple(l1)}, {tuple(l2)} traces no spine edge")
        _refine(g, o, l1, l2, e, 0, eps, max_depth, tol)
    return _prune(g)


def _refine(g, o, l1, l2, edge, depth, eps, max_depth, tol):
    t = critical_time(o, l1, l2)
    if t < -tol:
        raise ValueError(f"negative critical time {t} at {tuple(l1)}, {tuple(l2)}: oracle is not convex")
    if t < RIGID:
        return
    leaf = g.vertices[edge.source]
    if t <= eps or depth > max_depth:
        leaf.stub = True
        return
    end = math.inf if edge.target is None else g.vertices[edge.target].time
    if t >= end - tol:
        raise ValueError(f"critical time {t} of {tuple(l1)}, {tuple(l2)} exceeds its spine edge")
    b = g.add_vertex(branch_vertex(o, l1, l2), t, BRANCH)
    edge.source = b
    edge.length = end - t
    mu = Covector(l1[0] + l2[0], l1[1] + l2[1])
    bp = g.vertices[b].pos
    for l, r in ((l1, mu), (mu, l2)):
        v = pair_velocity(l, r)
        s = g.add_vertex((bp[0] - t * v[0], bp[1] - t * v[1]), 0.0, LEAF)
        e = g.edges[g.add_edge(s, b, v, 1, t, normals=(l, r))]
        _refine(g, o, l, r, e, depth + 1, eps, max_depth, tol)


def _prune(g):
    used = {e.source for e in g.edges} | {e.target for e in g.edges if e.target is not None}
    keep = [v for v in g.vertices if v.id in used]
    remap = {v.id: i for i, v in enumerate(keep)}
    g.vertices = [CausticVertex(remap[v.id], v.pos, v.time, v.kind, v.stub) for v in keep]
    for e in g.edges:
        e.source = remap[e.source]
        if e.target is not None:
            e.target = remap[e.target]
    return g


def disc_area_series(max_denominator):
    """Partial sums of 2 * sum of squared critical times of the unit disc.

    Runs over the Stern-Brocot pairs (a,b), (c,d) in the closed first
    quadrant with a+c, b+d <= max_denominator.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    terms = []
    stack = [((1, 0), (0, 1))]
    hyp = math.hypot
    while stack:
        (a, b), (c, d) = stack.pop()
        e, f = a + c, b + d
        if e > max_denominator or f > max_denominator:
            continue
        t = hyp(a, b) + hyp(c, d) - hyp(e, f)
        terms.append(t * t)
        stack.append(((a, b), (e, f)))
        stack.append(((e, f), (c, d)))
    return 2 * math.fsum(terms), len(terms)
