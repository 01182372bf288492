"""Rational polygons, their support monomials and tropical wave-front propagation."""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from .lattice import Covector, LatticeVector, det2, hull_boundary_in_cone, primitive


class RationalPoint(NamedTuple):
    x: Fraction
    y: Fraction


class Monomial(NamedTuple):
    normal: Covector
    c: Fraction

    def value(self, p):
        return self.normal[0] * p[0] + self.normal[1] * p[1] + self.c


def to_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def point(x, y=None):
    if y is None:
        x, y = x
    return RationalPoint(to_fraction(x), to_fraction(y))


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def rational_direction(d):
    """Primitive lattice direction and lattice length of a rational vector."""
    dx, dy = to_fraction(d[0]), to_fraction(d[1])
    m = lcm(dx.denominator, dy.denominator)
    prim, mult = primitive((int(dx * m), int(dy * m)))
    return prim, Fraction(mult, m)


def lattice_length(p, q):
    return rational_direction(sub(q, p))[1]


def inward_normal(p, q):
    """Inward primitive normal of the edge p->q of a CCW polygon."""
    d, _ = rational_direction(sub(q, p))
    return Covector(-d.y, d.x)


@dataclass(frozen=True)
class RationalPolygon:
    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def edge_normals(self):
        return [inward_normal(p, q) for p, q in self.edges()]

    def support(self, lam):
        """Support constant c(lam) = -min over the polygon of lam."""
        return -min(lam[0] * v[0] + lam[1] * v[1] for v in self.vertices)

    def contains(self, p, strict=False):
        for a, b in self.edges():
            s = cross(a, b, p)
            if s < 0 or (strict and s == 0):
                return False
        return True

    def area2(self):
        vs = self.vertices
        return sum(det2(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def translate(self, v):
        return RationalPolygon(tuple(RationalPoint(p[0] + v[0], p[1] + v[1]) for p in self.vertices))

    def is_lattice(self):
        return all(c.denominator == 1 for p in self.vertices for c in p)


def from_vertices(pts):
    """Validate a cyclic vertex list as a strictly convex polygon, made CCW."""
    vs = [point(p) for p in pts]
    if len(vs) < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertices")
    n = len(vs)
    turns = [cross(vs[i - 1], vs[i], vs[(i + 1) % n]) for i in range(n)]
    if any(s == 0 for s in turns):
        raise ValueError("collinear vertices")
    if all(s < 0 for s in turns):
        vs.reverse()
    elif not all(s > 0 for s in turns):
        raise ValueError("polygon is not convex")
    # a self-overlapping cycle also turns one way; compare with the hull
    hull = convex_hull(vs)
    k = hull.index(vs[0]) if vs[0] in hull else -1
    if len(hull) != n or k < 0 or hull[k:] + hull[:k] != vs:
        raise ValueError("polygon is not convex")
    return RationalPolygon(tuple(vs))


def monomial_set(P):
    """Active monomials of P just after time 0, in cyclic (CCW) order.

    These are the edge normals plus the interior sail vertices of every
    corner's dual cone.
    """
    vs = P.vertices
    normals = P.edge_normals()
    n = len(vs)
    out = []
    for i in range(n):
        lam_in, lam_out = normals[i - 1], normals[i]
        v = vs[i]
        for lam in hull_boundary_in_cone((lam_in, lam_out))[1:-1]:
            out.append(Monomial(lam, -(lam[0] * v[0] + lam[1] * v[1])))
        out.append(Monomial(lam_out, -(lam_out[0] * v[0] + lam_out[1] * v[1])))
    return out


def distance_series_eval(P, p, monomials=None):
    mons = monomials if monomials is not None else monomial_set(P)
    p = point(p)
    return min(m.value(p) for m in mons)


# wave-front states

@dataclass(frozen=True)
class Polygon:
    polygon: RationalPolygon
    kind = "polygon"


@dataclass(frozen=True)
class Segment:
    a: RationalPoint
    b: RationalPoint
    kind = "segment"


@dataclass(frozen=True)
class Point:
    p: RationalPoint
    kind = "point"


@dataclass(frozen=True)
class Empty:
    kind = "empty"


def _clip(vs, lam, c):
    # keep the part with lam(p) + c >= 0
    out = []
    n = len(vs)
    for i in range(n):
        p, q = vs[i], vs[(i + 1) % n]
        fp = lam[0] * p[0] + lam[1] * p[1] + c
        fq = lam[0] * q[0] + lam[1] * q[1] + c
        if fp >= 0:
            out.append(p)
        if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
            s = fp / (fp - fq)
            out.append(RationalPoint(p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def classify(pts):
    """Turn a convex cyclic point list into a wave-front state."""
    vs = []
    for p in pts:
        if not vs or vs[-1] != p:
            vs.append(p)
    while len(vs) > 1 and vs[0] == vs[-1]:
        vs.pop()
    if not vs:
        return Empty()
    if len(vs) == 1:
        return Point(vs[0])
    # drop collinear vertices
    changed = True
    while changed and len(vs) > 2:
        changed = False
        for i in range(len(vs)):
            if cross(vs[i - 1], vs[i], vs[(i + 1) % len(vs)]) == 0:
                del vs[i]
                changed = True
                break
    if len(vs) == 2 or all(cross(vs[0], vs[1], v) == 0 for v in vs):
        lo, hi = min(vs), max(vs)
        return Segment(lo, hi) if lo != hi else Point(lo)
    k = vs.index(min(vs))
    return Polygon(RationalPolygon(tuple(vs[k:] + vs[:k])))


def propagate(P, t, monomials=None):
    """Wave front Phi(t): every monomial half-plane shifted inward by t."""
    t = to_fraction(t)
    if t <= 0:
        return Polygon(P)
    mons = monomials if monomials is not None else monomial_set(P)
    vs = list(P.vertices)
    for m in mons:
        vs = _clip(vs, m.normal, m.c - t)
        if not vs:
            return Empty()
    return classify(vs)


def state_vertices(state):
    if state.kind == "polygon":
        return list(state.polygon.vertices)
    if state.kind == "segment":
        return [state.a, state.b]
    if state.kind == "point":
        return [state.p]
    return []


def lattice_perimeter(P):
    return sum(lattice_length(p, q) for p, q in P.edges())


def final_time(P, monomials=None):
    """Largest t with Phi(t) nonempty, by exact vertex enumeration of the LP
    max t subject to lam(p) + c >= t for every monomial."""
    mons = monomials if monomials is not None else monomial_set(P)
    best = None
    k = len(mons)
    for i in range(k):
        for j in range(i + 1, k):
            for l in range(j + 1, k):
                sol = _solve3([mons[i], mons[j], mons[l]])
                if sol is None:
                    continue
                x, y, t = sol
                if best is not None and t <= best:
                    continue
                if all(m.normal[0] * x + m.normal[1] * y + m.c >= t for m in mons):
                    best = t
    return best


def _solve3(ms):
    # lam(p) + c = t  ->  a x + b y - t = -c
    rows = [(Fraction(m.normal[0]), Fraction(m.normal[1]), Fraction(-1), -m.c) for m in ms]
    (a1, b1, c1, d1), (a2, b2, c2, d2), (a3, b3, c3, d3) = rows
    det = a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2)
    if det == 0:
        return None
    dx = d1 * (b2 * c3 - b3 * c2) - b1 * (d2 * c3 - d3 * c2) + c1 * (d2 * b3 - d3 * b2)
    dy = a1 * (d2 * c3 - d3 * c2) - d1 * (a2 * c3 - a3 * c2) + c1 * (a2 * d3 - a3 * d2)
    dt = a1 * (b2 * d3 - b3 * d2) - b1 * (a2 * d3 - a3 * d2) + d1 * (a2 * b3 - a3 * b2)
    return dx / det, dy / det, dt / det


def _angle_key(v):
    # half-plane index then cross-product order, exact
    upper = v[1] > 0 or (v[1] == 0 and v[0] > 0)
    return 0 if upper else 1


def minkowski_sum(P, Q):
    """Minkowski sum of two polygons (or a polygon and a single point)."""
    if not isinstance(Q, RationalPolygon):
        return P.translate(point(Q))
    if not isinstance(P, RationalPolygon):
        return Q.translate(point(P))

    def start(R):
        # lowest, then leftmost vertex; edges from there go counterclockwise
        i = min(range(len(R.vertices)), key=lambda k: (R.vertices[k][1], R.vertices[k][0]))
        vs = R.vertices[i:] + R.vertices[:i]
        return vs, [sub(vs[(k + 1) % len(vs)], vs[k]) for k in range(len(vs))]

    pv, pe = start(P)
    qv, qe = start(Q)
    cur = RationalPoint(pv[0][0] + qv[0][0], pv[0][1] + qv[0][1])
    out = [cur]
    i = j = 0
    while i < len(pe) or j < len(qe):
        if j >= len(qe):
            e = pe[i]
            i += 1
        elif i >= len(pe):
            e = qe[j]
            j += 1
        else:
            a, b = pe[i], qe[j]
            ka, kb = _angle_key(a), _angle_key(b)
            if ka != kb:
                take_a = ka < kb
            else:
                s = det2(a, b)
                take_a = s >= 0
            if ka == kb and det2(a, b) == 0:
                e = (a[0] + b[0], a[1] + b[1])
                i += 1
                j += 1
            elif take_a:
                e = a
                i += 1
            else:
                e = b
                j += 1
        cur = RationalPoint(cur[0] + e[0], cur[1] + e[1])
        out.append(cur)
    assert out[-1] == out[0]
    return from_vertices(_drop_collinear(out[:-1]))


def _drop_collinear(vs):
    vs = list(vs)
    i = 0
    while i < len(vs) and len(vs) > 3:
        if cross(vs[i - 1], vs[i], vs[(i + 1) % len(vs)]) == 0:
            del vs[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return vs


def convex_hull(points):
    """Andrew's monotone chain; strict vertices, CCW."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        h = []
        for p in seq:
            while len(h) >= 2 and cross(h[-2], h[-1], p) <= 0:
                h.pop()
            h.append(p)
        return h

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]
