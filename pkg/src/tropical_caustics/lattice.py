"""Planar lattice algebra: primitive vectors, determinants and the cone rule."""

from math import gcd
from typing import NamedTuple


class LatticeVector(NamedTuple):
    x: int
    y: int


class Covector(NamedTuple):
    a: int
    b: int


class CausticRay(NamedTuple):
    direction: LatticeVector
    weight: int


def primitive(v):
    """Split an integer vector into (primitive vector, multiplicity)."""
    x, y = int(v[0]), int(v[1])
    if x == 0 and y == 0:
        raise ValueError("zero vector has no primitive direction")
    g = gcd(x, y)
    return LatticeVector(x // g, y // g), g


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def pair(lam, v):
    """Pairing of a covector with a vector."""
    return lam[0] * v[0] + lam[1] * v[1]


def ext_gcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class DualCone(NamedTuple):
    start: Covector
    end: Covector

    @classmethod
    def of(cls, u, w):
        """Cone spanned by two covectors, normalized to positive orientation.

        The generators are made primitive.  A negatively oriented pair is
        read as the salient cone between the same two rays; the flag tells
        callers whether the order was swapped.
        """
        u, _ = primitive(u)
        w, _ = primitive(w)
        d = det2(u, w)
        if d == 0:
            raise ValueError(f"degenerate cone: {tuple(u)}, {tuple(w)}")
        if d < 0:
            return cls(Covector(*w), Covector(*u)), True
        return cls(Covector(*u), Covector(*w)), False


def _sail(u, w):
    # u, w primitive with det(u, w) > 0.  Walk the boundary of the hull of
    # nonzero lattice points of the cone from u to w, one edge at a time.
    # D(v) = det(v, w) measures how far v is from the ray through w.
    def D(v):
        return det2(v, w)

    verts = [u]
    p = u
    while p != w:
        # q with det(p, q) = 1 and 0 <= D(q) < D(p): next point of the
        # unimodular basis turning towards w.
        g, s, t = ext_gcd(p[0], p[1])
        assert g == 1
        q0 = (-t, s)
        dp = D(p)
        k = -(D(q0) // dp)
        q = (q0[0] + k * p[0], q0[1] + k * p[1])
        step = (q[0] - p[0], q[1] - p[1])
        # the edge continues along step as long as we stay inside the cone
        delta = det2(w, step)
        j = dp // delta
        p = (p[0] + j * step[0], p[1] + j * step[1])
        verts.append(p)
    return [Covector(*v) for v in verts]


def hull_boundary_in_cone(cone):
    """Vertices of the boundary of conv((cone ∩ M) minus 0), start to end.

    Accepts a DualCone or a pair of covectors.  Negatively oriented pairs are
    handled as the salient cone between them and the list still runs from
    the first given generator to the second.
    """
    norm, swapped = DualCone.of(cone[0], cone[1])
    verts = _sail(tuple(norm.start), tuple(norm.end))
    if swapped:
        verts.reverse()
    return verts


def edge_ray(u, w):
    """Caustic ray dual to a hull edge [u, w] of a cone's sail."""
    step, weight = primitive((w[0] - u[0], w[1] - u[1]))
    d = det2(u, w)
    # v solves <u,v> = <w,v> = 1; for a sail edge it is the rotated step
    v = (w[1] - u[1], u[0] - w[0])
    if d < 0:
        v = (-v[0], -v[1])
    v = LatticeVector(v[0] // weight, v[1] // weight)
    assert pair(u, v) == 1 and pair(w, v) == 1, (u, w, v)
    return CausticRay(v, weight)


def cone_rule(cone):
    """Caustic rays of a corner with the given dual cone, in sail order."""
    verts = hull_boundary_in_cone(cone)
    return [edge_ray(a, b) for a, b in zip(verts, verts[1:])]


def an_index(lam, mu):
    """Return n+1 if the cone (lam, mu) is of type A_n, else None."""
    d = det2(lam, mu)
    if d <= 0:
        return None
    vx, vy = mu[1] - lam[1], lam[0] - mu[0]
    if vx % d or vy % d:
        return None
    return d


def apply(g, v):
    """Apply a 2x2 integer matrix (rows) to a vector."""
    return (g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1])


def inverse_transpose(g):
    (a, b), (c, d) = g
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("not a lattice automorphism")
    return ((d * det, -c * det), (-b * det, a * det))
