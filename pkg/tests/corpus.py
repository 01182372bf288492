"""Seeded random polygons for property tests; TC_SEED overrides the seed."""

import os
import random

from tropical_caustics.domain import convex_hull, from_vertices


def seed():
    return int(os.environ.get("TC_SEED", "20240611"))


def random_lattice_polygon(rng, lo=-20, hi=20, npts=None):
    while True:
        k = npts or rng.randint(3, 9)
        pts = [(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(k)]
        hull = convex_hull(pts)
        if len(hull) >= 3:
            return from_vertices(hull)


def lattice_corpus(n, offset=0, **kw):
    rng = random.Random(seed() + offset)
    return [random_lattice_polygon(rng, **kw) for _ in range(n)]


def rational_corpus(n, offset=0, den=6):
    from fractions import Fraction

    rng = random.Random(seed() + 1000 + offset)
    out = []
    while len(out) < n:
        pts = [(Fraction(rng.randint(-40, 40), rng.randint(1, den)),
                Fraction(rng.randint(-40, 40), rng.randint(1, den))) for _ in range(rng.randint(3, 7))]
        hull = convex_hull(pts)
        if len(hull) >= 3:
            out.append(from_vertices(hull))
    return out
