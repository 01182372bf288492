import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import lattice_corpus, random_lattice_polygon, rational_corpus, seed
from oracles import hull_of_sums, in_front, lp_final_time
from tropical_caustics.domain import (
    Monomial, distance_series_eval, final_time, from_vertices, lattice_perimeter, minkowski_sum,
    monomial_set, propagate, state_vertices,
)

SQUARE = from_vertices([(0, 0), (2, 0), (2, 2), (0, 2)])
TRIANGLE = from_vertices([(0, 0), (3, 0), (0, 2)])


def test_from_vertices():
    assert len(SQUARE) == 4 and len(TRIANGLE) == 3
    # clockwise input is reoriented
    cw = from_vertices([(0, 0), (0, 2), (3, 0)])
    assert set(cw.vertices) == set(TRIANGLE.vertices) and cw.area2() > 0
    for bad in ([(0, 0), (1, 0), (2, 0), (0, 2)], [(0, 0), (4, 0), (1, 1), (0, 4)],
                [(0, 0), (1, 0)], [(0, 0), (2, 2), (2, 0), (0, 2)]):
        with pytest.raises(ValueError):
            from_vertices(bad)


def test_monomial_sets():
    assert set(monomial_set(SQUARE)) == {Monomial((1, 0), 0), Monomial((-1, 0), 2),
                                         Monomial((0, 1), 0), Monomial((0, -1), 2)}
    assert set(monomial_set(TRIANGLE)) == {Monomial((1, 0), 0), Monomial((0, 1), 0),
                                           Monomial((-2, -3), 6)}
    # corner with dual cone (0,1), (5,2) up to lattice map gets an extra monomial
    P = from_vertices([(0, 0), (1, 0), (0, 5)])
    assert len(monomial_set(P)) > 3


def test_propagate_examples():
    st1 = propagate(SQUARE, F(1, 2))
    assert st1.kind == "polygon"
    assert set(state_vertices(st1)) == {(F(1, 2), F(1, 2)), (F(3, 2), F(1, 2)),
                                        (F(3, 2), F(3, 2)), (F(1, 2), F(3, 2))}
    assert set(state_vertices(propagate(TRIANGLE, F(1, 2)))) == {
        (F(1, 2), F(1, 2)), (F(2), F(1, 2)), (F(1, 2), F(3, 2))}
    pt = propagate(TRIANGLE, 1)
    assert pt.kind == "point" and state_vertices(pt) == [(1, 1)]
    assert propagate(TRIANGLE, 2).kind == "empty"
    seg = propagate(from_vertices([(0, 0), (4, 0), (4, 2), (0, 2)]), 1)
    assert seg.kind == "segment" and set(state_vertices(seg)) == {(1, 1), (3, 1)}


def test_distance_series():
    assert distance_series_eval(SQUARE, (1, 1)) == 1
    assert distance_series_eval(TRIANGLE, (1, 1)) == 1
    for v in TRIANGLE.vertices:
        assert distance_series_eval(TRIANGLE, v) == 0


def test_perimeter():
    assert lattice_perimeter(SQUARE) == 8
    assert lattice_perimeter(TRIANGLE) == 6


def test_minkowski_examples():
    unit = from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert set(minkowski_sum(unit, unit).vertices) == set(SQUARE.vertices)
    assert minkowski_sum(SQUARE, (F(1), F(2))).vertices == SQUARE.translate((1, 2)).vertices
    tri = from_vertices([(0, 0), (1, 0), (0, 1)])
    S = minkowski_sum(SQUARE, tri)
    assert len(S) == 5
    for lam in [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1)]:
        assert S.support(lam) == SQUARE.support(lam) + tri.support(lam)


def test_minkowski_matches_vertex_sums():
    polys = lattice_corpus(30, offset=7, lo=-6, hi=6) + rational_corpus(10, offset=7)
    for P, Q in zip(polys, polys[1:]):
        got = {(round(float(x), 9), round(float(y), 9)) for x, y in minkowski_sum(P, Q).vertices}
        assert got == hull_of_sums(P, Q)


def test_final_time_matches_lp():
    for P in lattice_corpus(40, offset=3) + rational_corpus(20, offset=3):
        t = final_time(P)
        assert abs(float(t) - lp_final_time(monomial_set(P))) < 1e-9
        assert propagate(P, t).kind in ("point", "segment")
        assert propagate(P, t + F(1, 10 ** 6)).kind == "empty"


rng_polys = lattice_corpus(40, offset=11) + rational_corpus(20, offset=11)
poly = st.sampled_from(rng_polys)
frac = st.fractions(min_value=0, max_value=12, max_denominator=7)


@settings(max_examples=100, deadline=None)
@given(poly, frac, frac)
def test_huygens(P, t, s):
    a = propagate(P, t)
    if a.kind != "polygon":
        assert propagate(P, t + s).kind in ("empty", a.kind) or s == 0
        return
    assert propagate(a.polygon, s) == propagate(P, t + s)


@settings(max_examples=100, deadline=None)
@given(poly, frac, frac)
def test_monotone_and_level_set(P, t, s):
    mons = monomial_set(P)
    small = propagate(P, t + s)
    for v in state_vertices(small):
        # a later front lies inside every earlier one
        assert in_front(mons, v, t)
        # vertices of a front sit on the level set of the distance series
        assert distance_series_eval(P, v, mons) == t + s


def test_corpus_is_seeded():
    a = random_lattice_polygon(random.Random(seed()))
    b = random_lattice_polygon(random.Random(seed()))
    assert a == b
