import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_disc_series, lp_final_time
from tropical_caustics import smooth
from tropical_caustics.domain import Monomial
from tropical_caustics.lattice import Covector
from tropical_caustics.verify import check_balancing, check_local_models

GOLDEN = (1 + math.sqrt(5)) / 2
S3 = 2 / (3 * math.sqrt(3))  # tangency abscissa scale of the cubic loop


def farey_normals(n):
    return [(a, b) for a in range(-n, n + 1) for b in range(-n, n + 1)
            if (a, b) != (0, 0) and math.gcd(a, b) == 1]


def test_disc_series_matches_brute_force():
    for n in (1, 2, 3, 5, 8, 13):
        total, _ = smooth.disc_area_series(n)
        assert total == pytest.approx(brute_disc_series(n), abs=1e-13)


def test_disc_series_monotone_below_limit():
    prev = -1
    for n in (1, 2, 4, 8, 16, 32, 64, 128):
        total, _ = smooth.disc_area_series(n)
        assert prev < total < 4 - math.pi
        prev = total


def test_critical_times():
    d = smooth.disc()
    assert smooth.critical_time(d, (1, 0), (0, 1)) == pytest.approx(2 - math.sqrt(2), abs=1e-15)
    assert smooth.branch_vertex(d, (1, 0), (0, 1)) == pytest.approx((1 - math.sqrt(2),) * 2, abs=1e-15)
    e = smooth.ellipse(GOLDEN)
    assert smooth.critical_time(e, (1, 0), (0, 1)) == pytest.approx(
        1 + GOLDEN - math.sqrt(1 + GOLDEN ** 2), abs=1e-12)
    with pytest.raises(ValueError):
        smooth.critical_time(d, (1, 0), (1, 2))


def test_amoeba_values():
    a = smooth.amoeba_line()
    assert smooth.critical_time(a, (-1, 0), (0, -1)) == pytest.approx(2 * math.log(2), abs=1e-12)
    assert smooth.branch_vertex(a, (-1, 0), (0, -1)) == pytest.approx((-2 * math.log(2),) * 2, abs=1e-12)
    assert smooth.amoeba_tangency((-1, -1)) == pytest.approx(-math.log(2), abs=1e-12)
    with pytest.raises(ValueError):
        smooth.amoeba_c((1, 0))


def test_cubic_support():
    # the loop reaches x = -1 at slope 0 and has a corner at the origin
    assert smooth.cubic_c((1, 0)) == 1.0
    assert smooth.cubic_c((-1, 0)) == 0.0
    assert smooth.cubic_c((-1, 1)) == 0.0 and smooth.cubic_c((-1, -1)) == 0.0
    # y extreme of the loop: m = 1/sqrt(3) gives |y| = S3
    assert smooth.cubic_c((0, 1)) == pytest.approx(S3, abs=1e-15)


@pytest.mark.parametrize("name", ["disc", "ellipse", "cubic"])
def test_final_time_matches_lp(name):
    o = {"disc": smooth.disc(), "ellipse": smooth.ellipse(GOLDEN), "cubic": smooth.nodal_cubic()}[name]
    g = smooth.build_caustic(o)
    lp = lp_final_time([Monomial(l, o.c(l)) for l in farey_normals(25)])
    assert g.t_final == pytest.approx(lp, abs=1e-9)


@pytest.mark.parametrize("factory", [smooth.disc, lambda: smooth.ellipse(GOLDEN), smooth.amoeba_line,
                                     smooth.nodal_cubic])
def test_builtin_caustics_are_balanced(factory):
    g = smooth.build_caustic(factory())
    assert check_balancing(g).passed
    assert check_local_models(g).passed


def test_ellipse_final_segment():
    g = smooth.build_caustic(smooth.ellipse(GOLDEN))
    fe = g.final_edge()
    assert g.t_final == pytest.approx(1, abs=1e-9)
    assert tuple(fe.direction) in ((0, 1), (0, -1)) and fe.weight == 2
    assert fe.length == pytest.approx(2 * (GOLDEN - 1), abs=1e-9)


def test_cubic_heavy_edge():
    g = smooth.build_caustic(smooth.nodal_cubic())
    heavy = [e for e in g.edges if e.weight == 2 and not e.final]
    assert len(heavy) == 1
    e = heavy[0]
    assert tuple(e.direction) == (-1, 0) and g.vertices[e.source].pos == (0.0, 0.0)
    assert e.length == pytest.approx(S3, abs=1e-9)
    fe = g.final_edge()
    assert fe.weight == 2 and tuple(abs(c) for c in fe.direction) == (1, 0)


def test_refinement_controls():
    shallow = smooth.build_caustic(smooth.disc(), eps=1e-3, max_depth=2)
    deep = smooth.build_caustic(smooth.disc(), eps=1e-3, max_depth=6)
    assert len(shallow.edges) < len(deep.edges)
    assert any(v.stub for v in shallow.vertices)
    # with eps above every critical time only the spine of the square is left
    coarse = smooth.build_caustic(smooth.disc(), eps=0.6)
    assert len(coarse.edges) == 4 and all(v.stub for v in coarse.leaves())


def test_bad_seed_fans():
    o = smooth.SupportOracle(lambda l: 1.0, [Covector(1, 0), Covector(1, 2), Covector(-1, 0), Covector(0, -1)])
    with pytest.raises(ValueError):
        smooth.build_caustic(o)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.5, 2.0))
def test_disc_scaling(r):
    # a dilated disc has the dilated caustic
    a = smooth.build_caustic(smooth.disc(1.0), eps=1e-9, max_depth=3)
    b = smooth.build_caustic(smooth.disc(r), eps=1e-9, max_depth=3)
    assert b.t_final == pytest.approx(r * a.t_final, rel=1e-9)
    assert len(a.vertices) == len(b.vertices)
    for u, v in zip(a.vertices, b.vertices):
        assert v.pos == pytest.approx((r * u.pos[0], r * u.pos[1]), abs=1e-9)
