from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcpde.errors import NonSquare
from lcpde.exact import (
    MPoly, RatFunc, frac_rank, is_identically_zero, mat_det, parse_poly, poly_diff,
    random_rational_point, rat, sample_points, solve_q, sz_point_count,
)

p1, p2, p3 = MPoly.gens()


def test_power_rule():
    assert poly_diff(p1 ** 2 * p2, "p1") == 2 * p1 * p2
    assert poly_diff(MPoly.const(5), "p3").is_zero()
    assert poly_diff(p1 * p2 * p3, "p1") == p2 * p3


def test_quotient_rule():
    r = RatFunc(p2, p1)
    assert r.diff("p1") == RatFunc(-p2, p1 ** 2)
    assert r.diff("p2") == RatFunc(MPoly.const(1), p1)
    assert r.diff("p3").is_zero()


def test_parse_round_trip():
    f = parse_poly("3/2 p1^2 p2 - (p3 + 1)^2 + 2 p1 p3")
    assert parse_poly(str(f)) == f
    assert f.eval({"p1": 1, "p2": 2, "p3": 0}) == 2


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == Fraction(1, 2)


def test_determinants():
    assert mat_det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == MPoly.const(1)
    assert mat_det([[p1, p2], [p2, p1]]) == p1 ** 2 - p2 ** 2
    with pytest.raises(NonSquare):
        mat_det([[p1, p2]])


def test_tetrahedral_monge_determinant():
    # zero diagonal, off-diagonal (b2-b1) p3, (b1-b3) p2, (b3-b2) p1
    b1, b2, b3 = 1, 2, 5
    M = [[0, (b2 - b1) * p3, (b1 - b3) * p2],
         [(b2 - b1) * p3, 0, (b3 - b2) * p1],
         [(b1 - b3) * p2, (b3 - b2) * p1, 0]]
    assert mat_det(M) == 2 * (b3 - b2) * (b1 - b3) * (b2 - b1) * p1 * p2 * p3


def test_ranks():
    assert frac_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert frac_rank([[p1, p2], [p1 * p3, p2 * p3]]) == 1
    assert frac_rank([[p1, p2], [p2, p1]]) == 2


def test_random_points_deterministic():
    a = random_rational_point(1, 3, 100)
    assert a == random_rational_point(1, 3, 100)
    assert a != random_rational_point(2, 3, 100)
    assert MPoly.const(0).eval(dict(zip(("p1", "p2", "p3"), a))) == 0


def test_sample_points_avoid_locus():
    pts = sample_points(("p1", "p2", "p3"), 7, 20, bound=3, avoid=p1 - p2)
    assert len(pts) == 20
    assert all(pt["p1"] != pt["p2"] for pt in pts)


def test_schwartz_zippel_count():
    # (4 / 10^4)^k <= 1e-9 needs k = 3
    assert sz_point_count(4, 10 ** 4) == 3
    assert sz_point_count(400, 10 ** 4) == 7
    assert is_identically_zero((p1 + p2) ** 2 - p1 ** 2 - 2 * p1 * p2 - p2 ** 2)
    assert not is_identically_zero(p1 * p2 - p2 * p1 + p3)


def test_solve_q():
    assert solve_q([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_q([[1, 1], [2, 2]], [1, 3]) is None


small = st.integers(-4, 4)
monomial = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(monomial, small, max_size=5).map(lambda t: MPoly(t))


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.sampled_from(("p1", "p2", "p3")))
def test_leibniz(f, g, v):
    assert poly_diff(f * g, v) == poly_diff(f, v) * g + f * poly_diff(g, v)


@settings(max_examples=30, deadline=None)
@given(st.lists(polys, min_size=3, max_size=3), st.lists(polys, min_size=3, max_size=3))
def test_det_equal_rows_vanishes(r1, r2):
    assert mat_det([r1, r2, r1]).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(polys, min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_matches_random_evaluation(M):
    pt = {"p1": Fraction(17, 3), "p2": Fraction(-29, 7), "p3": Fraction(41, 11)}
    from lcpde.exact import rank_q
    assert rank_q([[f.eval(pt) for f in row] for row in M]) <= frac_rank(M)
    # generic point: both ranks coincide unless a minor vanishes there
    pt2 = {"p1": Fraction(1013, 7), "p2": Fraction(-2029, 13), "p3": Fraction(3041, 17)}
    assert rank_q([[f.eval(pt2) for f in row] for row in M]) == frac_rank(M)


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_rational_addition_exact(a, b, c, d):
    s = (Fraction(a, b) + Fraction(c, d)) * b * d
    assert s == a * d + c * b
