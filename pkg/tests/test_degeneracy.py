import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcpde.catalog import catalog_complex, complex_from_text
from lcpde.complexcore import ConformalStructure, QuadraticComplex, monge_form
from lcpde.degeneracy import (
    check_ld_2d, check_ld_3d, check_ld_first_order, reconstruct_complex, travelling_wave_reduce,
    verify_phi,
)
from lcpde.errors import DegenerateStructure, NoSolution
from lcpde.exact import MPoly
from lcpde.plucker import omega_matrix
from lcpde.segre import trace_normalize

V = ("v1", "v2")
v1, v2 = MPoly.gens(V)
Q2 = ("p1", "p2")
a, b = MPoly.gens(Q2)
p1, p2, p3 = MPoly.gens()
I3 = ConformalStructure([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_first_order_constant_eigenvalues():
    assert check_ld_first_order([[MPoly.const(2, V), 0], [0, MPoly.const(3, V)]], V)


def test_first_order_diagonal_fails():
    assert not check_ld_first_order([[v1, 0], [0, v2]], V)


def test_first_order_companion_matrix():
    # grad(tr A) A = (-v1 v2, 1 + v1 + v2) differs from grad(det A) = (v2, v1)
    A = [[MPoly.const(0, V), MPoly.const(1, V)], [-v1 * v2, v1 + v2]]
    assert not check_ld_first_order(A, V)


def test_born_infeld():
    assert check_ld_2d(1 + b * b, -a * b, a * a - 1, Q2)


def test_constant_2d():
    assert check_ld_2d(MPoly.const(1, Q2), MPoly.const(0, Q2), MPoly.const(1, Q2), Q2)


def test_2d_counterexample():
    assert not check_ld_2d(MPoly.const(1, Q2), MPoly.const(0, Q2), 1 + a, Q2)


def test_3d_counterexample():
    ok, phi = check_ld_3d(ConformalStructure([[1 + p1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert not ok and phi is None


def test_identity_phi_zero():
    ok, phi = check_ld_3d(I3)
    assert ok and all(x.is_zero() for x in phi.phi)


def test_tetrahedral_reductions():
    S = monge_form(complex_from_text("1 p41 p23 + 2 p42 p31 + 5 p43 p12"))
    rng = random.Random(5)
    for _ in range(10):
        args = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5)]
        assert travelling_wave_reduce(S, *args).is_linearly_degenerate()


def test_reduce_trivial_parameters():
    S = monge_form(complex_from_text("p12^2 + p13^2 + p23^2 - p14^2 - p24^2 - p34^2"))
    R = travelling_wave_reduce(S, 0, 0, 0, 0, 0)
    sub = {"p1": MPoly.var("q1", ("q1", "q2")), "p2": MPoly.var("q2", ("q1", "q2")), "p3": 0}
    assert R.a == S.F[0][0].subs(sub, ("q1", "q2"))
    assert R.b == S.F[0][1].subs(sub, ("q1", "q2"))
    assert R.c == S.F[1][1].subs(sub, ("q1", "q2"))


def test_reduce_identity():
    lam, mu = Fraction(2, 3), Fraction(-5)
    R = travelling_wave_reduce(I3, lam, mu, 1, 2, 3)
    assert (R.a.constant_value(), R.b.constant_value(), R.c.constant_value()) == (
        1 + lam ** 2, lam * mu, 1 + mu ** 2)


def test_reconstruct_identity_is_case7():
    # Case 7 is written in the chart P^1 = 1
    Q = reconstruct_complex(ConformalStructure(I3.F, chart=1))
    e = catalog_complex(7, {"l1": 1, "l2": 1, "l3": 1}, subcase=1)
    # equal up to a nonzero multiple, modulo the Pluecker quadric
    T = trace_normalize(e.Q)
    c = next(Fraction(Q.Q[i][j]) / T.Q[i][j] for i in range(6) for j in range(6) if T.Q[i][j])
    assert Q == T.scale(c)


def test_reconstruct_counterexample():
    with pytest.raises(NoSolution):
        reconstruct_complex(ConformalStructure([[1 + p1, 0, 0], [0, 1, 0], [0, 0, 1]]))


def random_complex(rng, bound):
    M = [[0] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i, 6):
            M[i][j] = M[j][i] = rng.randint(-bound, bound)
    return QuadraticComplex(M)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 9), st.sampled_from((1, 2, 3, 4)))
def test_random_complexes_degenerate_and_round_trip(s, chart):
    rng = random.Random(s)
    Q = random_complex(rng, 20)
    try:
        S = monge_form(Q, chart)
    except DegenerateStructure:
        return
    ok, phi = check_ld_3d(S)
    assert ok and verify_phi(S, phi.phi)
    R = reconstruct_complex(S)
    assert R == trace_normalize(Q)
    for _ in range(3):
        args = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(5)]
        assert travelling_wave_reduce(S, *args).is_linearly_degenerate()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 9), st.permutations(range(3)))
def test_relabelling_invariance(s, perm):
    rng = random.Random(s)
    Q = random_complex(rng, 9)
    try:
        S = monge_form(Q)
    except DegenerateStructure:
        return
    rename = {f"p{k + 1}": MPoly.var(f"p{perm[k] + 1}") for k in range(3)}
    inv = [perm.index(i) for i in range(3)]
    F = [[S.F[inv[i]][inv[j]].subs(rename) for j in range(3)] for i in range(3)]
    assert check_ld_3d(ConformalStructure(F))[0]
    bad = ConformalStructure([[1 + p1, 0, 0], [0, 1, 0], [0, 0, 1]])
    Fb = [[bad.F[inv[i]][inv[j]].subs(rename) for j in range(3)] for i in range(3)]
    assert not check_ld_3d(ConformalStructure(Fb))[0]
