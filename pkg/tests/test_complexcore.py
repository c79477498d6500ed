import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcpde.catalog import catalog_complex, complex_from_text
from lcpde.complexcore import (
    ConformalStructure, QuadraticComplex, kummer_quartic, monge_form, pde_render,
)
from lcpde.errors import DegenerateStructure
from lcpde.exact import MPoly, parse_poly
from lcpde.plucker import omega_matrix

p1, p2, p3 = MPoly.gens()
SPECIAL = "p12^2 + p13^2 + p23^2 - p14^2 - p24^2 - p34^2"


def tetrahedral(b1, b2, b3):
    return complex_from_text(f"{b1} p41 p23 + {b2} p42 p31 + {b3} p43 p12")


def test_tetrahedral_structure():
    b1, b2, b3 = 1, 2, 5
    F = monge_form(tetrahedral(b1, b2, b3)).F
    assert all(F[i][i].is_zero() for i in range(3))
    # off-diagonal entries are half the coefficients of the mixed derivatives
    assert F[0][1] == p3 * Fraction(b2 - b1, 2)
    assert F[0][2] == p2 * Fraction(b1 - b3, 2)
    assert F[1][2] == p1 * Fraction(b3 - b2, 2)


def test_tetrahedral_equation_text():
    S = monge_form(tetrahedral(1, 2, 5))
    assert pde_render(S) == "u_3 u_12 - 4 u_2 u_13 + 3 u_1 u_23 = 0"


def test_special_complex_structure():
    F = monge_form(complex_from_text(SPECIAL)).F
    assert F[0][0] == p2 ** 2 + p3 ** 2 - 1
    assert F[0][1] == -p1 * p2
    assert F[1][2] == -p2 * p3


def test_omega_is_degenerate():
    with pytest.raises(DegenerateStructure):
        monge_form(QuadraticComplex(omega_matrix()))


def test_kummer_tetrahedral_four_planes():
    b1, b2, b3 = 1, 2, 5
    K = kummer_quartic(monge_form(tetrahedral(b1, b2, b3)))
    # the entries carry factors 1/2, hence the 2 * (1/2)^3 = 1/4
    assert K == p1 * p2 * p3 * Fraction((b3 - b2) * (b1 - b3) * (b2 - b1), 4)


def test_kummer_double_sphere():
    K = kummer_quartic(monge_form(complex_from_text(SPECIAL)))
    assert K == -(p1 ** 2 + p2 ** 2 + p3 ** 2 - 1) ** 2


def test_identity_structure():
    I = ConformalStructure([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert kummer_quartic(I) == MPoly.const(1)
    assert pde_render(I) == "u_11 + u_22 + u_33 = 0"


def test_case7_rendering():
    e = catalog_complex(7, {"l1": 1, "l2": 2, "l3": 4}, subcase=1)
    alpha, beta, gamma = 2 - 1, 1 - 4, 4 - 2
    assert pde_render(e.F) == (f"u_11 + u_22 + u_33 + {2 * alpha} u_3 u_12 - {-2 * beta} u_2 u_13"
                               f" + {2 * gamma} u_1 u_23 = 0")


def test_from_pde_halves_mixed_terms():
    S = ConformalStructure.from_pde("u11 + 2*u1*u23 - u33 + u22")
    assert S.F[1][2] == p1 and S.F[2][2] == MPoly.const(-1)


def test_json_round_trips():
    Q = tetrahedral(1, 2, 5)
    assert QuadraticComplex.from_json(Q.to_json()) == Q
    S = monge_form(Q, chart=3)
    assert ConformalStructure.from_json(S.to_json()) == S


def random_complex(rng, bound=20):
    M = [[0] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i, 6):
            M[i][j] = M[j][i] = rng.randint(-bound, bound)
    return QuadraticComplex(M)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(-5, 5), st.sampled_from((1, 2, 3, 4)))
def test_monge_linear_and_blind_to_omega(s, c, chart):
    rng = random.Random(s)
    A, B = random_complex(rng), random_complex(rng)
    try:
        FA, FB, FAB = (monge_form(X, chart).F for X in (A, B, A + B))
    except DegenerateStructure:
        return
    assert FAB == tuple(tuple(x + y for x, y in zip(r, q)) for r, q in zip(FA, FB))
    shifted = A + QuadraticComplex(omega_matrix()).scale(c)
    assert monge_form(shifted, chart).F == FA
    assert all(f.total_degree() <= 2 for row in FA for f in row)
