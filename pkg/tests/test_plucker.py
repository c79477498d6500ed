import random
from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from lcpde.complexcore import QuadraticComplex
from lcpde.errors import DegeneratePair
from lcpde.exact import matmul_q
from lcpde.plucker import (
    complex_contains, form_matrix, line_from_points, omega, omega_inverse, omega_matrix,
    quadratic_value,
)
from lcpde.catalog import complex_from_text


def test_axis_line():
    L = line_from_points((1, 0, 0, 0), (0, 1, 0, 0))
    assert L["p12"] == 1
    assert sum(abs(x) for x in L.coords) == 1


def test_minors():
    L = line_from_points((1, 2, 3, 1), (0, 1, 1, 1))
    assert list(L.coords) == [-1, -1, 1, 1, 1, 2]
    assert omega(L.coords) == 0


def test_swap_negates():
    a, b = (1, 2, 3, 1), (0, 1, 1, 1)
    assert [-x for x in line_from_points(a, b).coords] == list(line_from_points(b, a).coords)


def test_omega_inverse():
    I = matmul_q(omega_matrix(), omega_inverse())
    assert I == [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]


def test_equal_weights_tetrahedral_is_omega():
    Q = complex_from_text("p41 p23 + p42 p31 + p43 p12")
    G = omega_matrix()
    assert [list(r) for r in Q.Q] == [[-x for x in r] for r in G]
    rng = random.Random(3)
    for _ in range(20):
        a = [rng.randint(-9, 9) for _ in range(4)]
        b = [rng.randint(-9, 9) for _ in range(4)]
        assert complex_contains(Q.Q, line_from_points(a, b))


def test_axis_line_on_tetrahedral_complex():
    Q = complex_from_text("1 p41 p23 + 2 p42 p31 + 5 p43 p12")
    assert complex_contains(Q.Q, line_from_points((1, 0, 0, 0), (0, 1, 0, 0)))


def test_random_line_not_in_random_complex():
    rng = random.Random(11)
    M = [[0] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i, 6):
            M[i][j] = M[j][i] = rng.randint(-20, 20)
    L = line_from_points((1, 3, -2, 5), (2, -1, 4, 1))
    assert quadratic_value(M, L.coords) != 0
    assert not complex_contains(QuadraticComplex(M).Q, L)


def test_form_matrix_round_trip():
    from lcpde.plucker import matrix_form
    Q = complex_from_text("3 p12^2 - p14 p23 + 2 p24 p31").Q
    assert form_matrix(matrix_form(Q)) == [list(r) for r in Q]


points = st.lists(st.integers(-1000, 1000), min_size=4, max_size=4)


@settings(max_examples=2000)
@given(points, points)
def test_lines_lie_on_klein_quadric(a, b):
    try:
        x = line_from_points(a, b).coords
    except DegeneratePair:
        assume(False)
    assert omega(x) == 0
    assert quadratic_value(omega_matrix(), x) == x[0] * x[3] + x[1] * x[4] + x[2] * x[5]
