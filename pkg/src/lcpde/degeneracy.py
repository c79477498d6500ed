"""Linear degeneracy tests for first-order systems, 2D and 3D second-order
equations; travelling-wave reductions; recovering the complex from a
linearly degenerate conformal structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .complexcore import QuadraticComplex
from .errors import NoSolution
from .exact import (
    P_VARS,
    MPoly,
    RatFunc,
    fraction_free_eliminate,
    frac_rank,
    nullspace_q,
    rat,
    solve_q,
    solve_square,
)


# ---------------------------------------------------------------------------
# first-order systems


def charpoly_coefficients(A):
    """Coefficients f_1..f_n of det(x E - A) = x^n + f_1 x^(n-1) + ... + f_n.

    Faddeev-LeVerrier recursion; only divisions by integers occur.
    """
    n = len(A)
    vars = next((x.vars for r in A for x in r if isinstance(x, MPoly)), ())
    A = [[x if isinstance(x, MPoly) else MPoly.const(x, vars) for x in r] for r in A]
    zero = MPoly.const(0, vars)
    Mk = [[zero] * n for _ in range(n)]
    coeffs = []
    c = MPoly.const(1, vars)
    for k in range(1, n + 1):
        Mk = [[sum((A[i][l] * Mk[l][j] for l in range(n)), zero) + (c if i == j else zero)
               for j in range(n)] for i in range(n)]
        AM = [[sum((A[i][l] * Mk[l][j] for l in range(n)), zero) for j in range(n)] for i in range(n)]
        c = sum((AM[i][i] for i in range(n)), zero) * Fraction(-1, k)
        coeffs.append(c)
    return coeffs


def check_ld_first_order(A, vars=None):
    """Linear degeneracy of v_t + A(v) v_x = 0 via the invariant identity

        grad f_1 A^(n-1) + grad f_2 A^(n-2) + ... + grad f_n = 0.
    """
    n = len(A)
    if vars is None:
        vars = next((x.vars for r in A for x in r if isinstance(x, MPoly)), ())
    vars = tuple(vars)[:n] if len(vars) >= n else tuple(vars)
    A = [[x.with_vars(vars) if isinstance(x, MPoly) else MPoly.const(x, vars) for x in r] for r in A]
    f = charpoly_coefficients(A)
    zero = MPoly.const(0, vars)
    total = [zero] * n
    for k, fk in enumerate(f, start=1):
        row = [fk.diff(v) for v in vars]
        for _ in range(n - k):
            row = [sum((row[l] * A[l][j] for l in range(n)), zero) for j in range(n)]
        total = [t + r for t, r in zip(total, row)]
    return all(t.is_zero() for t in total)


# ---------------------------------------------------------------------------
# second-order equations


def symmetrized_system(F, vars):
    """Linear system M phi = r equivalent to d_(k f_ij) = phi_(k f_ij).

    One row per multiset {i, j, k}: sum over the three ways to pick the
    derivative index.
    """
    n = len(vars)
    zero = MPoly.const(0, tuple(vars))
    rows, rhs = [], []
    for trip in combinations_with_replacement(range(n), 3):
        coeff = [zero] * n
        r = zero
        for pos in range(3):
            k = trip[pos]
            i, j = [trip[q] for q in range(3) if q != pos]
            coeff[k] = coeff[k] + F[i][j]
            r = r + F[i][j].diff(vars[k])
        rows.append(coeff)
        rhs.append(r)
    return rows, rhs


def _solve_phi(rows, rhs):
    """Consistency by rank comparison; particular solution with free phi's set to 0."""
    n = len(rows[0])
    rank = frac_rank(rows)
    aug = [r + [b] for r, b in zip(rows, rhs)]
    if frac_rank(aug) != rank:
        return None
    vars = rows[0][0].vars
    if rank == 0:
        return [RatFunc(MPoly.const(0, vars))] * n
    _, prow, pcol = fraction_free_eliminate(rows)
    sub = [[rows[i][j] for j in pcol] for i in prow]
    sol = solve_square(sub, [rhs[i] for i in prow])
    phi = [RatFunc(MPoly.const(0, vars))] * n
    for j, s in zip(pcol, sol):
        phi[j] = s
    return phi


def check_ld_2d(f11, f12, f22, vars=("p1", "p2")):
    """Linear degeneracy of f11 u_tt + 2 f12 u_tx + f22 u_xx = 0.

    Clears denominators in

        2 d1(f12/f11) + d2 ln(f11/f22) = 0,  2 d2(f12/f22) + d1 ln(f22/f11) = 0,

    and falls back to the four-relation phi-system when f11 or f22 vanishes.
    """
    v1, v2 = vars
    if f11.is_zero() or f22.is_zero():
        F = [[f11, f12], [f12, f22]]
        rows, rhs = symmetrized_system(F, vars)
        return _solve_phi(rows, rhs) is not None
    e1 = (2 * (f12.diff(v1) * f11 - f12 * f11.diff(v1)) * f22
          + f11.diff(v2) * f11 * f22 - f22.diff(v2) * f11 * f11)
    e2 = (2 * (f12.diff(v2) * f22 - f12 * f22.diff(v2)) * f11
          + f22.diff(v1) * f22 * f11 - f11.diff(v1) * f22 * f22)
    return e1.is_zero() and e2.is_zero()


@dataclass(frozen=True)
class PhiCovector:
    phi: tuple

    def __getitem__(self, k):
        return self.phi[k]


def check_ld_3d(S):
    """Decide d_(k f_ij) = phi_(k f_ij); returns ``(ok, PhiCovector or None)``."""
    rows, rhs = symmetrized_system(S.F, P_VARS)
    phi = _solve_phi(rows, rhs)
    if phi is None:
        return False, None
    return True, PhiCovector(tuple(phi))


def verify_phi(S, phi):
    """Check all ten relations exactly for a candidate covector."""
    rows, rhs = symmetrized_system(S.F, P_VARS)
    for row, r in zip(rows, rhs):
        lhs = RatFunc(MPoly.const(0))
        for c, p in zip(row, phi):
            lhs = lhs + p * c
        if not (lhs - r).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# travelling waves


@dataclass(frozen=True)
class Reduced2D:
    """a u_xixi + 2 b u_xieta + c u_etaeta = 0 with coefficients in (q1, q2)."""

    a: MPoly
    b: MPoly
    c: MPoly
    params: tuple

    def is_linearly_degenerate(self):
        return check_ld_2d(self.a, self.b, self.c, vars=("q1", "q2"))


def travelling_wave_reduce(S, lam, mu, alpha, beta, gamma):
    """Reduce along u = u(xi, eta) + alpha x1 + beta x2 + gamma x3,
    xi = x1 + lam x3, eta = x2 + mu x3."""
    lam, mu, alpha, beta, gamma = (rat(x) for x in (lam, mu, alpha, beta, gamma))
    qv = ("q1", "q2")
    q1, q2 = MPoly.gens(qv)
    sub = {"p1": q1 + alpha, "p2": q2 + beta, "p3": q1 * lam + q2 * mu + gamma}
    f = [[S.F[i][j].subs(sub, qv) for j in range(3)] for i in range(3)]
    a = f[0][0] + f[0][2] * (2 * lam) + f[2][2] * (lam * lam)
    b = f[0][1] + f[1][2] * lam + f[0][2] * mu + f[2][2] * (lam * mu)
    c = f[1][1] + f[1][2] * (2 * mu) + f[2][2] * (mu * mu)
    return Reduced2D(a, b, c, (lam, mu, alpha, beta, gamma))


# ---------------------------------------------------------------------------
# inverse of the Monge construction


def _sym_basis():
    out = []
    for i in range(6):
        for j in range(i, 6):
            E = [[Fraction(0)] * 6 for _ in range(6)]
            E[i][j] = E[j][i] = Fraction(1)
            out.append((i, j, E))
    return out


_IMAGE_CACHE = {}


def _basis_images(chart):
    if chart not in _IMAGE_CACHE:
        from .complexcore import monge_matrix

        A = monge_matrix(chart)
        imgs = []
        for i, j, _ in _sym_basis():
            # F = A^T E A for the elementary symmetric E
            F = [[A[i][a] * A[j][b] + (A[j][a] * A[i][b] if i != j else MPoly.const(0))
                  for b in range(3)] for a in range(3)]
            imgs.append(F)
        _IMAGE_CACHE[chart] = imgs
    return _IMAGE_CACHE[chart]


def _monomials(F):
    mons = set()
    for row in F:
        for f in row:
            mons.update(f.terms)
    return mons


def reconstruct_complex(S):
    """Quadratic complex whose Monge form in ``S.chart`` is exactly ``S.F``.

    Solves a 21-unknown rational linear system; the solution is unique up
    to multiples of the Pluecker quadric, and the traceless representative
    is returned.
    """
    from .segre import trace_normalize

    imgs = _basis_images(S.chart)
    mons = set(_monomials(S.F))
    for F in imgs:
        mons |= _monomials(F)
    mons = sorted(mons)
    rows, rhs = [], []
    for a in range(3):
        for b in range(a, 3):
            for m in mons:
                rows.append([Fraction(F[a][b].terms.get(m, 0)) for F in imgs])
                rhs.append(Fraction(S.F[a][b].terms.get(m, 0)))
    x = solve_q(rows, rhs)
    if x is None:
        raise NoSolution("structure does not come from a quadratic complex in this chart")
    Q = [[Fraction(0)] * 6 for _ in range(6)]
    for (i, j, _), v in zip(_sym_basis(), x):
        Q[i][j] = Q[j][i] = v
    return trace_normalize(QuadraticComplex(Q))


def monge_kernel(chart=4):
    """Basis of complexes with identically vanishing Monge form (span of Omega)."""
    imgs = _basis_images(chart)
    mons = sorted(set().union(*(_monomials(F) for F in imgs)))
    rows = []
    for a in range(3):
        for b in range(a, 3):
            for m in mons:
                rows.append([Fraction(F[a][b].terms.get(m, 0)) for F in imgs])
    out = []
    for v in nullspace_q(rows):
        Q = [[Fraction(0)] * 6 for _ in range(6)]
        for (i, j, _), c in zip(_sym_basis(), v):
            Q[i][j] = Q[j][i] = c
        out.append(Q)
    return out
