"""Levi-Civita connection, Ricci and Cotton tensors of a conformal structure.

All quantities share powers of D = det F as denominators, so only
polynomial numerators are manipulated:

    Gamma^i_jk = G[i][j][k] / (2 D)
    Ric_ij     = Ric4[i][j] / (4 D^2)
    R          = Rn / (4 D^3)
    L_ij       = Ric_ij - R g_ij / 4 = Ln[i][j] / (16 D^3)
    C_ijk      = Cn[i][j][k] / (32 D^4),  C_ijk = nabla_k L_ij - nabla_j L_ik.

The Cotton tensor of c F equals that of F for constant c, so F is first
scaled to integer coefficients and the numerators live in Z[p1, p2, p3].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .complexcore import ConformalStructure
from .errors import DegenerateStructure
from .exact import P_VARS, MPoly, RatFunc, default_seed, sample_points, sz_point_count

_SHIFT = 8  # bits per exponent; degrees stay far below 256
_MASK = (1 << _SHIFT) - 1


class _Poly:
    """Integer polynomial in p1, p2, p3 with exponents packed into one int."""

    __slots__ = ("t",)

    def __init__(self, t=None):
        self.t = t or {}

    @classmethod
    def from_mpoly(cls, p):
        p = p.with_vars(P_VARS)
        out = {}
        for (a, b, c), v in p.terms.items():
            if isinstance(v, Fraction):
                raise ValueError("integer coefficients expected")
            out[a | (b << _SHIFT) | (c << 2 * _SHIFT)] = v
        return cls(out)

    def to_mpoly(self):
        return MPoly({(e & _MASK, (e >> _SHIFT) & _MASK, e >> 2 * _SHIFT): c
                      for e, c in self.t.items()}, P_VARS)

    def __bool__(self):
        return bool(self.t)

    def __add__(self, o):
        out = dict(self.t)
        for e, c in o.t.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _Poly(out)

    def __sub__(self, o):
        out = dict(self.t)
        for e, c in o.t.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _Poly(out)

    def __mul__(self, o):
        if isinstance(o, int):
            return _Poly({e: c * o for e, c in self.t.items()}) if o else _Poly()
        a, b = (self.t, o.t) if len(self.t) <= len(o.t) else (o.t, self.t)
        out = {}
        get = out.get
        bi = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bi:
                e = ea + eb
                out[e] = get(e, 0) + ca * cb
        return _Poly({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def diff(self, k):
        shift = k * _SHIFT
        unit = 1 << shift
        out = {}
        for e, c in self.t.items():
            d = (e >> shift) & _MASK
            if d:
                out[e - unit] = c * d
        return _Poly(out)

    def eval(self, point):
        x, y, z = (Fraction(v) for v in point)
        total = Fraction(0)
        for e, c in self.t.items():
            total += c * x ** (e & _MASK) * y ** ((e >> _SHIFT) & _MASK) * z ** (e >> 2 * _SHIFT)
        return total


def _psum(items):
    out = _Poly()
    for x in items:
        out = out + x
    return out


def _integer_scale(S):
    """Positive integer multiple of F with integer coefficients."""
    den = 1
    for row in S.F:
        for f in row:
            for c in f.terms.values():
                d = Fraction(c).denominator
                den = den * d // math.gcd(den, d)
    return [[f * den for f in row] for row in S.F]


@dataclass
class _Numerators:
    scale: int
    g: list
    D: _Poly
    dD: list
    adj: list
    G: list
    Ric4: list
    Rn: _Poly
    Ln: list


def _numerators(S):
    if not isinstance(S, ConformalStructure):
        S = ConformalStructure(S)
    F = _integer_scale(S)
    scale = next(Fraction(F[i][j].terms[e]) / Fraction(S.F[i][j].terms[e])
                 for i in range(3) for j in range(3) for e in S.F[i][j].terms)
    g = [[_Poly.from_mpoly(f) for f in row] for row in F]
    r = range(3)
    adj = [[g[(j + 1) % 3][(i + 1) % 3] * g[(j + 2) % 3][(i + 2) % 3]
            - g[(j + 1) % 3][(i + 2) % 3] * g[(j + 2) % 3][(i + 1) % 3] for j in r] for i in r]
    D = _psum(g[0][k] * adj[k][0] for k in r)
    if not D:
        raise DegenerateStructure("det F vanishes identically")
    dD = [D.diff(k) for k in r]
    dg = [[[g[i][j].diff(k) for k in r] for j in r] for i in r]  # dg[i][j][k] = d_k g_ij
    G = [[[_psum(adj[i][l] * (dg[l][k][j] + dg[l][j][k] - dg[j][k][l]) for l in r)
           for k in r] for j in r] for i in r]
    dG = [[[[G[i][j][k].diff(m) for m in r] for k in r] for j in r] for i in r]
    Ric4 = [[None] * 3 for _ in r]
    for i in r:
        for j in range(i, 3):
            lin = _psum(dG[k][i][j][k] - dG[k][k][j][i] for k in r) * D
            lin = lin - _psum(G[k][i][j] * dD[k] - G[k][k][j] * dD[i] for k in r)
            quad = _psum(G[k][k][l] * G[l][i][j] - G[k][i][l] * G[l][k][j] for k in r for l in r)
            Ric4[i][j] = Ric4[j][i] = lin * 2 + quad
    Rn = _psum(adj[i][j] * Ric4[i][j] for i in r for j in r)
    Ln = [[None] * 3 for _ in r]
    for i in r:
        for j in range(i, 3):
            Ln[i][j] = Ln[j][i] = Ric4[i][j] * D * 4 - Rn * g[i][j]
    return _Numerators(scale, g, D, dD, adj, G, Ric4, Rn, Ln)


def _cotton_numerators(N):
    """Cn[i][j][k] with C_ijk = Cn / (32 D^4); only j < k computed, rest by antisymmetry."""
    r = range(3)
    cache = {}

    def nabla(k, i, j):
        key = (k, min(i, j), max(i, j))
        if key not in cache:
            t = (N.Ln[i][j].diff(k) * N.D - N.Ln[i][j] * N.dD[k] * 3) * 2
            t = t - _psum(N.G[m][k][i] * N.Ln[m][j] + N.G[m][k][j] * N.Ln[i][m] for m in r)
            cache[key] = t
        return cache[key]

    C = [[[_Poly() for _ in r] for _ in r] for _ in r]
    for i in r:
        for j in r:
            for k in range(j + 1, 3):
                c = nabla(k, i, j) - nabla(j, i, k)
                C[i][j][k] = c
                C[i][k][j] = c * -1
    return C


# ---------------------------------------------------------------------------
# public interface


@dataclass(frozen=True)
class MetricJet:
    g: tuple
    ginv: tuple
    christoffel: tuple
    ricci: tuple
    scalar: RatFunc


def metric_jet(S):
    """Connection, Ricci tensor and scalar curvature as rational functions.

    Components keep the shared powers of det F as denominators; they are
    not reduced to lowest terms (equality tests cross-multiply).
    """
    N = _numerators(S)
    r = range(3)
    D = N.D.to_mpoly()
    g = tuple(tuple(RatFunc(f) for f in row) for row in S.F)
    # F was scaled by N.scale: the inverse and the scalar curvature pick up that factor
    ginv = tuple(tuple(RatFunc(N.adj[i][j].to_mpoly() * N.scale, D, normalize=False)
                       for j in r) for i in r)
    gam = tuple(tuple(tuple(RatFunc(N.G[i][j][k].to_mpoly(), D * 2, normalize=False) for k in r)
                      for j in r) for i in r)
    ric = tuple(tuple(RatFunc(N.Ric4[i][j].to_mpoly(), D * D * 4, normalize=False) for j in r)
                for i in r)
    scal = RatFunc(N.Rn.to_mpoly() * N.scale, D * D * D * 4, normalize=False)
    return MetricJet(g, ginv, gam, ric, scal)


def ricci_at(S, point):
    """Exact Ricci tensor at a rational point (Fractions)."""
    N = _numerators(S)
    d = N.D.eval(point)
    if d == 0:
        raise DegenerateStructure("point lies on the singular locus det F = 0")
    return [[N.Ric4[i][j].eval(point) / (4 * d * d) for j in range(3)] for i in range(3)]


def cotton_numerators(S):
    """``(Cn, den)`` with C_ijk = Cn[i][j][k] / den and den = 32 (det cF)^4.

    Here c is the positive integer clearing the denominators of F; the
    Cotton tensor itself does not depend on c.
    """
    N = _numerators(S)
    C = _cotton_numerators(N)
    r = range(3)
    num = tuple(tuple(tuple(C[i][j][k].to_mpoly() for k in r) for j in r) for i in r)
    return num, N.D.to_mpoly() ** 4 * 32


def cotton(S):
    """Cotton tensor C_ijk = nabla_k L_ij - nabla_j L_ik over the shared denominator."""
    num, den = cotton_numerators(S)
    r = range(3)
    return tuple(tuple(tuple(RatFunc(num[i][j][k], den, normalize=False) for k in r) for j in r)
                 for i in r)


def cotton_at(S, point):
    """Exact Cotton tensor at a rational point off det F = 0."""
    N = _numerators(S)
    d = N.D.eval(point)
    if d == 0:
        raise DegenerateStructure("point lies on the singular locus det F = 0")
    C = _cotton_numerators(N)
    r = range(3)
    return [[[C[i][j][k].eval(point) / (32 * d ** 4) for k in r] for j in r] for i in r]


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    witness_point: tuple | None = None
    witness_component: tuple | None = None
    witness_value: Fraction | None = None

    def to_dict(self):
        out = {"flat": self.flat}
        if not self.flat:
            out["witness_point"] = [str(x) for x in self.witness_point]
            out["witness_component"] = list(self.witness_component)
            out["witness_value"] = str(self.witness_value)
        return out


def flatness_report(S, seed=None, bound=10 ** 4):
    """Decide conformal flatness; a non-flat verdict carries a witness.

    The cleared Cotton numerators are canonical sparse polynomials, so a
    symbolic zero is conclusive. A nonzero numerator is additionally
    confirmed by evaluation at random rational points off det F = 0; the
    number of points is chosen so that the Schwartz-Zippel failure
    probability is at most 1e-9.
    """
    N = _numerators(S)
    C = _cotton_numerators(N)
    nonzero = [(i, j, k) for i in range(3) for j in range(3) for k in range(j + 1, 3) if C[i][j][k]]
    if not nonzero:
        return FlatnessReport(True)
    D = N.D.to_mpoly()
    for comp in nonzero:
        num = C[comp[0]][comp[1]][comp[2]]
        deg = num.to_mpoly().total_degree()
        count = sz_point_count(deg, bound)
        pts = sample_points(P_VARS, default_seed() if seed is None else seed, count, bound, avoid=D)
        for pt in pts:
            xyz = tuple(pt[v] for v in P_VARS)
            val = num.eval(xyz)
            if val:
                d = N.D.eval(xyz)
                return FlatnessReport(False, xyz, comp, val / (32 * d ** 4))
    raise AssertionError("nonzero Cotton numerator vanished at every sample point")


def is_conformally_flat(S):
    return flatness_report(S).flat
