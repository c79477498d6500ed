"""Vector-field Lax pairs on the first-order jet space.

A field ``X = c1 d/dx1 + c2 d/dx2 + c3 d/dx3`` has coefficients depending on
``u1, u2, u3`` and the spectral parameter ``l``. Acting on such a
coefficient, ``d/dxj`` is the total derivative ``sum_k (dc/du_k) u_jk``, so a
commutator is linear in the second-order jets ``u11 .. u33``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexcore import ConformalStructure
from .errors import NotProportional
from .exact import MPoly, RatFunc, rat

FIRST = ("u1", "u2", "u3")
SECOND = ("u11", "u12", "u13", "u22", "u23", "u33")
JET_VARS = FIRST + ("l",) + SECOND


def _jet(i, j):
    i, j = sorted((i, j))
    return f"u{i + 1}{j + 1}"


def _to_jet(x):
    if isinstance(x, MPoly):
        return x.with_vars(JET_VARS)
    if isinstance(x, str):
        return MPoly.parse(x, JET_VARS)
    return MPoly.const(x, JET_VARS)


def total_derivative(c, j):
    """d/dx^{j+1} of a coefficient depending on first jets and l."""
    out = MPoly.const(0, JET_VARS)
    for k, uk in enumerate(FIRST):
        d = c.diff(uk)
        if d:
            out = out + d * MPoly.var(_jet(j, k), JET_VARS)
    return out


@dataclass(frozen=True)
class JetVectorField:
    """``(c1 d1 + c2 d2 + c3 d3) / denominator`` with polynomial ``c_i``."""

    coeffs: tuple
    denominator: MPoly = field(default=None)

    def __post_init__(self):
        cs = tuple(_to_jet(c) for c in self.coeffs)
        if len(cs) != 3:
            raise ValueError("a vector field in three variables needs three coefficients")
        for c in cs:
            if any(c.degree(s) > 0 for s in SECOND):
                raise ValueError("coefficients may depend on first-order jets only")
        den = _to_jet(1 if self.denominator is None else self.denominator)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "denominator", den)

    @property
    def is_polynomial(self):
        return self.denominator.is_constant()

    def numerator_field(self):
        return JetVectorField(self.coeffs)

    def apply(self, c):
        """X(c) for a polynomial coefficient c (numerator field only)."""
        out = MPoly.const(0, JET_VARS)
        for j, cj in enumerate(self.coeffs):
            if cj:
                out = out + cj * total_derivative(c, j)
        return out

    def scale(self, c):
        c = _to_jet(c)
        return JetVectorField(tuple(x * c for x in self.coeffs), self.denominator)

    def negate_term(self, i):
        cs = list(self.coeffs)
        cs[i] = -cs[i]
        return JetVectorField(tuple(cs), self.denominator)

    def specialize(self, lam):
        lam = rat(lam)
        sub = {"l": lam}
        return JetVectorField(tuple(c.subs(sub, JET_VARS) for c in self.coeffs),
                              self.denominator.subs(sub, JET_VARS))

    def to_dict(self):
        return {"coeffs": [c.pretty() for c in self.coeffs], "denominator": self.denominator.pretty()}

    def __str__(self):
        body = " + ".join(f"({c.pretty()}) d{j + 1}" for j, c in enumerate(self.coeffs) if c)
        if self.is_polynomial and self.denominator.constant_value() == 1:
            return body or "0"
        return f"[{body}] / ({self.denominator.pretty()})"


@dataclass(frozen=True)
class LaxPair:
    X: JetVectorField
    Y: JetVectorField

    def specialize(self, lam):
        return LaxPair(self.X.specialize(lam), self.Y.specialize(lam))


@dataclass(frozen=True)
class CommutatorResult:
    components: tuple

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __neg__(self):
        return CommutatorResult(tuple(-c for c in self.components))


def commutator(X, Y):
    """[X, Y] for polynomial fields: component i is X(Y^i) - Y(X^i)."""
    if not (X.is_polynomial and Y.is_polynomial):
        raise ValueError("use verify_lax for fields with denominators")
    sx = X.denominator.constant_value()
    sy = Y.denominator.constant_value()
    scale = Fraction(1) / (sx * sy)
    comps = tuple((X.apply(yi) - Y.apply(xi)) * scale for xi, yi in zip(X.coeffs, Y.coeffs))
    return CommutatorResult(comps)


def cleared_commutator(X, Y):
    """f^2 g^2 [X, Y] for X = X'/f, Y = Y'/g, as polynomials.

    Expands to f g [X', Y'] - f X'(g) Y' + g Y'(f) X'.
    """
    Xn, Yn = X.numerator_field(), Y.numerator_field()
    f, g = X.denominator, Y.denominator
    base = commutator(Xn, Yn).components
    xg = Xn.apply(g)
    yf = Yn.apply(f)
    fg = f * g
    return CommutatorResult(tuple(fg * b - f * xg * yc + g * yf * xc
                                  for b, xc, yc in zip(base, Xn.coeffs, Yn.coeffs)))


def pde_expression(S):
    """E = sum f_ii u_ii + 2 sum_{i<j} f_ij u_ij in jet variables."""
    rename = {f"p{k + 1}": MPoly.var(f"u{k + 1}", JET_VARS) for k in range(3)}
    F = S.F if isinstance(S, ConformalStructure) else S
    E = MPoly.const(0, JET_VARS)
    for i in range(3):
        for j in range(i, 3):
            c = F[i][j].subs(rename, JET_VARS) * (1 if i == j else 2)
            E = E + c * MPoly.var(_jet(i, j), JET_VARS)
    return E


def _split(p):
    """(second-jet coefficient vector, zeroth-order part)."""
    parts = p.coefficients_in(SECOND)
    zero = MPoly.const(0, FIRST + ("l",))
    n = len(SECOND)
    vec = [parts.pop(tuple(int(t == s) for t in range(n)), zero) for s in range(n)]
    zeroth = parts.pop((0,) * n, None)
    if parts:
        raise ValueError("commutator is not linear in the second-order jets")
    return vec, zeroth


@dataclass(frozen=True)
class LaxVerdict:
    ok: bool
    multipliers: tuple
    denominator: MPoly
    commutator: CommutatorResult


def _multiplier(component, E, index):
    """m with component = m E, or raise NotProportional."""
    w, w0 = _split(component)
    e, _ = _split(E)
    if w0 is not None and not w0.is_zero():
        raise NotProportional(index, w0)
    pivot = next(s for s in range(len(e)) if not e[s].is_zero())
    for t in range(len(e)):
        rem = w[t] * e[pivot] - w[pivot] * e[t]
        if not rem.is_zero():
            raise NotProportional(index, rem)
    return RatFunc(w[pivot], e[pivot])


def verify_lax(X, Y, S):
    """Check that [X, Y] vanishes modulo the wave equation of S.

    Each component must be a multiple ``m_i E`` of the equation; fields with
    denominators are handled through the cleared commutator, and the
    multipliers returned refer to [X, Y] itself (the clearing factor is
    divided back out and also stored as ``denominator``).
    """
    E = pde_expression(S)
    if X.is_polynomial and Y.is_polynomial:
        comm = commutator(X, Y)
        clear = MPoly.const(1, JET_VARS)
    else:
        comm = cleared_commutator(X, Y)
        clear = (X.denominator * Y.denominator) ** 2
    mults = []
    for i, comp in enumerate(comm.components):
        m = _multiplier(comp, E, i)
        mults.append(m / RatFunc(clear) if not clear.is_constant() else m)
    return LaxVerdict(True, tuple(mults), clear, comm)
