"""Quadratic complexes, their Monge conformal structures and the associated
quasilinear wave equations.

Coefficient convention: ``ConformalStructure.F`` is the symmetric matrix of
the quadratic form, so the cone is ``sum_ij F[i][j] dp^i dp^j`` and the
wave equation is ``sum_i F[i][i] u_ii + 2 sum_{i<j} F[i][j] u_ij = 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateStructure
from .exact import P_VARS, MPoly, mat_det, parse_poly, rat, rat_str
from .plucker import BASIS, _PAIRS, form_matrix, omega_matrix


def _freeze_matrix(Q):
    return tuple(tuple(rat(x) for x in row) for row in Q)


@dataclass(frozen=True)
class QuadraticComplex:
    """Symmetric 6x6 rational matrix in the basis (p23, p31, p12, p14, p24, p34)."""

    Q: tuple

    def __post_init__(self):
        Q = _freeze_matrix(self.Q)
        if len(Q) != 6 or any(len(r) != 6 for r in Q):
            raise ValueError("complex matrix must be 6x6")
        if any(Q[i][j] != Q[j][i] for i in range(6) for j in range(6)):
            raise ValueError("complex matrix must be symmetric")
        object.__setattr__(self, "Q", Q)

    @classmethod
    def from_form(cls, poly):
        """Build from the complex equation as a quadratic polynomial."""
        return cls(form_matrix(poly))

    @property
    def is_vacuous(self):
        """True when Q is a multiple of the Pluecker quadric (including zero)."""
        G = omega_matrix()
        c = self.Q[0][3] * 2
        return all(self.Q[i][j] == c * G[i][j] for i in range(6) for j in range(6))

    def __add__(self, other):
        return QuadraticComplex([[a + b for a, b in zip(r, s)] for r, s in zip(self.Q, other.Q)])

    def scale(self, c):
        c = rat(c)
        return QuadraticComplex([[c * a for a in r] for r in self.Q])

    def to_dict(self):
        return {"basis": list(BASIS), "matrix": [[rat_str(x) for x in r] for r in self.Q]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        if list(data.get("basis", BASIS)) != list(BASIS):
            raise ValueError(f"unsupported basis {data.get('basis')}; expected {list(BASIS)}")
        return cls([[rat(x) for x in r] for r in data["matrix"]])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ConformalStructure:
    """Field of cones ``F[i][j](p) dp^i dp^j`` on an affine chart of P^3.

    ``chart`` records which homogeneous coordinate was set to 1; the three
    remaining ones are renamed p1, p2, p3 in increasing order.
    """

    F: tuple
    chart: int = 4

    def __post_init__(self):
        F = tuple(tuple(self._entry(x) for x in row) for row in self.F)
        if len(F) != 3 or any(len(r) != 3 for r in F):
            raise ValueError("conformal structure must be 3x3")
        if any(F[i][j] != F[j][i] for i in range(3) for j in range(3)):
            raise ValueError("conformal structure must be symmetric")
        if any(f.total_degree() > 2 for row in F for f in row):
            raise ValueError("entries of a conformal structure have degree at most 2")
        if self.chart not in (1, 2, 3, 4):
            raise ValueError("chart must be one of 1..4")
        if mat_det(F).is_zero():
            raise DegenerateStructure("det F vanishes identically")
        object.__setattr__(self, "F", F)

    @staticmethod
    def _entry(x):
        if isinstance(x, MPoly):
            return x.with_vars(P_VARS)
        if isinstance(x, str):
            return parse_poly(x, P_VARS)
        return MPoly.const(x, P_VARS)

    def __getitem__(self, ij):
        i, j = ij
        return self.F[i][j]

    def scale(self, c):
        return ConformalStructure([[f * c for f in r] for r in self.F], self.chart)

    def to_dict(self):
        return {"F": [[str(f) for f in r] for r in self.F], "chart": self.chart}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        return cls([[parse_poly(s, P_VARS) for s in r] for r in data["F"]], int(data.get("chart", 4)))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_pde(cls, text, chart=4):
        """Read ``sum f_ij u_ij`` written with jets u1..u3, u11..u33.

        Mixed second derivatives carry the factor 2 of the wave equation,
        so ``2*a*u12`` yields ``F[0][1] = a``.
        """
        jets = ("u11", "u12", "u13", "u22", "u23", "u33")
        vars = ("u1", "u2", "u3") + jets
        poly = text.with_vars(vars) if isinstance(text, MPoly) else parse_poly(text, vars)
        parts = poly.coefficients_in(jets)
        if any(sum(k) != 1 for k in parts):
            raise ValueError("equation must be linear homogeneous in the second derivatives")
        rename = {"u1": MPoly.var("p1"), "u2": MPoly.var("p2"), "u3": MPoly.var("p3")}
        F = [[MPoly.const(0) for _ in range(3)] for _ in range(3)]
        for key, coeff in parts.items():
            i, j = (int(c) - 1 for c in jets[key.index(1)][1:])
            c = coeff.subs(rename, P_VARS)
            if i == j:
                F[i][i] = c
            else:
                F[i][j] = F[j][i] = c * Fraction(1, 2)
        return cls(F, chart)


def _chart_frame(chart):
    """Affine point and displacement directions in homogeneous coordinates."""
    affine = [k for k in (1, 2, 3, 4) if k != chart]
    one = MPoly.const(1)
    point = {chart: one}
    for name, k in zip(P_VARS, affine):
        point[k] = MPoly.var(name)
    return point, affine


def monge_matrix(chart=4):
    """6x3 polynomial matrix A(p) with Pluecker vector = A(p) dp."""
    point, affine = _chart_frame(chart)
    zero = MPoly.const(0)
    A = []
    for i, j in _PAIRS:
        row = []
        for k in affine:
            # p^{ij} = P^i dP^j - P^j dP^i with dP = e_k
            v = zero
            if j == k:
                v = v + point[i]
            if i == k:
                v = v - point[j]
            row.append(v)
        A.append(row)
    return A


def monge_form(Q, chart=4):
    """Conformal structure F = A^T Q A of the complex in the given chart."""
    M = Q.Q if isinstance(Q, QuadraticComplex) else _freeze_matrix(Q)
    A = monge_matrix(chart)
    zero = MPoly.const(0)
    QA = [[sum((A[s][m] * M[r][s] for s in range(6) if M[r][s]), zero) for m in range(3)]
          for r in range(6)]
    F = [[sum((A[r][i] * QA[r][j] for r in range(6)), zero) for j in range(3)] for i in range(3)]
    return ConformalStructure(F, chart)


def kummer_quartic(S):
    """det F: the affine trace of the singular (Kummer) surface."""
    return mat_det(S.F)


_JET_NAMES = {"p1": "u_1", "p2": "u_2", "p3": "u_3"}


def _coefficient_text(c, jet):
    body = c.pretty(_JET_NAMES).replace("*", " ")
    if len(c.terms) == 1:
        e, v = next(iter(c.terms.items()))
        v = Fraction(v)
        if not any(e):
            mag = abs(v)
            text = jet if mag == 1 else f"{_frac(mag)} {jet}"
        else:
            mono = MPoly._raw(c.vars, {e: 1}).pretty(_JET_NAMES).replace("*", " ")
            text = f"{mono} {jet}" if abs(v) == 1 else f"{_frac(abs(v))} {mono} {jet}"
        return ("-" if v < 0 else "+"), text
    return "+", f"({body}) {jet}"


def _frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pde_render(S):
    """Human-readable wave equation, e.g. ``u_11 + u_22 + u_33 = 0``."""
    F = S.F if isinstance(S, ConformalStructure) else S
    order = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
    pieces = []
    for i, j in order:
        c = F[i][j] if i == j else F[i][j] * 2
        if c.is_zero():
            continue
        pieces.append(_coefficient_text(c, f"u_{i + 1}{j + 1}"))
    if not pieces:
        return "0 = 0"
    sign, text = pieces[0]
    out = ("-" if sign == "-" else "") + text
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out + " = 0"
