"""Pluecker coordinates of lines in P^3 and the Klein quadric.

All six-vectors use the fixed basis order ``(p23, p31, p12, p14, p24, p34)``;
any other index pair is resolved through antisymmetry ``p^{ij} = -p^{ji}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegeneratePair
from .exact import MPoly, rat, rat_str

BASIS = ("p23", "p31", "p12", "p14", "p24", "p34")
_PAIRS = ((2, 3), (3, 1), (1, 2), (1, 4), (2, 4), (3, 4))


def basis_slot(i, j):
    """Return ``(slot, sign)`` with ``p^{ij} = sign * coords[slot]``."""
    if (i, j) in _PAIRS:
        return _PAIRS.index((i, j)), 1
    if (j, i) in _PAIRS:
        return _PAIRS.index((j, i)), -1
    raise ValueError(f"no Pluecker coordinate p{i}{j}")


def omega(x):
    """The Pluecker relation p23 p14 + p31 p24 + p12 p34."""
    return x[0] * x[3] + x[1] * x[4] + x[2] * x[5]


def omega_matrix():
    """Symmetric matrix G with x^T G x = omega(x)."""
    G = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(3):
        G[i][i + 3] = G[i + 3][i] = Fraction(1, 2)
    return G


def omega_inverse():
    Gi = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(3):
        Gi[i][i + 3] = Gi[i + 3][i] = Fraction(2)
    return Gi


def quadratic_value(Q, x):
    return sum(Q[i][j] * x[i] * x[j] for i in range(6) for j in range(6))


@dataclass(frozen=True)
class PlueckerLine:
    coords: tuple

    def __post_init__(self):
        c = tuple(rat(x) for x in self.coords)
        if len(c) != 6:
            raise ValueError("a line has six Pluecker coordinates")
        if not any(c):
            raise DegeneratePair("all Pluecker coordinates vanish")
        if omega(c) != 0:
            raise ValueError("coordinates violate the Pluecker relation")
        object.__setattr__(self, "coords", c)

    def __getitem__(self, name):
        if isinstance(name, int):
            return self.coords[name]
        i, j = int(name[-2]), int(name[-1])
        slot, sign = basis_slot(i, j)
        return sign * self.coords[slot]

    def to_json(self):
        return json.dumps([rat_str(x) for x in self.coords])

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        return cls(tuple(rat(x) for x in data))


def line_from_points(a, b):
    """Line through two points of P^3 (homogeneous 4-vectors)."""
    a = [rat(x) for x in a]
    b = [rat(x) for x in b]
    coords = tuple(a[i - 1] * b[j - 1] - a[j - 1] * b[i - 1] for i, j in _PAIRS)
    if not any(coords):
        raise DegeneratePair("points are proportional")
    return PlueckerLine(coords)


def complex_contains(Q, line):
    """True iff the line satisfies the complex equation L^T Q L = 0."""
    M = getattr(Q, "Q", Q)
    return quadratic_value(M, line.coords) == 0


# ---------------------------------------------------------------------------
# complex equations written as polynomials in the Pluecker coordinates


def pl(name):
    """Pluecker coordinate as a polynomial, e.g. ``pl("42") == -p24``."""
    name = name.lstrip("p")
    slot, sign = basis_slot(int(name[0]), int(name[1]))
    return MPoly.var(BASIS[slot], BASIS) * sign


def form_matrix(poly):
    """Symmetric 6x6 matrix of a homogeneous quadratic form in ``BASIS``."""
    poly = poly.with_vars(BASIS)
    Q = [[Fraction(0)] * 6 for _ in range(6)]
    for e, c in poly.terms.items():
        if sum(e) != 2:
            raise ValueError("complex equation must be a homogeneous quadratic form")
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            Q[i][i] += c
        else:
            Q[i][j] += Fraction(c) / 2
            Q[j][i] += Fraction(c) / 2
    return Q


def matrix_form(Q):
    """Inverse of :func:`form_matrix`."""
    x = MPoly.gens(BASIS)
    out = MPoly.const(0, BASIS)
    for i in range(6):
        for j in range(6):
            if Q[i][j]:
                out = out + x[i] * x[j] * Q[i][j]
    return out
