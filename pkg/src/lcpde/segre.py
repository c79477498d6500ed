"""Segre symbols of quadratic complexes.

The symbol records the Jordan structure of the pencil operator
M = Q Omega^{-1}: one group per distinct eigenvalue, listing the sizes of
its Jordan blocks. Groups with several blocks are parenthesised.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath
import numpy as np

from .complexcore import QuadraticComplex
from .errors import ToleranceAmbiguity, VacuousComplex
from .exact import matmul_q, rank_q
from .plucker import omega_inverse, omega_matrix


# ---------------------------------------------------------------------------
# symbols


def _canonical(groups):
    gs = [tuple(sorted(g)) for g in groups]
    return tuple(sorted(gs, key=lambda g: (sum(g), len(g), g)))


@dataclass(frozen=True)
class SegreSymbol:
    groups: tuple
    starred: bool = False

    def __post_init__(self):
        groups = _canonical(self.groups)
        if sum(sum(g) for g in groups) != 6:
            raise ValueError(f"block sizes must total 6, got {groups}")
        object.__setattr__(self, "groups", groups)

    @property
    def coarse(self):
        return SegreSymbol(self.groups)

    @property
    def blocks(self):
        return sorted(b for g in self.groups for b in g)

    def __str__(self):
        body = "".join(str(g[0]) if len(g) == 1 else "(" + "".join(map(str, g)) + ")"
                       for g in self.groups)
        return f"[{body}]" + ("*" if self.starred else "")

    @classmethod
    def parse(cls, text):
        text = text.replace(" ", "")
        m = re.fullmatch(r"\[([0-9()]+)\](\*?)", text)
        if not m:
            raise ValueError(f"not a Segre symbol: {text!r}")
        groups = []
        for paren, single in re.findall(r"\(([0-9]+)\)|([0-9])", m.group(1)):
            groups.append(tuple(int(c) for c in paren) if paren else (int(single),))
        return cls(tuple(groups), bool(m.group(2)))


# ---------------------------------------------------------------------------
# the pencil operator


def pencil_matrix(Q):
    M = Q.Q if isinstance(Q, QuadraticComplex) else Q
    return matmul_q([list(r) for r in M], omega_inverse())


def trace_normalize(Q):
    """Q - (tr(Q Omega^{-1}) / 6) Omega: the representative with traceless pencil."""
    M = pencil_matrix(Q)
    t = sum(M[i][i] for i in range(6)) / 6
    G = omega_matrix()
    return QuadraticComplex([[Q.Q[i][j] - t * G[i][j] for j in range(6)] for i in range(6)])


# ---------------------------------------------------------------------------
# univariate polynomials over Q: coefficient lists, lowest degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[i + d] -= c * y
        a = _trim(a)
    return _trim(q), a


def _pmonic(p):
    p = _trim(p)
    return [Fraction(x) / p[-1] for x in p]


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _pderiv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def charpoly(M):
    """Monic characteristic polynomial det(x I - M) (Faddeev-LeVerrier)."""
    n = len(M)
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]
    N = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        N = [[sum((M[i][l] * N[l][j] for l in range(n)), Fraction(0)) + c * I[i][j]
              for j in range(n)] for i in range(n)]
        MN = matmul_q(M, N)
        c = -sum(MN[i][i] for i in range(n)) / k
        coeffs.append(c)
    return list(reversed(coeffs))


def squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity) with squarefree monic factors."""
    p = _pmonic(p)
    out = []
    dp = _pderiv(p)
    a = _pgcd(p, dp)
    b = _pdivmod(p, a)[0]
    c = _pdivmod(dp, a)[0]
    d = _trim([x - y for x, y in _zip_longest(c, _pderiv(b))])
    i = 1
    while len(b) > 1:
        a = _pgcd(b, d) if d else _pmonic(b)
        if len(a) > 1:
            out.append((a, i))
        b = _pdivmod(b, a)[0]
        c = _pdivmod(d, a)[0] if d else []
        d = _trim([x - y for x, y in _zip_longest(c, _pderiv(b))])
        i += 1
    return out


def _zip_longest(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def _to_monic_integer(p):
    """Return (G, a) with G monic integer and p(x) proportional to G(a x)."""
    p = _trim(p)
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    a = ints[-1]
    n = len(ints) - 1
    G = [ints[i] * a ** (n - 1 - i) for i in range(n)] + [1]
    return G, a


def factor_rational(p):
    """Irreducible monic factors over Q of a squarefree polynomial.

    Candidate factors come from products of subsets of the complex roots
    (computed to high precision); each candidate is accepted only after
    exact division, so the result is exact.
    """
    p = _pmonic(p)
    if len(p) <= 2:
        return [p]
    G, a = _to_monic_integer(p)
    factors = []
    rest = [Fraction(c) for c in G]
    while len(rest) > 2:
        found = _split_one(rest)
        if found is None:
            factors.append(rest)
            break
        factors.append(found)
        rest = _pdivmod(rest, found)[0]
    else:
        if len(rest) == 2:
            factors.append(rest)
    # undo y = a x
    out = []
    for f in factors:
        g = [Fraction(c) * Fraction(a) ** i for i, c in enumerate(f)]
        out.append(_pmonic(g))
    return sorted(out, key=lambda f: (len(f), [Fraction(c) for c in f]))


def _split_one(G):
    """Smallest-degree proper monic integer factor of the monic integer G, or None."""
    n = len(G) - 1
    digits = max(len(str(abs(int(c)))) for c in G)
    mpmath.mp.dps = 40 + 2 * digits * n
    roots = mpmath.polyroots([int(c) for c in reversed(G)], maxsteps=400, extraprec=4 * mpmath.mp.dps)
    for k in range(1, n // 2 + 1):
        for sub in combinations(range(n), k):
            poly = [mpmath.mpc(1)]
            for idx in sub:
                r = roots[idx]
                poly = [(poly[i - 1] if i else 0) - r * (poly[i] if i < len(poly) else 0)
                        for i in range(len(poly) + 1)]
            cand = []
            ok = True
            for c in poly:
                if abs(mpmath.im(c)) > mpmath.mpf(10) ** (-mpmath.mp.dps // 3):
                    ok = False
                    break
                cand.append(int(mpmath.nint(mpmath.re(c))))
            if not ok:
                continue
            cand = [Fraction(c) for c in cand]
            q, r = _pdivmod(G, cand)
            if not r:
                return cand
    return None


def _poly_of_matrix(g, M):
    n = len(M)
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    P = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(g):
        P = matmul_q(P, M)
        P = [[P[i][j] + c * I[i][j] for j in range(n)] for i in range(n)]
    return P


@dataclass(frozen=True)
class EigenClass:
    factor: tuple
    multiplicity: int
    ranks: tuple
    blocks: tuple


def jordan_data(M):
    """Jordan block sizes per irreducible factor of the characteristic polynomial."""
    n = len(M)
    out = []
    for sqf, mult in squarefree_decomposition(charpoly(M)):
        for g in factor_rational(sqf):
            d = len(g) - 1
            P = _poly_of_matrix(g, M)
            ranks = [n]
            Pk = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            for _ in range(mult):
                Pk = matmul_q(Pk, P)
                ranks.append(rank_q(Pk))
            at_least = [(ranks[k - 1] - ranks[k]) // d for k in range(1, mult + 1)] + [0]
            blocks = []
            for k in range(1, mult + 1):
                blocks += [k] * (at_least[k - 1] - at_least[k])
            out.append(EigenClass(tuple(g), mult, tuple(ranks), tuple(sorted(blocks))))
    return out


def _is_star(M):
    """Eigenvalues proportional to (1, e, e^2, 0, 0, 0), e^3 = 1."""
    t = sum(M[i][i] for i in range(6)) / 6
    Mt = [[M[i][j] - (t if i == j else 0) for j in range(6)] for i in range(6)]
    cp = charpoly(Mt)
    return all(cp[k] == 0 for k in (0, 1, 2, 4, 5)) and cp[3] != 0


def segre_symbol(Q, mode="exact"):
    """Segre symbol of the complex; ``mode`` is ``"exact"`` or ``"numeric"``."""
    if not isinstance(Q, QuadraticComplex):
        Q = QuadraticComplex(Q)
    if Q.is_vacuous:
        raise VacuousComplex("Q is a multiple of the Pluecker quadric")
    M = pencil_matrix(Q)
    if mode == "exact":
        groups = []
        for ec in jordan_data(M):
            groups += [ec.blocks] * (len(ec.factor) - 1)
        sym = SegreSymbol(tuple(groups))
    elif mode == "numeric":
        sym = _numeric_symbol(np.array([[float(x) for x in r] for r in M]))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if str(sym) == "[111(111)]" and _is_star(M):
        sym = SegreSymbol(sym.groups, starred=True)
    return sym


# ---------------------------------------------------------------------------
# floating-point classification


def _cluster(ev, scale, tol):
    """Agglomerate eigenvalues; a cluster of size m may have diameter <= tol**(1/m) * scale."""
    clusters = [[z] for z in ev]
    while True:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                merged = clusters[a] + clusters[b]
                diam = max(abs(x - y) for x in merged for y in merged)
                if diam <= tol ** (1.0 / len(merged)) * scale and (best is None or diam < best[0]):
                    best = (diam, a, b)
        if best is None:
            return clusters
        _, a, b = best
        clusters[a] = clusters[a] + clusters.pop(b)


def _numeric_groups(M, tol):
    norm = max(np.linalg.norm(M, 2), 1e-300)
    ev = np.linalg.eigvals(M)
    groups = []
    for cl in _cluster(list(ev), norm, tol):
        mu = np.mean(cl)
        m = len(cl)
        A = M - mu * np.eye(6)
        # orthonormal basis of the generalized eigenspace: null space of A^m
        _, sv, vh = np.linalg.svd(np.linalg.matrix_power(A, m))
        V = vh[-m:].conj().T
        B = V.conj().T @ A @ V  # nilpotent up to rounding
        b = np.linalg.norm(B, 2)
        Bk = np.eye(m, dtype=complex)
        nullities = [0]
        for k in range(1, m + 1):
            Bk = Bk @ B
            s = np.linalg.svd(Bk, compute_uv=False)
            nullities.append(int(np.sum(s <= tol * norm * b ** (k - 1))))
        if nullities[-1] != m:
            raise ToleranceAmbiguity(f"eigenvalue cluster of size {m} has nullity {nullities[-1]}")
        at_least = [nullities[k] - nullities[k - 1] for k in range(1, m + 1)] + [0]
        blocks = []
        for k in range(1, m + 1):
            blocks += [k] * (at_least[k - 1] - at_least[k])
        groups.append(tuple(blocks))
    return SegreSymbol(tuple(groups))


def _numeric_symbol(M, tol=1e-8):
    a = _numeric_groups(M, tol)
    b = _numeric_groups(M, tol * 10)
    if a != b:
        raise ToleranceAmbiguity(f"{a} at tolerance {tol:g} but {b} at {tol * 10:g}")
    return a
