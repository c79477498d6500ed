"""Exact arithmetic: rationals, sparse multivariate polynomials, rational
functions, and fraction-free linear algebra over polynomial rings.

Rationals are :class:`fractions.Fraction`; coefficients whose denominator
is 1 are stored as plain ``int`` so that integer-coefficient computations
stay on the fast path.
"""

from __future__ import annotations

import heapq
import math
import os
import random
import re
from fractions import Fraction
from numbers import Rational
from operator import add

from .errors import NonSquare, UnknownVariable

Rat = Fraction

#: variable order used by the default rings (grlex, first variable largest)
P_VARS = ("p1", "p2", "p3")
LAMBDA = "l"

DEFAULT_SEED = 20240521


def default_seed():
    """Sampling seed; the ``LCPDE_SEED`` environment variable overrides it."""
    env = os.environ.get("LCPDE_SEED")
    return int(env) if env else DEFAULT_SEED


def rat(x):
    """Coerce an int, Fraction or ``"num/den"`` string to an exact rational."""
    if isinstance(x, str):
        return _norm(Fraction(x.strip()))
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return _norm(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'num/den' string")
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def rat_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _grlex(e):
    return (sum(e), e)


# ---------------------------------------------------------------------------
# polynomials


class MPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable in ``vars``) to
    nonzero coefficients. Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms=None, vars=P_VARS):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                c = rat(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: _norm(c) for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # construction helpers
    @classmethod
    def const(cls, c, vars=P_VARS):
        vars = tuple(vars)
        c = rat(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, name, vars=P_VARS):
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariable(name)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw(vars, {tuple(e): 1})

    @classmethod
    def gens(cls, vars=P_VARS):
        return [cls.var(v, vars) for v in vars]

    @classmethod
    def parse(cls, text, vars=None):
        return parse_poly(text, vars)

    # ring bookkeeping
    def with_vars(self, vars):
        """Re-embed into a ring whose variables are a superset of ours."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for v, e_used in zip(self.vars, self._used_mask()):
            if v in vars:
                pos.append(vars.index(v))
            elif e_used:
                raise UnknownVariable(v)
            else:
                pos.append(None)
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for k, p in zip(e, pos):
                if p is not None:
                    new[p] = k
            out[tuple(new)] = c
        return MPoly._raw(vars, out)

    def _used_mask(self):
        mask = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    mask[i] = True
        return mask

    def used_vars(self):
        return tuple(v for v, u in zip(self.vars, self._used_mask()) if u)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.vars == self.vars:
                return self, other
            vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
            return self.with_vars(vars), other.with_vars(vars)
        if isinstance(other, RatFunc):
            return NotImplemented
        return self, MPoly.const(other, self.vars)

    # predicates / accessors
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var):
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def leading(self):
        """Leading (exponent, coefficient) under graded lex order."""
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def _index(self, var):
        try:
            return self.vars.index(var)
        except ValueError:
            raise UnknownVariable(var) from None

    # arithmetic
    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MPoly._raw(a.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MPoly._raw(a.vars, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, (MPoly, RatFunc)):
            c = rat(other)
            if not c:
                return MPoly._raw(self.vars, {})
            return MPoly._raw(self.vars, {e: _norm(v * c) for e, v in self.terms.items()})
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        out = {}
        get = out.get
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly._raw(a.vars, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (MPoly, RatFunc)):
            return RatFunc(self, other) if isinstance(other, MPoly) else RatFunc(self) / other
        c = rat(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (Fraction(1) / c)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            a, b = self._coerce(other)
            return a.terms == b.terms
        if isinstance(other, RatFunc):
            return other == self
        try:
            return self.terms == MPoly.const(other, self.vars).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(
                (tuple(sorted((v, k) for v, k in zip(self.vars, e) if k)), c)
                for e, c in self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # calculus and evaluation
    def diff(self, var):
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MPoly._raw(self.vars, out)

    def eval(self, point):
        """Evaluate at ``point`` (mapping name -> value, or sequence in var order)."""
        vals = self._point_values(point)
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            total += t
        return _norm(total) if isinstance(total, Fraction) else total

    def _point_values(self, point):
        if isinstance(point, dict):
            vals = []
            for v, used in zip(self.vars, self._used_mask()):
                if v in point:
                    vals.append(point[v])
                elif used:
                    raise UnknownVariable(v)
                else:
                    vals.append(0)
            return vals
        vals = list(point)
        if len(vals) != len(self.vars):
            raise ValueError(f"expected {len(self.vars)} coordinates, got {len(vals)}")
        return vals

    def subs(self, mapping, vars=None):
        """Substitute polynomials (or constants) for variables.

        Variables missing from ``mapping`` are kept. The result lives in the
        ring ``vars`` (default: the union of our ring and the images' rings).
        """
        images = {}
        if vars is None:
            vars = list(self.vars)
            for img in mapping.values():
                if isinstance(img, MPoly):
                    vars += [v for v in img.vars if v not in vars]
        vars = tuple(vars)
        for v in self.vars:
            if v in mapping:
                img = mapping[v]
                images[v] = img.with_vars(vars) if isinstance(img, MPoly) else MPoly.const(img, vars)
            elif v in vars:
                images[v] = MPoly.var(v, vars)
            elif any(e[self.vars.index(v)] for e in self.terms):
                raise UnknownVariable(v)
        powers = {v: [MPoly.const(1, vars)] for v in images}

        def power(v, k):
            cache = powers[v]
            while len(cache) <= k:
                cache.append(cache[-1] * images[v])
            return cache[k]

        out = MPoly.const(0, vars)
        for e, c in self.terms.items():
            t = MPoly.const(c, vars)
            for v, k in zip(self.vars, e):
                if k:
                    t = t * power(v, k)
            out = out + t
        return out

    def coefficients_in(self, names):
        """Split into {exponents in ``names``: coefficient polynomial in the rest}."""
        idx = [self._index(n) for n in names]
        rest = tuple(v for v in self.vars if v not in names)
        ridx = [self._index(v) for v in rest]
        out = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            re_ = tuple(e[i] for i in ridx)
            out.setdefault(key, {})[re_] = c
        return {k: MPoly._raw(rest, v) for k, v in out.items()}

    def content(self):
        """Positive rational gcd of the coefficients (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        nums = [Fraction(c) for c in self.terms.values()]
        g = 0
        lcm = 1
        for c in nums:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        for c in nums:
            g = math.gcd(g, int(c * lcm))
        return _norm(Fraction(g, lcm))

    def integer_primitive(self):
        """Return (c, p) with self = c * p and p having coprime integer coefficients."""
        c = self.content()
        if not c:
            return 1, self
        lt = self.leading()[1]
        if lt < 0:
            c = -c
        return c, self * (Fraction(1) / Fraction(c))

    def monic(self):
        if not self.terms:
            return self
        return self * (Fraction(1) / Fraction(self.leading()[1]))

    def to_callable(self):
        """Fast float evaluation; accepts scalars or numpy arrays per variable."""
        items = [(tuple(e), float(c)) for e, c in self.terms.items()]

        def f(*args):
            total = 0.0
            for e, c in items:
                t = c
                for x, k in zip(args, e):
                    if k == 1:
                        t = t * x
                    elif k:
                        t = t * x ** k
                total = total + t
            return total

        return f

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            cs = str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"
            mono = _monomial_str(self.vars, e)
            parts.append(f"{cs} * {mono}" if mono else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({str(self)!r}, vars={self.vars})"

    def pretty(self, names=None):
        """Compact human-readable form, e.g. ``2*u1*u3 - u2^2 + 1``."""
        if not self.terms:
            return "0"
        names = names or {}
        out = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = Fraction(self.terms[e])
            factors = []
            for v, k in zip(self.vars, e):
                if k:
                    nm = names.get(v, v)
                    factors.append(nm if k == 1 else f"{nm}^{k}")
            mono = "*".join(factors)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{_frac_pretty(a)}*{mono}"
            else:
                body = _frac_pretty(a)
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s


def _frac_pretty(a):
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _monomial_str(vars, e):
    return " ".join(v if k == 1 else f"{v}^{k}" for v, k in zip(vars, e) if k)


def poly_diff(p, var):
    """Formal partial derivative of ``p`` with respect to ``var``."""
    return p.diff(var)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
        num, ident, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif ident is not None:
            toks.append(("id", ident))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


def parse_poly(text, vars=None):
    """Parse an infix polynomial; juxtaposition means multiplication.

    Accepts the canonical serialization (``3/2 * p1^2 p2 + -1 * p3``) as
    well as ordinary expressions such as ``(p2^2 + p3^2 - 1)``. When
    ``vars`` is omitted the ring is formed from the identifiers in order
    of first appearance.
    """
    toks = _tokenize(text)
    if vars is None:
        seen = []
        for kind, val in toks:
            if kind == "id" and val not in seen:
                seen.append(val)
        vars = tuple(seen)
    vars = tuple(vars)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else (None, None)

    def take():
        t = peek()
        pos[0] += 1
        return t

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while True:
            kind, tok = peek()
            if (kind, tok) == ("op", "*"):
                take()
                val = val * unary()
            elif (kind, tok) == ("op", "/"):
                take()
                den = unary()
                if not den.is_constant() or den.is_zero():
                    raise ValueError("division by a non-constant or zero in polynomial text")
                val = val * (Fraction(1) / Fraction(den.constant_value()))
            elif kind in ("num", "id") or (kind, tok) == ("op", "("):
                val = val * unary()
            else:
                return val

    def unary():
        kind, tok = peek()
        if (kind, tok) == ("op", "-"):
            take()
            return -unary()
        if (kind, tok) == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, tok = take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer literal")
            return base ** tok
        return base

    def atom():
        kind, tok = take()
        if kind == "num":
            return MPoly.const(tok, vars)
        if kind == "id":
            if tok not in vars:
                raise UnknownVariable(tok)
            return MPoly.var(tok, vars)
        if (kind, tok) == ("op", "("):
            val = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return val
        raise ValueError(f"unexpected token {tok!r}")

    if not toks:
        raise ValueError("empty polynomial text")
    result = expr()
    if pos[0] != len(toks):
        raise ValueError(f"trailing input in polynomial text: {toks[pos[0]:]}")
    return result


# ---------------------------------------------------------------------------
# division and gcd


def poly_divide(a, b):
    """Exact quotient a / b, or ``None`` when b does not divide a."""
    a, b = a._coerce(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return MPoly._raw(a.vars, {})
    eb, cb = b.leading()
    inv = Fraction(1) / Fraction(cb)
    rest = [(e, c) for e, c in b.terms.items() if e != eb]
    r = dict(a.terms)
    heap = [(-sum(e), tuple(-k for k in e)) for e in r]
    heapq.heapify(heap)
    q = {}
    while r:
        while True:
            _, ne = heapq.heappop(heap)
            e = tuple(-k for k in ne)
            if e in r:
                break
        c = r.pop(e)
        d = tuple(x - y for x, y in zip(e, eb))
        if any(k < 0 for k in d):
            return None
        qc = _norm(c * inv)
        q[d] = qc
        for e2, c2 in rest:
            t = tuple(map(add, d, e2))
            s = r.get(t, 0) - qc * c2
            if s:
                if t not in r:
                    heapq.heappush(heap, (-sum(t), tuple(-k for k in t)))
                r[t] = _norm(s)
            else:
                r.pop(t, None)
    return MPoly._raw(a.vars, q)


def exact_div(a, b):
    q = poly_divide(a, b)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q


def _deg_in(p, i):
    return max((e[i] for e in p.terms), default=-1)


def _coeff_in(p, i, d):
    return MPoly._raw(p.vars, {e[:i] + (0,) + e[i + 1:]: c for e, c in p.terms.items() if e[i] == d})


def _shift(p, i, k):
    return MPoly._raw(p.vars, {e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in p.terms.items()})


def _content_in(p, i):
    """gcd of the coefficients of p viewed as a polynomial in variable i."""
    degs = sorted({e[i] for e in p.terms})
    coeffs = sorted((_coeff_in(p, i, d) for d in degs), key=lambda c: len(c.terms))
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd(g, c)
    return g.monic() if not g.is_constant() else MPoly.const(1, p.vars)


def _prem(a, b, i):
    db = _deg_in(b, i)
    lcb = _coeff_in(b, i, db)
    r = a
    e = _deg_in(a, i) - db + 1
    while not r.is_zero() and _deg_in(r, i) >= db:
        d = _deg_in(r, i)
        lr = _coeff_in(r, i, d)
        r = r * lcb - _shift(lr * b, i, d - db)
        e -= 1
    return r * lcb ** e if e > 0 else r


def _subresultant_gcd(a, b, i):
    """Primitive gcd (w.r.t. variable i) of two polynomials primitive in i."""
    if _deg_in(a, i) < _deg_in(b, i):
        a, b = b, a
    one = MPoly.const(1, a.vars)
    g = h = one
    while True:
        d = _deg_in(a, i) - _deg_in(b, i)
        r = _prem(a, b, i)
        if r.is_zero():
            break
        if _deg_in(r, i) == 0:
            return one
        a = b
        b = exact_div(r, g * h ** d)
        g = _coeff_in(a, i, _deg_in(a, i))
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = exact_div(g ** d, h ** (d - 1))
    return exact_div(b, _content_in(b, i))


def _gcd(a, b):
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return MPoly.const(1, a.vars)
    ma, mb = a._used_mask(), b._used_mask()
    i = next(k for k in range(len(a.vars)) if ma[k] or mb[k])
    if not ma[i]:
        return _gcd(a, _content_in(b, i))
    if not mb[i]:
        return _gcd(_content_in(a, i), b)
    ca, cb = _content_in(a, i), _content_in(b, i)
    c = _gcd(ca, cb)
    pa = exact_div(a, ca)
    pb = exact_div(b, cb)
    return c * _subresultant_gcd(pa, pb, i)


def poly_gcd(a, b):
    """Monic greatest common divisor over the rationals (graded lex leading term)."""
    a, b = a._coerce(b)
    g = _gcd(a, b)
    return g.monic() if not g.is_zero() else g


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Quotient of polynomials in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalize=True):
        if not isinstance(num, MPoly):
            raise TypeError("numerator must be an MPoly")
        if den is None:
            den = MPoly.const(1, num.vars)
        num, den = num._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if normalize:
            if num.is_zero():
                den = MPoly.const(1, num.vars)
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num, den = exact_div(num, g), exact_div(den, g)
                lc = Fraction(den.leading()[1])
                if lc != 1:
                    num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MPoly):
            return RatFunc(other)
        return RatFunc(MPoly.const(other, self.vars))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self.den ** -n, self.num ** -n)
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, MPoly)) or isinstance(other, Rational):
            o = self._lift(other)
            return (self.num * o.den - o.num * self.den).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return self.num.is_zero()

    def diff(self, var):
        n, d = self.num, self.den
        return RatFunc(n.diff(var) * d - n * d.diff(var), d * d)

    def eval(self, point):
        den = self.den.eval(point)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return _norm(Fraction(self.num.eval(point)) / Fraction(den))

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def ratfunc_diff(r, var):
    """Quotient-rule derivative, normalized."""
    return r.diff(var)


# ---------------------------------------------------------------------------
# matrices of polynomials


def _as_poly_matrix(M):
    rows = [list(r) for r in M]
    vars = None
    for r in rows:
        for x in r:
            if isinstance(x, MPoly):
                vars = x.vars if vars is None else vars + tuple(v for v in x.vars if v not in vars)
    vars = vars or ()
    return [[x.with_vars(vars) if isinstance(x, MPoly) else MPoly.const(x, vars) for x in r] for r in rows], vars


def mat_det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A, vars = _as_poly_matrix(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise NonSquare(f"matrix of shape {n}x{len(A[0]) if A else 0} is not square")
    if n == 0:
        return MPoly.const(1, vars)
    sign = 1
    prev = MPoly.const(1, vars)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return MPoly.const(0, vars)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_div(A[i][j] * pivot - A[i][k] * A[k][j], prev)
        prev = pivot
    return A[n - 1][n - 1] * sign


def fraction_free_eliminate(M):
    """Bareiss elimination with full pivoting.

    Returns ``(rank, pivot_rows, pivot_cols)`` where the pivot index lists
    refer to the original row/column numbering.
    """
    A, vars = _as_poly_matrix(M)
    m = len(A)
    n = len(A[0]) if m else 0
    rows = list(range(m))
    cols = list(range(n))
    prev = MPoly.const(1, vars)
    rank = 0
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if not A[i][j].is_zero():
                    size = len(A[i][j].terms)
                    if best is None or size < best[0]:
                        best = (size, i, j)
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[k], A[pi] = A[pi], A[k]
        rows[k], rows[pi] = rows[pi], rows[k]
        if pj != k:
            for r in A:
                r[k], r[pj] = r[pj], r[k]
            cols[k], cols[pj] = cols[pj], cols[k]
        pivot = A[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                A[i][j] = exact_div(A[i][j] * pivot - A[i][k] * A[k][j], prev)
            A[i][k] = MPoly.const(0, vars)
        prev = pivot
        rank += 1
    return rank, rows[:rank], cols[:rank]


def frac_rank(M):
    """Rank over the field of rational functions."""
    if not M or not len(M[0]):
        return 0
    return fraction_free_eliminate(M)[0]


def solve_square(A, b):
    """Solve the nonsingular polynomial system A x = b by Cramer's rule (RatFunc result)."""
    n = len(A)
    d = mat_det(A)
    if d.is_zero():
        raise ZeroDivisionError("singular system")
    out = []
    for k in range(n):
        Ak = [[b[i] if j == k else A[i][j] for j in range(n)] for i in range(n)]
        dk = mat_det(Ak)
        out.append(RatFunc(dk.with_vars(d.vars) if dk.vars != d.vars else dk, d))
    return out


# ---------------------------------------------------------------------------
# dense rational linear algebra


def rref(M):
    """Reduced row echelon form over Q; returns (R, pivot_columns)."""
    R = [[Fraction(x) for x in row] for row in M]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank_q(M):
    return len(rref(M)[1])


def nullspace_q(M):
    R, piv = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(R, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def solve_q(A, b):
    """One solution of A x = b over Q (free variables zero), or None."""
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    n = len(A[0])
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def matmul_q(A, B):
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in Bt] for r in A]


# ---------------------------------------------------------------------------
# random points and identity testing


def random_rational_point(seed, n, bound):
    """Deterministic positive rationals with numerator and denominator in [1, bound]."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    rng = random.Random(seed)
    return [_norm(Fraction(rng.randint(1, bound), rng.randint(1, bound))) for _ in range(n)]


def sz_point_count(degree, bound=10 ** 4, failure=1e-9, minimum=3):
    """Points needed so that (degree / bound) ** k <= failure."""
    if degree <= 0:
        return minimum
    ratio = degree / bound
    if ratio >= 1:
        raise ValueError("sampling bound too small for the polynomial degree")
    return max(minimum, math.ceil(math.log(failure) / math.log(ratio)))


def sample_points(vars, seed, count, bound=10 ** 4, avoid=None, max_tries=1000):
    """``count`` random points (dicts) at which ``avoid`` (if given) is nonzero."""
    pts = []
    s = seed
    tries = 0
    while len(pts) < count:
        vals = random_rational_point(s, len(vars), bound)
        s += 1
        tries += 1
        if tries > max_tries:
            raise RuntimeError("could not find sample points off the excluded locus")
        pt = dict(zip(vars, vals))
        if avoid is not None and avoid.eval(pt) == 0:
            continue
        pts.append(pt)
    return pts


def is_identically_zero(p, seed=None, bound=10 ** 4, failure=1e-9):
    """Zero test: symbolic zero first, Schwartz-Zippel confirmation second.

    The expanded representation is canonical, so a nonzero representation
    is declared zero only if it also vanishes at every random point
    (probability at most ``failure`` for a nonzero polynomial).
    """
    if p.is_zero():
        return True
    seed = default_seed() if seed is None else seed
    k = sz_point_count(max(p.total_degree(), 1), bound, failure)
    return all(p.eval(pt) == 0 for pt in sample_points(p.vars, seed, k, bound))
