"""Normal forms of quadratic complexes and of their wave equations.

Each case stores the complex equation as text in Pluecker coordinates
(``p13``, ``p42`` and friends are resolved by antisymmetry), the affine chart
it is read in, and the resulting wave equation as text in jets. Parameters
``l1, l2, ...`` are the labels of the Jordan blocks of the pencil operator;
``blocks`` gives the block size attached to each label, so coincidences
among the labels determine the refined Segre symbol.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .complexcore import ConformalStructure, QuadraticComplex, monge_form, pde_render
from .errors import BadParams
from .exact import MPoly, default_seed, parse_poly, rat, rat_str
from .laxpair import JetVectorField, LaxPair
from .plucker import BASIS, form_matrix, pl
from .segre import SegreSymbol

JETS = ("u1", "u2", "u3", "u11", "u12", "u13", "u22", "u23", "u33")


@dataclass(frozen=True)
class CaseSpec:
    case_id: int
    subcase: int | None
    labels: tuple
    blocks: tuple
    chart: int
    complex_text: str
    pde_text: str
    derived: dict = field(default_factory=dict)
    note: str = ""

    @property
    def key(self):
        return f"{self.case_id}" if self.subcase is None else f"{self.case_id}.{self.subcase}"

    @property
    def generic_symbol(self):
        return SegreSymbol(tuple((b,) for b in self.blocks))


def _d(**exprs):
    return exprs


_LAMBDA_PAIRS = "l1 (p12+p34)^2 - l2 (p12-p34)^2"

CASES = {
    spec.key: spec for spec in [
        CaseSpec(
            1, None, ("l1", "l2", "l3", "l4", "l5", "l6"), (1, 1, 1, 1, 1, 1), 4,
            _LAMBDA_PAIRS + " + l3 (p13+p42)^2 - l4 (p13-p42)^2 + l5 (p14+p23)^2 - l6 (p14-p23)^2",
            "(a1 + a2 u3^2 + a3 u2^2) u11 + (a2 + a1 u3^2 + a3 u1^2) u22"
            " + (a3 + a1 u2^2 + a2 u1^2) u33 + 2(alpha u3 - a3 u1 u2) u12"
            " + 2(beta u2 - a2 u1 u3) u13 + 2(gamma u1 - a1 u2 u3) u23",
            _d(a1="l5 - l6", a2="l3 - l4", a3="l1 - l2", alpha="l5 + l6 - l3 - l4",
               beta="l1 + l2 - l5 - l6", gamma="l3 + l4 - l1 - l2"),
        ),
        CaseSpec(
            2, None, ("l1", "l2", "l3", "l4", "l5"), (1, 1, 1, 1, 2), 4,
            _LAMBDA_PAIRS + " + l3 (p13+p42)^2 - l4 (p13-p42)^2 + 4 l5 p14 p23 + p14^2",
            "(lam u2^2 + mu u3^2 + 1) u11 + (lam u1^2 + mu) u22 + (mu u1^2 + lam) u33"
            " + 2(alpha u3 - lam u1 u2) u12 + 2(beta u2 - mu u1 u3) u13 + 2 gamma u1 u23",
            _d(lam="l1 - l2", mu="l3 - l4", alpha="-l3 - l4 + 2 l5", beta="l1 + l2 - 2 l5",
               gamma="l3 + l4 - l1 - l2"),
        ),
        CaseSpec(
            3, None, ("l1", "l2", "l3", "l4"), (1, 1, 1, 3), 4,
            _LAMBDA_PAIRS + " - l3 (p13-p42)^2 + l4 (p13+p42)^2 + 4 l4 p14 p23 + 2 p14 (p13+p42)",
            "(lam u2^2 + mu u3^2 + 2 u3) u11 + (lam u1^2 + mu) u22 + (mu u1^2 + lam) u33"
            " + 2(mu u3 - lam u1 u2 - 1) u12 + 2(beta u2 - mu u1 u3 - u1) u13 + 2 gamma u1 u23",
            _d(lam="l1 - l2", mu="l4 - l3", beta="l1 + l2 - 2 l4", gamma="l3 + l4 - l1 - l2"),
            note="the mu, l3, l4 sign conventions differ from cases 1 and 2; stored as printed",
        ),
        CaseSpec(
            4, None, ("l1", "l2", "l3", "l4"), (1, 1, 2, 2), 3,
            _LAMBDA_PAIRS + " + 4 l3 p13 p42 + 4 l4 p14 p23 + p13^2 + 4 p23^2",
            "(lam u2^2 + 1) u11 + (lam u1^2 + 4) u22 + lam u33"
            " + 2(alpha u3 - lam u1 u2) u12 + 2 beta u2 u13 + 2 gamma u1 u23",
            _d(lam="l1 - l2", alpha="2 l4 - 2 l3", beta="2 l3 - l1 - l2",
               gamma="l1 + l2 - 2 l4"),
            note="the weight 4 on p23^2 is taken as printed",
        ),
        CaseSpec(
            5, None, ("l1", "l2", "l3"), (1, 1, 4), 1,
            _LAMBDA_PAIRS + " + 4 l3 (p14 p23 + p42 p13) + 2 p14 p42 + 4 p13^2",
            "lam u11 + (lam u3^2 + 4) u22 + (lam u2^2 - 2 u1) u33"
            " + 2 alpha u3 u12 + 2(u3 - alpha u2) u13 - 2 lam u2 u3 u23",
            _d(lam="l1 - l2", alpha="2 l3 - l1 - l2"),
        ),
        CaseSpec(
            6, None, ("l1", "l2", "l3"), (1, 2, 3), 1,
            "-l1 (p12-p34)^2 + 4 l2 p13 p42 + 4 p13^2 + l3 (4 p14 p23 + (p12+p34)^2)"
            " + 2 p14 (p12+p34)",
            "lam u11 + (lam u3^2 + 4) u22 + (lam u2^2 + 2 u2) u33 + 2 alpha u3 u12"
            " + 2(1 - lam u2) u13 + 2(gamma u1 - lam u2 u3 - u3) u23",
            _d(lam="l3 - l1", alpha="2 l2 - l1 - l3", gamma="2 l3 - 2 l2"),
        ),
        CaseSpec(
            7, 1, ("l1", "l2", "l3"), (2, 2, 2), 1,
            "2 l1 p12 p34 + 2 l2 p13 p42 + 2 l3 p14 p23 + p12^2 + p13^2 + p14^2",
            "u11 + u22 + u33 + 2 alpha u3 u12 + 2 beta u2 u13 + 2 gamma u1 u23",
            _d(alpha="l2 - l1", beta="l1 - l3", gamma="l3 - l2"),
        ),
        CaseSpec(
            7, 2, ("l1", "l2", "l3"), (2, 2, 2), 1,
            "2 l1 p12 p34 + 2 l2 p13 p42 + 2 l3 p14 p23 + p23^2 + p24^2 + p34^2",
            "(u2^2 + u3^2) u11 + (u1^2 + u3^2) u22 + (u1^2 + u2^2) u33"
            " + 2(alpha u3 - u1 u2) u12 + 2(beta u2 - u1 u3) u13 + 2(gamma u1 - u2 u3) u23",
            _d(alpha="l2 - l1", beta="l1 - l3", gamma="l3 - l2"),
        ),
        CaseSpec(
            8, None, ("l1", "l2"), (1, 5), 1,
            "-l1 (p12-p34)^2 + l2 (4 p14 p23 + 4 p13 p42 + (p12+p34)^2) + 4 p14 p42"
            " + 2 p13 (p12+p34)",
            "lam u11 + (lam u3^2 - 2 u3) u22 + (lam u2^2 - 4 u1) u33 + 2(lam u3 + 1) u12"
            " + 2(2 u3 - lam u2) u13 + 2(u2 - lam u2 u3) u23",
            _d(lam="l2 - l1"),
        ),
        CaseSpec(
            9, 1, ("l1", "l2"), (2, 4), 1,
            "2 l1 p12 p34 + p12^2 + 2 l2 (p14 p23 + p13 p42) + 2 p14 p42 + p13^2",
            "u11 + u22 - 2 u1 u33 + 2 lam u3 u12 + 2(u3 - lam u2) u13",
            _d(lam="l2 - l1"),
        ),
        CaseSpec(
            9, 2, ("l1", "l2"), (2, 4), 3,
            "2 l1 p12 p34 + p34^2 + 2 l2 (p14 p23 + p13 p42) + 2 p13 p23 + p42^2",
            "u3^2 u22 + (1 + u2^2) u33 + 2 u12 + 2 lam u2 u13 - 2(lam u1 + u2 u3) u23",
            _d(lam="l2 - l1"),
        ),
        CaseSpec(
            10, None, ("l1", "l2"), (3, 3), 1,
            "l1 (4 p31 p24 + (p12+p34)^2) + 2 p13 (p12+p34) + l2 (4 p23 p14 - (p12-p34)^2)"
            " + 2 p14 (p12-p34)",
            "lam u11 + (lam u3^2 - 2 u3) u22 + (lam u2^2 - 2 u2) u33 + 2(lam u3 + 1) u12"
            " + 2(lam u2 + 1) u13 - 2(2 lam u1 + lam u2 u3 - u2 - u3) u23",
            _d(lam="l1 - l2"),
        ),
        CaseSpec(
            11, 1, ("l",), (6,), 1,
            "2 l (p23 p14 + p31 p24 + p12 p34) + 2 p14 p34 + 2 p12 p42 + p13^2",
            "2 u3 u11 + u22 + 2 u2 u33 - 2 u1 u13 - 2 u3 u23",
        ),
        CaseSpec(
            11, 2, ("l",), (6,), 1,
            "2 l (p23 p14 + p31 p24 + p12 p34) + 2 p23 p12 + 2 p34 p13 + p42^2",
            "(u3^2 - 2 u2) u11 - 2 u3 u22 + u1^2 u33 + 2 u1 u12 - 2 u1 u3 u13 + 2 u2 u23",
        ),
    ]
}

SUBCASES = {1: None, 2: None, 3: None, 4: None, 5: None, 6: None, 7: (1, 2), 8: None,
            9: (1, 2), 10: None, 11: (1, 2)}


def _spec(case_id, subcase=None):
    if case_id not in SUBCASES:
        raise BadParams(f"unknown case {case_id!r}; cases are 1..11")
    subs = SUBCASES[case_id]
    if subs is None:
        if subcase not in (None,):
            raise BadParams(f"case {case_id} has no subcases")
        return CASES[str(case_id)]
    if subcase not in subs:
        raise BadParams(f"case {case_id} needs subcase 1 or 2")
    return CASES[f"{case_id}.{subcase}"]


# ---------------------------------------------------------------------------
# text -> exact objects


def complex_from_text(text, values=None):
    """Quadratic complex from an equation in p_ij (any index order) and parameters."""
    values = {k: rat(v) for k, v in (values or {}).items()}
    poly = parse_poly(text)
    mapping = {}
    for v in poly.vars:
        if len(v) == 3 and v[0] == "p" and v[1:].isdigit():
            mapping[v] = pl(v)
        elif v in values:
            mapping[v] = values[v]
        else:
            raise BadParams(f"no value for parameter {v!r}")
    return QuadraticComplex(form_matrix(poly.subs(mapping, BASIS)))


def structure_from_text(text, values=None, chart=4):
    """Conformal structure from a printed wave equation with parameter values."""
    values = {k: rat(v) for k, v in (values or {}).items()}
    poly = parse_poly(text)
    mapping = {}
    for v in poly.vars:
        if v in JETS:
            continue
        if v not in values:
            raise BadParams(f"no value for parameter {v!r}")
        mapping[v] = values[v]
    return ConformalStructure.from_pde(poly.subs(mapping, JETS), chart)


def _derived_values(spec, params):
    ring = tuple(spec.labels)
    out = {}
    for name, expr in spec.derived.items():
        out[name] = parse_poly(expr, ring).eval(params)
    return out


# ---------------------------------------------------------------------------
# entries


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    case_id: int | None
    subcase: int | None
    params: dict
    chart: int
    Q: QuadraticComplex
    F: ConformalStructure
    expected_symbol: SegreSymbol
    pde_text: str = ""
    derived: dict = field(default_factory=dict)
    note: str = ""

    def printed_structure(self):
        """Structure read off the printed wave equation."""
        return structure_from_text(self.pde_text, {**self.params, **self.derived}, self.chart)

    def render(self):
        return pde_render(self.F)

    def to_dict(self):
        return {
            "label": self.label,
            "case": self.case_id,
            "subcase": self.subcase,
            "params": {k: rat_str(v) for k, v in self.params.items()},
            "chart": self.chart,
            "complex": self.Q.to_dict(),
            "structure": self.F.to_dict(),
            "pde": self.render(),
            "expected_symbol": str(self.expected_symbol),
        }


def expected_symbol(spec, params):
    """Refined symbol from coincidences among the block labels."""
    groups = {}
    for name, size in zip(spec.labels, spec.blocks):
        groups.setdefault(params[name], []).append(size)
    return SegreSymbol(tuple(tuple(g) for g in groups.values()))


def random_params(case_id, subcase=None, seed=None, bound=50):
    """Distinct random rational block labels for a generic member of the case."""
    spec = _spec(case_id, subcase)
    rng = random.Random(default_seed() if seed is None else seed)
    while True:
        vals = [Fraction(rng.randint(-bound, bound), rng.randint(1, 5)) for _ in spec.labels]
        if len(set(vals)) == len(vals):
            return dict(zip(spec.labels, vals))


def catalog_complex(case_id, params=None, subcase=None):
    """Normal form of the given case; ``params`` maps block labels to rationals."""
    spec = _spec(case_id, subcase)
    if params is None:
        params = random_params(case_id, subcase)
    try:
        params = {k: rat(v) for k, v in params.items()}
    except (TypeError, ValueError) as exc:
        raise BadParams(str(exc)) from exc
    missing = [k for k in spec.labels if k not in params]
    extra = [k for k in params if k not in spec.labels]
    if missing or extra:
        raise BadParams(f"case {spec.key} takes parameters {list(spec.labels)}; "
                        f"missing {missing}, unexpected {extra}")
    Q = complex_from_text(spec.complex_text, params)
    F = monge_form(Q, spec.chart)
    return CatalogEntry(
        label=spec.key, case_id=spec.case_id, subcase=spec.subcase, params=params,
        chart=spec.chart, Q=Q, F=F, expected_symbol=expected_symbol(spec, params),
        pde_text=spec.pde_text, derived=_derived_values(spec, params), note=spec.note,
    )


def all_case_keys():
    return list(CASES)


# ---------------------------------------------------------------------------
# conformally flat and integrable normal forms


@dataclass(frozen=True)
class FlatSpec:
    label: str
    case_id: int
    pde_text: str
    complex_text: str | None = None
    params: dict = field(default_factory=dict)


TETRAHEDRAL_ABC = (0, 1, 2)


def _tetra_params(a, b, c):
    return {"alpha": rat(a) - rat(b), "beta": rat(b) - rat(c), "gamma": rat(c) - rat(a)}


FLAT = [
    FlatSpec("[111(111)]*", 1,
             "(1 - 2 u2 u3) u11 + (1 - 2 u1 u3) u22 + 2(u1 - u2) u33 + 2(1 + u1 u3 + u2 u3) u12"
             " + 2(u1 u2 - u3 - u2^2) u13 + 2(u1 u2 + u3 - u1^2) u23",
             "(p24 + p14)^2 + 2 (p12 + p34)(p23 + p31)"),
    FlatSpec("[(111)(111)]", 1,
             "(u2^2 + u3^2 - 1) u11 + (u1^2 + u3^2 - 1) u22 + (u1^2 + u2^2 - 1) u33"
             " - 2 u1 u2 u12 - 2 u1 u3 u13 - 2 u2 u3 u23",
             "p12^2 + p13^2 + p23^2 - p14^2 - p24^2 - p34^2"),
    FlatSpec("[(11)(11)(11)]", 1, "alpha u3 u12 + beta u2 u13 + gamma u1 u23",
             params=_tetra_params(*TETRAHEDRAL_ABC)),
    FlatSpec("[(11)(112)]", 2, "u11 + u1 u23 - u2 u13"),
    FlatSpec("[(11)(22)]", 4, "u12 + u2 u13 - u1 u23"),
    FlatSpec("[(114)]", 5, "u22 + u1 u33 - u3 u13"),
    FlatSpec("[(123)]", 6, "u22 + u13 + u2 u33 - u3 u23"),
    FlatSpec("[(222)]", 7, "u11 + u22 + u33"),
    FlatSpec("[(24)]", 9, "u3^2 u22 + (1 + u2^2) u33 + 2 u12 - 2 u2 u3 u23"),
    FlatSpec("[(33)]", 10, "u13 + u1 u22 - u2 u12"),
]


def flat_entry(label, params=None):
    """Entry of the conformally flat list; the tetrahedral form takes alpha, beta, gamma."""
    from .degeneracy import reconstruct_complex

    spec = next((s for s in FLAT if s.label == label), None)
    if spec is None:
        raise BadParams(f"unknown flat normal form {label!r}")
    values = dict(spec.params)
    if params:
        values.update({k: rat(v) for k, v in params.items()})
        if set(values) != set(spec.params):
            raise BadParams(f"{label} takes parameters {sorted(spec.params)}")
    if label == "[(11)(11)(11)]":
        if sum(values.values()) != 0:
            raise BadParams("alpha + beta + gamma must vanish")
        if len({values["alpha"], values["beta"], values["gamma"]} - {0}) == 0:
            raise BadParams("alpha, beta, gamma all zero gives a vanishing equation")
    F = structure_from_text(spec.pde_text, values, 4)
    Q = complex_from_text(spec.complex_text) if spec.complex_text else reconstruct_complex(F)
    return CatalogEntry(
        label=label, case_id=spec.case_id, subcase=None, params=values, chart=4, Q=Q, F=F,
        expected_symbol=SegreSymbol.parse(label), pde_text=spec.pde_text,
    )


def flat_catalog():
    return [flat_entry(s.label) for s in FLAT]


def _field(c1, c2, c3, den=None):
    return JetVectorField((c1, c2, c3), den)


def tetrahedral_lax_pair(a, b, c):
    """Pair for alpha = a - b, beta = b - c, gamma = c - a with denominators kept."""
    a, b, c = rat(a), rat(b), rat(c)
    X = _field(f"-(l - {b}) u3", 0, f"(l - {c}) u1", f"(l - {c}) u1")
    Y = _field(f"-(l - {b}) u2", f"(l - {a}) u1", 0, f"(l - {a}) u1")
    return LaxPair(X, Y)


LAX = {
    "[(11)(112)]": lambda: LaxPair(_field(1, 0, "-l u1"), _field(0, 1, "l^2 u1 - l u2")),
    "[(11)(22)]": lambda: LaxPair(_field("l", 0, "-u1"), _field(0, "l - 1", "-u2")),
    "[(123)]": lambda: LaxPair(_field(0, 1, "l - u3"), _field(1, 0, "l^2 - l u3 + u2")),
    "[(33)]": lambda: LaxPair(_field("l", "-u1", 0), _field(0, "l - u2", 1)),
}

INTEGRABLE = ["[(11)(11)(11)]", "[(11)(112)]", "[(11)(22)]", "[(123)]", "[(33)]"]
LINEARISABLE = ["[(222)]"]


def lax_pair(label):
    if label == "[(11)(11)(11)]":
        return tetrahedral_lax_pair(*TETRAHEDRAL_ABC)
    if label in LAX:
        return LAX[label]()
    raise BadParams(f"no Lax pair for {label!r}")


def integrable_catalog():
    """The five non-linearisable integrable normal forms with their Lax pairs."""
    return [(flat_entry(label), lax_pair(label)) for label in INTEGRABLE]


def refined_strata():
    """Representatives of every refined symbol used in the tests."""
    return {
        "[(11)(11)(11)]": catalog_complex(1, {"l1": 1, "l2": 1, "l3": 3, "l4": 3, "l5": -4, "l6": -4}),
        "[(111)(111)]": flat_entry("[(111)(111)]"),
        "[111(111)]*": flat_entry("[111(111)]*"),
        "[(11)(112)]": catalog_complex(2, {"l1": 2, "l2": 2, "l3": -1, "l4": -1, "l5": -1}),
        "[(11)(22)]": catalog_complex(4, {"l1": 3, "l2": 3, "l3": -1, "l4": -1}),
        "[(114)]": catalog_complex(5, {"l1": 2, "l2": 2, "l3": 2}),
        "[(123)]": catalog_complex(6, {"l1": 5, "l2": 5, "l3": 5}),
        "[(222)]": catalog_complex(7, {"l1": 1, "l2": 1, "l3": 1}, subcase=1),
        "[(24)]": catalog_complex(9, {"l1": 3, "l2": 3}, subcase=2),
        "[(33)]": catalog_complex(10, {"l1": -2, "l2": -2}),
    }
