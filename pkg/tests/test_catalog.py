from fractions import Fraction

import pytest

from lcpde.catalog import (
    CASES, FLAT, INTEGRABLE, LINEARISABLE, catalog_complex, flat_entry, lax_pair, random_params,
    refined_strata,
)
from lcpde.complexcore import pde_render
from lcpde.exact import MPoly
from lcpde.laxpair import JET_VARS
from lcpde.errors import BadParams
from lcpde.segre import segre_symbol


@pytest.mark.parametrize("key", list(CASES))
def test_printed_equations_match(key):
    spec = CASES[key]
    for s in range(3):
        e = catalog_complex(spec.case_id, random_params(spec.case_id, spec.subcase, seed=s), spec.subcase)
        assert e.F == e.printed_structure()


def test_case1_coefficients():
    lam = {f"l{i}": Fraction(i * i, 3) for i in range(1, 7)}
    e = catalog_complex(1, lam)
    assert e.derived["a1"] == lam["l5"] - lam["l6"]
    assert e.derived["alpha"] == lam["l5"] + lam["l6"] - lam["l3"] - lam["l4"]
    assert e.derived["alpha"] + e.derived["beta"] + e.derived["gamma"] == 0


def test_case7_coefficients():
    lam = {"l1": 2, "l2": 7, "l3": -1}
    e = catalog_complex(7, lam, subcase=1)
    assert e.derived == {"alpha": 5, "beta": 3, "gamma": -8}


def test_case10_equal_labels_equation():
    # chart 1 form; the canonical u_13 + u_1 u_22 - u_2 u_12 needs a further change of variables
    e = catalog_complex(10, {"l1": 4, "l2": 4})
    assert e.expected_symbol == segre_symbol(flat_entry("[(33)]").Q)


def test_flat_entries_render():
    assert pde_render(flat_entry("[(33)]").F) == "u_1 u_22 - u_2 u_12 + u_13 = 0"
    assert pde_render(flat_entry("[(222)]").F) == "u_11 + u_22 + u_33 = 0"
    e = flat_entry("[(11)(11)(11)]")
    assert sum(e.params.values()) == 0
    assert (e.params["alpha"], e.params["beta"], e.params["gamma"]) == (-1, -1, 2)


def test_counts():
    assert len({s.case_id for s in CASES.values()}) == 11
    assert len(FLAT) == 10
    assert len(INTEGRABLE) + len(LINEARISABLE) == 6


def test_refined_strata_symbols():
    for label, e in refined_strata().items():
        assert str(segre_symbol(e.Q)) == label == str(e.expected_symbol)


def test_bad_parameters():
    with pytest.raises(BadParams):
        catalog_complex(1, {"l1": 1})
    with pytest.raises(BadParams):
        catalog_complex(12)
    with pytest.raises(BadParams):
        catalog_complex(7)
    with pytest.raises(BadParams):
        flat_entry("[(11)(11)(11)]", {"alpha": 1, "beta": 1, "gamma": 1})
    with pytest.raises(BadParams):
        lax_pair("[(24)]")


def test_lax_pair_printed_forms():
    lp = lax_pair("[(11)(112)]")
    x1, x2, x3 = lp.X.coeffs
    assert x1 == 1 and x2.is_zero() and x3 == MPoly.parse("-l*u1", JET_VARS)
    assert lp.Y.coeffs[2] == MPoly.parse("l^2*u1 - l*u2", JET_VARS)
