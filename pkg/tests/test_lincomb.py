from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from lwcqsym.errors import ParseError
from lwcqsym.lincomb import LinComb, format_mbar, parse_mbar

from conftest import lwc_st

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
combs = st.dictionaries(lwc_st(max_size=3, max_len=3), coeffs, max_size=5).map(LinComb)


def test_zero_coefficients_dropped():
    x = LinComb({(1,): 0, (2,): 3})
    assert list(x) == [(2,)]
    y = x - LinComb.monomial((2,), 3)
    assert y == 0 and not y and len(y) == 0


def test_missing_key_is_zero():
    assert LinComb()[(5,)] == 0


@given(combs, combs, combs)
def test_module_axioms(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x + LinComb() == x
    assert x - x == 0


@given(combs, coeffs, coeffs)
def test_scalar_action(x, a, b):
    assert (x * a) * b == x * (a * b)
    assert x * (a + b) == x * a + x * b
    assert x * 1 == x and 0 * x == 0


@given(combs)
def test_json_roundtrip(x):
    assert LinComb.from_json(x.to_json()) == x


def test_json_shape_and_order():
    x = LinComb({(2,): 1, (1, 1): 2, (0, 1): Fraction(-1, 3)})
    obj = x.to_json_obj()
    assert [d["key"] for d in obj] == ["(0,1)", "(2)", "(1,1)"]
    assert obj[0] == {"coeff": "-1/3", "key": "(0,1)", "tag": "M"}


def test_format_text():
    assert LinComb({(1, 1): 2, (2,): 1}).format() == "2·(1,1) + (2)"
    assert LinComb({(1,): -1}).format() == "-(1)"
    assert LinComb().format() == "0"


def test_mbar_text():
    assert format_mbar((0, 1, 1)) == "(0;(1,1))"
    assert parse_mbar("0;(1)") == (0, 1)
    assert parse_mbar("(2;())") == (2,)
    x = LinComb({(0, 1, 1): 2, (0, 2): 1}, tag="Mbar")
    assert LinComb.from_json(x.to_json()) == x


def test_bad_json():
    with pytest.raises(ParseError):
        LinComb.from_json('[{"coeff": "1/1", "key": "(1,0)", "tag": "M"}]')
    with pytest.raises(ParseError):
        LinComb.from_json('[{"coeff": "1/1", "key": "(1)", "tag": "M"}, {"coeff": "1/1", "key": "(1)", "tag": "F"}]')
