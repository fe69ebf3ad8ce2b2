import pytest
from hypothesis import given, strategies as st

from padicfeas.core.sparse import (InexactDivisionError, PolyParseError, SparsePoly,
                                   parse_poly, parse_poly_json, size_f, size_p,
                                   sparse_div_exact, sparse_mul)

from conftest import sparse_polys


def P(text):
    return parse_poly(text)


def test_size_examples():
    assert size_f(P("x^2; -17")) == 12
    assert size_f(P("1")) == 4
    assert size_p(P("1"), 2) == 6


def test_mul_and_exact_division_examples():
    assert sparse_mul(P("x; -1"), P("x; 1")) == P("x^2; -1")
    assert sparse_div_exact(SparsePoly.x_pow_minus_one(30),
                            SparsePoly.x_pow_minus_one(15)) == P("x^15; 1")


def test_inexact_division_reports_remainder():
    with pytest.raises(InexactDivisionError) as info:
        sparse_div_exact(P("x^2; -1"), P("x; -2"))
    assert info.value.remainder == P("3")
    assert info.value.remainder_degree == 0


@given(sparse_polys(), sparse_polys())
def test_product_division_round_trip(f, g):
    assert sparse_div_exact(f * g, g) == f
    assert sparse_div_exact(f * g, f) == g


@given(sparse_polys(), st.integers(-30, 30), st.integers(2, 10 ** 6))
def test_eval_mod_matches_exact_evaluation(f, x, m):
    assert f.eval_mod(x, m) == f(x) % m


@given(sparse_polys())
def test_text_and_json_round_trip(f):
    assert parse_poly(f.to_text()) == f
    assert parse_poly_json(f.to_json()) == f


def test_parser_forms():
    assert P("-17*x^0; 1*x^2") == P("x^2; -17")
    assert P("-x; x^3; 5; 2*x") == SparsePoly.from_dict({0: 5, 1: 1, 3: 1})
    assert P('[["3", "0"], ["1", "2"]]') == P("3; x^2")
    assert P("x; -x").is_zero


@pytest.mark.parametrize("text,pos", [("1*x^(", 0), ("x^2;;1", 4), ("3; 2*y", 2)])
def test_parser_reports_position(text, pos):
    with pytest.raises(PolyParseError) as info:
        parse_poly(text)
    assert info.value.position == pos


def test_reciprocal_and_derivative():
    f = P("3; 5*x^2; x^7")
    assert f.reciprocal() == P("3*x^7; 5*x^5; 1")
    assert f.derivative() == P("10*x; 7*x^6")
    assert f.primitive() == f and P("6; 4*x").primitive() == P("3; 2*x")
