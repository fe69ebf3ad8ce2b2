from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from padicfeas.core.arith import (INFINITY, bitlen, ext_gcd, gcd_free_basis,
                                  isqrt_ceil, ord_p, pow_mod, rational_mod, unit_part)

from conftest import SMALL_PRIMES

nonzero = st.integers(-10 ** 6, 10 ** 6).filter(bool)


def test_valuation_examples():
    assert ord_p(243, 3) == 5
    assert ord_p(Fraction(1, 243), 3) == -5
    assert ord_p(0, 7) is INFINITY
    assert ord_p(Fraction(0), 7) is INFINITY


def test_infinity_ordering():
    assert INFINITY > 10 ** 100 and not INFINITY < 5
    assert INFINITY + 3 is INFINITY
    assert str(INFINITY) == "Infinity"


@given(nonzero, nonzero, st.sampled_from(SMALL_PRIMES))
def test_ord_is_additive(a, b, p):
    assert ord_p(a * b, p) == ord_p(a, p) + ord_p(b, p)
    assert ord_p(Fraction(a, b), p) == ord_p(a, p) - ord_p(b, p)


@given(nonzero, st.integers(1, 50), st.sampled_from(SMALL_PRIMES))
def test_unit_part_strips_valuation(a, b, p):
    u = unit_part(Fraction(a, b), p)
    assert ord_p(u, p) == 0
    assert u * Fraction(p) ** ord_p(Fraction(a, b), p) == Fraction(a, b)


def test_pow_mod_examples():
    assert pow_mod(5, 0, 7) == 1
    assert pow_mod(2, 10, 1000) == 24
    assert pow_mod(3, 100, 101) == 1


@given(st.integers(0, 10 ** 4), st.integers(0, 60), st.integers(1, 10 ** 4))
def test_pow_mod_matches_repeated_multiplication(a, e, m):
    naive = 1 % m
    for _ in range(e):
        naive = naive * a % m
    assert pow_mod(a, e, m) == naive


@pytest.mark.parametrize("a,b,g", [(1, 2, 1), (11, 17, 1), (12, 18, 6)])
def test_ext_gcd_examples(a, b, g):
    gg, A, B = ext_gcd(a, b)
    assert gg == g and A * a + B * b == g


@given(st.integers(-10 ** 9, 10 ** 9), st.integers(-10 ** 9, 10 ** 9))
def test_ext_gcd_bezout(a, b):
    if a == b == 0:
        with pytest.raises(ValueError):
            ext_gcd(a, b)
        return
    g, A, B = ext_gcd(a, b)
    assert A * a + B * b == g >= 0
    if g:
        assert a % g == 0 and b % g == 0


def test_gcd_free_basis_examples():
    assert gcd_free_basis([12, 18]) == ([2, 3], [[2, 1], [1, 2]])
    assert gcd_free_basis([7]) == ([7], [[1]])
    basis, vecs = gcd_free_basis([6, 10, 15])
    assert basis == [2, 3, 5]
    assert vecs == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]


@given(st.lists(nonzero, min_size=1, max_size=6))
def test_gcd_free_basis_reconstructs_inputs(values):
    basis, vecs = gcd_free_basis(values)
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            assert gcd(a, b) == 1
    for v, vec in zip(values, vecs):
        assert prod(b ** e for b, e in zip(basis, vec)) == abs(v)


def test_rational_mod_and_bitlen():
    assert rational_mod(Fraction(1, 3), 8) == 3
    with pytest.raises(ValueError):
        rational_mod(Fraction(1, 2), 8)
    assert bitlen(0) == 0 and bitlen(19) == 5
    assert [isqrt_ceil(n) for n in (0, 1, 2, 4, 5, 16, 17)] == [0, 1, 2, 2, 3, 4, 5]
