import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from padicfeas.primegen import (FAILURE_MESSAGE, AgpConfig, agp_parameters,
                                agp_prime_search, deterministic_prime_search,
                                first_primes, is_prime, ln_upper, primality, sieve)


def test_sieve_examples():
    assert sieve(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve(2) == [2]
    assert sieve(1) == []
    assert len(sieve(100)) == 25
    assert first_primes(12)[-1] == 37


def test_primality_examples():
    assert is_prime(7)
    verdict = primality(561)
    assert not verdict.prime and verdict.witness == "divisor 3"
    assert primality(2 ** 31 - 1) == primality(2 ** 31 - 1) and is_prime(2 ** 31 - 1)
    assert primality(2 ** 61 - 1).certainty == "deterministic"
    big = primality(2 ** 89 - 1)
    assert big.prime and big.certainty == "probabilistic"
    assert not is_prime((2 ** 61 - 1) * (2 ** 89 - 1))
    assert not is_prime(1) and not is_prime(0)


def test_strong_pseudoprimes_are_caught():
    # 3215031751 is a strong pseudoprime to bases 2, 3, 5 and 7.
    assert not is_prime(3215031751)
    assert not is_prime(3825123056546413051)  # spsp to bases 2..23


@given(st.integers(2, 10 ** 12))
def test_primality_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("M,bound,expected", [(6, 100, 7), (30, 100, 31), (210, 10 ** 4, 211)])
def test_deterministic_search_examples(M, bound, expected):
    assert deterministic_prime_search(M, bound) == expected


PRIMES_TO_1E6 = sieve(10 ** 6)


@given(st.integers(2, 400))
def test_deterministic_search_is_minimal(M):
    got = deterministic_prime_search(M, 10 ** 6)
    ps = [q for q in PRIMES_TO_1E6 if q % M == 1]
    assert got == (ps[0] if ps else None)


def test_deterministic_search_bound():
    assert deterministic_prime_search(30, 30) is None
    with pytest.raises(ValueError):
        deterministic_prime_search(1, 10)


def test_agp_parameters_n3():
    cfg = AgpConfig(n=3)
    prm = agp_parameters(cfg, 2, first_primes(18))
    assert prm["L"] == 6
    assert prm["M_L"] == 53 * 59 * 61
    assert prm["M_i"] == 7 * 11 * 13
    assert (prm["x"] - 2) ** 2 < prm["M_L"] ** 5 <= (prm["x"] - 1) ** 2
    assert prm["K"] == (prm["x"] - 1) // prm["M_i"]
    assert prm["J"] >= math.ceil(2 * math.log(6) * math.log(prm["x"]))


@given(st.fractions(min_value=1, max_value=10 ** 6))
def test_ln_upper_bounds_log(y):
    assert float(ln_upper(y)) >= math.log(y) - 1e-12
    assert float(ln_upper(y)) <= 1.01 * math.log(y) + 0.1


@given(st.integers(0, 10 ** 6))
def test_agp_success_postconditions(seed):
    res = agp_prime_search(AgpConfig(n=2, seed=seed))
    primes = first_primes(24)
    assert res.primes == primes[(res.block_index - 1) * 2:res.block_index * 2]
    if res.success:
        assert is_prime(res.p) and sympy.isprime(res.p)
        assert (res.p - 1) % res.M_i == 0 and res.p == 1 + res.c * res.M_i
        assert 1 <= res.c <= res.K
        assert res.size_bound_holds()
        assert res.message == f"1+{res.c}*{res.primes[0]}*{res.primes[1]} is a prime that works!"


def test_agp_is_reproducible():
    a = agp_prime_search(AgpConfig(n=3, seed=11)).to_json()
    b = agp_prime_search(AgpConfig(n=3, seed=11)).to_json()
    assert a == b


def test_agp_failure_path():
    seed = next(s for s in range(1000)
                if not agp_prime_search(AgpConfig(n=3, seed=s, draws=1)).success)
    res = agp_prime_search(AgpConfig(n=3, seed=seed, draws=1))
    assert res.status == "failure" and res.p is None
    assert res.message == FAILURE_MESSAGE == \
        "I have failed to find a suitable prime. Please forgive me."


def test_agp_config_validation():
    for bad in (dict(n=0), dict(n=2, epsilon=Fraction(1, 2)), dict(n=2, x0=0)):
        with pytest.raises(ValueError):
            AgpConfig(**bad)
    assert agp_prime_search(AgpConfig(n=1, seed=3), rng=random.Random(3)).L == 6
