"""Exact integer arithmetic: p-adic valuations, modular powers, Bezout
coefficients and gcd-free bases.

Nothing here touches floating point.  Rationals are :class:`fractions.Fraction`
(always reduced, positive denominator) and integers are plain ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence, Union

Rational = Union[int, Fraction]


class _Infinity:
    """Valuation of zero.  Compares above every integer and absorbs addition."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinity"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("padicfeas.Infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def _check_prime_arg(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"p must be an integer >= 2, got {p!r}")


def ord_int(n: int, p: int):
    """Largest k with p**k | n; INFINITY for n == 0."""
    _check_prime_arg(p)
    if n == 0:
        return INFINITY
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    k = 0
    # Strip p**(2**j) blocks first so huge valuations stay cheap.
    powers = [p]
    while n % powers[-1] == 0:
        n //= powers[-1]
        k += 1 << (len(powers) - 1)
        powers.append(powers[-1] * powers[-1])
    for j in range(len(powers) - 2, -1, -1):
        if n % powers[j] == 0:
            n //= powers[j]
            k += 1 << j
    return k


def ord_p(x: Rational, p: int):
    """p-adic valuation of an integer or rational; INFINITY for zero.

    The primality of ``p`` is the caller's responsibility.

    >>> ord_p(243, 3), ord_p(Fraction(1, 243), 3)
    (5, -5)
    """
    if isinstance(x, Fraction):
        if x == 0:
            return INFINITY
        return ord_int(x.numerator, p) - ord_int(x.denominator, p)
    return ord_int(x, p)


def unit_part(x: Rational, p: int) -> Fraction:
    """x / p**ord_p(x) for nonzero x."""
    v = ord_p(x, p)
    if v is INFINITY:
        raise ValueError("zero has no unit part")
    x = Fraction(x)
    return x / Fraction(p) ** v


def pow_mod(a: int, e: int, modulus: int) -> int:
    """a**e mod modulus, result in [0, modulus)."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return pow(a, e, modulus)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, A, B) with g = gcd(a, b) > 0 and A*a + B*b = g."""
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def rational_mod(x: Rational, modulus: int) -> int:
    """Image of a rational with denominator coprime to ``modulus``."""
    x = Fraction(x)
    den = x.denominator % modulus
    if gcd(den, modulus) != 1:
        raise ValueError(f"denominator of {x} is not invertible mod {modulus}")
    if modulus == 1:
        return 0
    return x.numerator * pow(den, -1, modulus) % modulus


def gcd_free_basis(values: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Pairwise-coprime basis for the absolute values of ``values``.

    Works by gcd refinement only, so it never factors anything.  Returns the
    basis (ascending, every element > 1) and, for each input, its exponent
    vector over the basis; each input equals +-prod(basis[j]**e[j]).
    """
    if any(v == 0 for v in values):
        raise ValueError("gcd_free_basis needs nonzero inputs")
    work = sorted({abs(v) for v in values if abs(v) > 1})
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                a, b = work[i], work[j]
                g = gcd(a, b)
                if g == 1:
                    continue
                pieces = {a // g, g, b // g}
                rest = [w for k, w in enumerate(work) if k not in (i, j)]
                work = sorted(set(rest) | {q for q in pieces if q > 1})
                changed = True
                break
            if changed:
                break
    vectors = []
    for v in values:
        v = abs(v)
        vec = []
        for b in work:
            e = 0
            while v % b == 0:
                v //= b
                e += 1
            vec.append(e)
        if v != 1:  # pragma: no cover - refinement invariant
            raise AssertionError("gcd-free basis failed to cover an input")
        vectors.append(vec)
    return work, vectors


def bitlen(x: int) -> int:
    """ceil(log2(x + 1)) for x >= 0, i.e. the binary length of x."""
    if x < 0:
        raise ValueError("bitlen of a negative number")
    return x.bit_length()


def isqrt_ceil(n: int) -> int:
    from math import isqrt

    if n <= 0:
        return 0
    r = isqrt(n)
    return r if r * r == n else r + 1
