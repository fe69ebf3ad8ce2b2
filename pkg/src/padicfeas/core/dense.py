"""Dense polynomial helpers over Z, Q and F_p.

Dense coefficient lists are stored low-to-high (``c[i]`` multiplies x**i) and
are always trimmed so the last entry is nonzero; ``[]`` is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import flint

from .sparse import SparsePoly


def trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def content(a: list) -> int:
    g = 0
    for x in a:
        g = gcd(g, int(x))
    return g


def primitive_part(a: list) -> list[int]:
    """Integer primitive part with positive leading coefficient.

    Accepts Fractions: denominators are cleared first.
    """
    a = trim(list(a))
    if not a:
        return []
    den = 1
    for x in a:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in a]
    g = content(ints)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def _fz(a: list[int]) -> "flint.fmpz_poly":
    return flint.fmpz_poly([int(x) for x in a])


def _from_fz(f) -> list[int]:
    return [int(c) for c in f.coeffs()]


def dense_mul(a: list[int], b: list[int]) -> list[int]:
    return trim(_from_fz(_fz(a) * _fz(b)))


def exact_quotient_z(a: list[int], b: list[int]) -> list[int]:
    """a / b in Z[x], verified exact."""
    q, r = divmod(_fz(a), _fz(b))
    if r != 0 or q * _fz(b) != _fz(a):
        raise ArithmeticError("dense division is not exact")
    return _from_fz(q)


def lcm_over_z(a: list[int], b: list[int]) -> list[int]:
    """Primitive lcm with positive leading coefficient (product / gcd)."""
    fa, fb = _fz(primitive_part(a)), _fz(primitive_part(b))
    return primitive_part(_from_fz((fa * fb) // fa.gcd(fb)))


def taylor_shift(a: list[int], r: int) -> list[int]:
    """Coefficients of a(x + r), same length as a."""
    c = list(a)
    if r == 0 or len(c) <= 1:
        return c
    out = _from_fz(_fz(c)(flint.fmpz_poly([r, 1])))
    return out + [0] * (len(c) - len(out))


def squarefree_part(a: list[int]) -> list[int]:
    """Primitive squarefree part of an integer polynomial, i.e. a / gcd(a, a')
    normalised to positive leading coefficient."""
    a = trim(list(a))
    if len(a) <= 2:
        return primitive_part(a)
    fa = flint.fmpz_poly(a)
    g = fa.gcd(fa.derivative())
    if g.degree() < 1:
        return primitive_part(a)
    return primitive_part(_from_fz(fa // g))


# --------------------------------------------------------------------------
# F_p[x]
# --------------------------------------------------------------------------


def _trim_mod(c: list[int], p: int) -> list[int]:
    c = [x % p for x in c]
    return trim(c)


@dataclass(frozen=True)
class DensePolyModP:
    """Polynomial over Z/pZ; ``coeffs`` low-to-high in [0, p), trimmed."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_trim_mod(list(self.coeffs), self.p)))

    @classmethod
    def from_sparse(cls, f: SparsePoly, p: int) -> "DensePolyModP":
        return cls(p, tuple(f.to_dense()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "DensePolyModP":
        if not self.coeffs:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return DensePolyModP(self.p, tuple(c * inv for c in self.coeffs))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self):
        return f"{SparsePoly.from_dense(self.coeffs)} (mod {self.p})"


def _divmod_p(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return trim(q), trim(a[:db])


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        _, r = _divmod_p(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def poly_gcd_mod_p(f: DensePolyModP, g: DensePolyModP) -> DensePolyModP:
    """Monic gcd in F_p[x] (Euclidean algorithm)."""
    if f.p != g.p:
        raise ValueError(f"modulus mismatch: {f.p} vs {g.p}")
    if f.is_zero and g.is_zero:
        raise ValueError("gcd of two zero polynomials")
    return DensePolyModP(f.p, tuple(_gcd_mod(list(f.coeffs), list(g.coeffs), f.p)))


def poly_divmod_mod_p(f: DensePolyModP, g: DensePolyModP):
    if f.p != g.p:
        raise ValueError(f"modulus mismatch: {f.p} vs {g.p}")
    q, r = _divmod_p(list(f.coeffs), list(g.coeffs), f.p)
    return DensePolyModP(f.p, tuple(q)), DensePolyModP(f.p, tuple(r))


def roots_mod_p(coeffs: list[int], p: int) -> list[int]:
    """Distinct roots in F_p of an integer polynomial (low-to-high list).

    Delegates to FLINT, which splits the gcd with x^p - x in C.
    """
    f = _trim_mod(list(coeffs), p)
    if not f:
        raise ValueError("polynomial vanishes identically mod p")
    if len(f) == 1:
        return []
    if p < 1 << 62:
        return sorted(int(r) for r, _ in flint.nmod_poly(f, p).roots())
    ctx = flint.fmpz_mod_poly_ctx(p)
    return sorted(int(r) for r, _ in ctx(f).roots())


def bareiss_det(matrix: list[list[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]
