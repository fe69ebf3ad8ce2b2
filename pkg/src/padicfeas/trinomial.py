"""Trinomials ``c1 + c2 x^a2 + c3 x^a3`` over Q_p.

When the three valuation points are not collinear and p divides none of
``a2, a3, a3 - a2``, every Q_p root comes from a lower binomial, so the root
count is a sum of binomial counts.  Outside those hypotheses the solver
answers :class:`Deferred`.  The degenerate case (a double root in C_p, with
``gcd(a2, a3) = 1``) always has a rational root, built from a null vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .binomial import binomial_nonzero_root_count
from .core.arith import ext_gcd, gcd_free_basis
from .core.sparse import SparsePoly
from .newton import build_polygon, is_collinear


class InconsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class TrinomialInstance:
    c1: int
    c2: int
    c3: int
    a2: int
    a3: int
    p: int
    zero_root: bool = False

    @classmethod
    def from_poly(cls, f: SparsePoly, p: int) -> "TrinomialInstance":
        if len(f) != 3:
            raise ValueError(f"trinomial solver needs exactly 3 terms, got {len(f)}")
        (a1, c1), (a2, c2), (a3, c3) = f.terms
        return cls(c1, c2, c3, a2 - a1, a3 - a1, p, a1 > 0)

    @property
    def poly(self) -> SparsePoly:
        return SparsePoly(((0, self.c1), (self.a2, self.c2), (self.a3, self.c3)))

    @property
    def non_collinear(self) -> bool:
        return not is_collinear(self.poly, self.p)

    @property
    def p_ok(self) -> bool:
        p = self.p
        return all(x % p for x in (self.a2, self.a3, self.a3 - self.a2))


@dataclass(frozen=True)
class TrinomialResult:
    feasible: bool
    root_count: int
    method: str = "trinomial-newton"
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Deferred:
    reason: str
    non_collinear: bool
    p_ok: bool


def _side_count(g: SparsePoly, p: int, min_v: int) -> tuple[int, list]:
    """Nonzero roots of g in Q_p of valuation >= min_v, via lower binomials."""
    total, used = 0, []
    coeffs = g.as_dict()
    for edge in build_polygon(g, p).lower_edges:
        v = edge.inner_normal_v
        if v < min_v:
            continue
        i, j = edge.left[0], edge.right[0]
        binom = SparsePoly(((i, coeffs[i]), (j, coeffs[j])))
        n = binomial_nonzero_root_count(binom, p) if v.denominator == 1 else 0
        total += n
        used.append((str(binom), str(v), n))
    return total, used


def decide_trinomial(f: SparsePoly, p: int) -> TrinomialResult | Deferred:
    """Feasibility and exact Q_p root count, or Deferred off-hypothesis."""
    inst = TrinomialInstance.from_poly(f, p)
    nc, pok = inst.non_collinear, inst.p_ok
    if not (nc and pok):
        why = []
        if not nc:
            why.append("collinear valuation points")
        if not pok:
            why.append("p divides an exponent difference")
        return Deferred("; ".join(why), nc, pok)
    g = inst.poly
    # Z_p roots of g, then inverses of the roots of the reciprocal with
    # positive valuation: together these are all nonzero Q_p roots.
    n_int, used_f = _side_count(g, p, 0)
    n_rec, used_r = _side_count(g.reciprocal(), p, 1)
    count = n_int + n_rec + (1 if inst.zero_root else 0)
    if discriminant_vanishes(inst.c1, inst.c2, inst.c3, inst.a2, inst.a3):
        raise InconsistencyError("double root found under the simple-root hypotheses")
    return TrinomialResult(count > 0, count, details={
        "integral_side": used_f, "reciprocal_side": used_r,
        "zero_root": inst.zero_root,
    })


_FILTER_PRIME = (1 << 61) - 1


def _delta_terms(c1, c2, c3, a2, a3):
    """Both products of the degeneracy test as (sign, [(base, exponent)])."""
    if 0 in (c1, c2, c3):
        raise ValueError("coefficients must be nonzero")
    if not 0 < a2 < a3:
        raise ValueError("need 0 < a2 < a3")
    b = a3 - a2
    left = ((-1 if c2 < 0 and a3 % 2 else 1), [(b, b), (a2, a2), (c2, a3)])
    sign_r = -1 if a3 % 2 else 1
    if c1 < 0 and b % 2:
        sign_r = -sign_r
    if c3 < 0 and a2 % 2:
        sign_r = -sign_r
    right = (sign_r, [(a3, a3), (c1, b), (c3, a2)])
    return left, right


def discriminant_vanishes(c1: int, c2: int, c3: int, a2: int, a3: int) -> bool:
    """Is (a3-a2)^(a3-a2) a2^a2 c2^a3 = (-a3)^a3 c1^(a3-a2) c3^a2 ?

    Decided by comparing signs and exponent vectors over a gcd-free basis,
    so the powers are never expanded.
    """
    (s1, t1), (s2, t2) = _delta_terms(c1, c2, c3, a2, a3)
    # A nonzero residue proves Delta != 0; only survivors need the basis.
    if discriminant_mod_p(c1, c2, c3, a2, a3, _FILTER_PRIME):
        return False
    if s1 != s2:
        return False
    bases = [x for x, _ in t1] + [x for x, _ in t2]
    basis, vecs = gcd_free_basis(bases)
    e1 = [0] * len(basis)
    e2 = [0] * len(basis)
    for k, (_, mult) in enumerate(t1):
        for j, x in enumerate(vecs[k]):
            e1[j] += x * mult
    for k, (_, mult) in enumerate(t2):
        for j, x in enumerate(vecs[3 + k]):
            e2[j] += x * mult
    return e1 == e2


def discriminant_mod_p(c1: int, c2: int, c3: int, a2: int, a3: int, p: int) -> int:
    """The degeneracy difference reduced mod p by fast exponentiation."""
    b = a3 - a2
    lhs = pow(b, b, p) * pow(a2, a2, p) * pow(c2, a3, p)
    rhs = pow(-a3, a3, p) * pow(c1, b, p) * pow(c3, a2, p)
    return (lhs - rhs) % p


def degenerate_rational_root(f: SparsePoly) -> Fraction:
    """The rational double root of a degenerate trinomial with gcd(a2,a3)=1."""
    if len(f) != 3:
        raise ValueError("need exactly 3 terms")
    inst = TrinomialInstance.from_poly(f, 2)
    c1, c2, c3, a2, a3 = inst.c1, inst.c2, inst.c3, inst.a2, inst.a3
    if gcd(a2, a3) != 1:
        raise ValueError("degenerate construction needs gcd(a2, a3) = 1")
    # (alpha, beta, gamma) spans the right kernel of [[1,1,1],[0,a2,a3]].
    alpha, beta, gamma = a3 - a2, -a3, a2
    _, A, B = ext_gcd(a2, a3)
    zeta = (Fraction(beta, alpha) ** A * Fraction(gamma, alpha) ** B
            * Fraction(c1, c2) ** A * Fraction(c1, c3) ** B)
    if inst.poly(zeta) != 0:
        raise InconsistencyError(f"null-vector root {zeta} does not vanish")
    return zeta
