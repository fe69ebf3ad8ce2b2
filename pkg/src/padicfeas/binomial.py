"""Q_p-feasibility of polynomials with at most two terms.

After dividing out a monomial every such input is ``x^d - alpha``.  A root
forces ``d | ord_p(alpha)``; after rescaling, the question becomes whether a
unit is a d-th power, which Hensel's lemma settles modulo ``p^(1+2k)`` with
``k = ord_p(d)``.  Odd p uses the cyclic group ``(Z/p^l)^*``; p = 2 uses the
decomposition ``(Z/2^l)^* = {+-1} x <5>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .core.arith import ord_int, ord_p, rational_mod, unit_part
from .core.sparse import SparsePoly


@dataclass(frozen=True)
class BinomialInstance:
    """``x^d - alpha`` over Q_p with alpha nonzero."""

    d: int
    alpha: Fraction
    p: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.alpha == 0:
            raise ValueError("alpha = 0 is handled before building an instance")

    @classmethod
    def from_poly(cls, f: SparsePoly, p: int) -> "BinomialInstance":
        """Normalise ``c_i x^a_i + c_j x^a_j`` (a_i = 0) to ``x^d - alpha``."""
        (a0, c0), (a1, c1) = f.terms
        return cls(a1 - a0, Fraction(-c0, c1), p)


@dataclass(frozen=True)
class BinomialReport:
    feasible: bool
    branch: str
    d: int | None = None
    ord_alpha: int | None = None
    extra: dict = field(default_factory=dict)

    def details(self) -> dict:
        out = {"branch": self.branch}
        if self.d is not None:
            out["d"] = str(self.d)
            out["ord_alpha"] = str(self.ord_alpha)
        out.update({k: str(v) for k, v in self.extra.items()})
        return out


def solvable_in_cyclic(group_order: int, d: int, base: int, modulus: int) -> bool:
    """Is x^d = base solvable in a cyclic group of the given order?

    The group is the one generated inside ``(Z/modulus)^*``; membership of
    ``base`` is the caller's contract, coprimality is checked here.
    """
    if gcd(base, modulus) != 1:
        raise ValueError(f"{base} is not a unit modulo {modulus}")
    return pow(base, group_order // gcd(d, group_order), modulus) == 1 % modulus


def _units_mod_2l_power(d: int, a: int, ell: int) -> bool:
    """Is a a d-th power of a unit modulo 2^ell?  (a odd.)"""
    mod = 1 << ell
    a %= mod
    if ell <= 2:
        return any(pow(x, d, mod) == a for x in range(1, mod, 2))
    # The unit group mod 2^ell has exponent 2^(ell-2), so only d mod that matters.
    e = 1 << (ell - 2)
    d_red = d % e
    if d_red == 0:
        return a == 1
    h = ord_int(d_red, 2)
    d_odd = d_red >> h
    d_inv = pow(d_odd, -1, e)
    a_prime = pow(a, d_inv, mod)
    if h == 0:
        return True
    # 2^h-th powers of units are exactly the 2^(h-1)-th powers inside <25>,
    # the cyclic subgroup of residues = 1 mod 8 (order 2^(ell-3)).
    if a_prime % 8 != 1:
        return False
    return solvable_in_cyclic(1 << (ell - 3), 1 << (h - 1), a_prime, mod)


def decide_binomial_2adic(d: int, alpha) -> bool:
    """Is x^d = alpha solvable in Z_2 for a 2-adic unit alpha?"""
    return _decide_2adic(d, Fraction(alpha))[0]


def _decide_2adic(d: int, alpha: Fraction) -> tuple[bool, str, int]:
    if d < 1:
        raise ValueError("d must be positive")
    if ord_p(alpha, 2) != 0:
        raise ValueError(f"alpha = {alpha} is not a 2-adic unit")
    k = ord_int(d, 2)
    if k == 0:
        return True, "p=2, odd power", 1
    ell = 1 + 2 * k
    a = rational_mod(alpha, 1 << ell)
    return _units_mod_2l_power(d, a, ell), "p=2, unit group +-5^j", ell


def _decide_odd(d: int, alpha: Fraction, p: int) -> tuple[bool, int]:
    k = ord_int(d, p)
    ell = 1 + 2 * k
    mod = p ** ell
    order = p ** (ell - 1) * (p - 1)
    return solvable_in_cyclic(order, d, rational_mod(alpha, mod), mod), ell


def explain_binomial(f: SparsePoly, p: int) -> BinomialReport:
    if len(f) > 2:
        raise ValueError(f"binomial solver got {len(f)} terms; route to another solver")
    if f.is_zero:
        return BinomialReport(True, "zero polynomial")
    if len(f) == 1:
        if f.low_degree >= 1:
            return BinomialReport(True, "monomial, root 0")
        return BinomialReport(False, "nonzero constant")
    if f.low_degree >= 1:
        return BinomialReport(True, "root 0")
    inst = BinomialInstance.from_poly(f, p)
    return decide_instance(inst)


def decide_instance(inst: BinomialInstance) -> BinomialReport:
    d, alpha, p = inst.d, inst.alpha, inst.p
    v = ord_p(alpha, p)
    if v % d:
        return BinomialReport(False, "valuation not divisible by d", d, v)
    u = unit_part(alpha, p)
    if p == 2:
        ok, branch, ell = _decide_2adic(d, u)
    else:
        ok, ell = _decide_odd(d, u, p)
        branch = "odd p, cyclic unit group"
    return BinomialReport(ok, branch, d, v, {"ell": ell})


def decide_binomial(f: SparsePoly, p: int) -> bool:
    """True iff ``f`` (at most two terms) has a root in Q_p."""
    return explain_binomial(f, p).feasible


def roots_of_unity_count(p: int) -> int:
    """Number of roots of unity in Q_p."""
    return 2 if p == 2 else p - 1


def binomial_nonzero_root_count(f: SparsePoly, p: int) -> int:
    """Number of nonzero Q_p roots of a two-term polynomial.

    A solvable ``x^d = alpha`` has exactly as many solutions as there are
    d-th roots of unity in Q_p.
    """
    if len(f) != 2:
        raise ValueError("expected exactly two terms")
    (a0, c0), (a1, c1) = f.terms
    inst = BinomialInstance(a1 - a0, Fraction(-c0, c1), p)
    if not decide_instance(inst).feasible:
        return 0
    return gcd(inst.d, roots_of_unity_count(p))


__all__ = [
    "BinomialInstance", "BinomialReport", "solvable_in_cyclic", "decide_binomial",
    "decide_binomial_2adic", "explain_binomial", "decide_instance",
    "binomial_nonzero_root_count", "roots_of_unity_count",
]
