"""Sparse univariate integer polynomials.

A :class:`SparsePoly` is an immutable tuple of ``(exponent, coefficient)``
pairs with strictly increasing exponents and nonzero integer coefficients.
The zero polynomial is the empty tuple.
"""

from __future__ import annotations

import heapq
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .arith import bitlen

Number = Union[int, Fraction]


class InexactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""

    def __init__(self, remainder: "SparsePoly"):
        self.remainder = remainder
        self.remainder_degree = remainder.degree
        super().__init__(f"division is not exact: remainder {remainder} "
                         f"(degree {remainder.degree})")


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class SparsePoly:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)
        last = -1
        for e, c in terms:
            if e <= last:
                raise ValueError("exponents must be strictly increasing and >= 0")
            if c == 0:
                raise ValueError("zero coefficient in sparse polynomial")
            last = e
        object.__setattr__(self, "terms", terms)

    # -- construction -----------------------------------------------------
    @classmethod
    def from_dict(cls, mapping: Mapping[int, int]) -> "SparsePoly":
        for e in mapping:
            if e < 0:
                raise ValueError("negative exponent")
        return cls(tuple(sorted((e, c) for e, c in mapping.items() if c != 0)))

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[int, int]]) -> "SparsePoly":
        """Build from (coefficient, exponent) pairs, summing repeats."""
        acc: dict[int, int] = {}
        for c, e in pairs:
            acc[e] = acc.get(e, 0) + c
        return cls.from_dict(acc)

    @classmethod
    def monomial(cls, coeff: int, exp: int = 0) -> "SparsePoly":
        return cls(((exp, coeff),)) if coeff else cls()

    @classmethod
    def from_dense(cls, coeffs: Iterable[int]) -> "SparsePoly":
        """From a low-to-high coefficient list."""
        return cls(tuple((i, int(c)) for i, c in enumerate(coeffs) if c))

    @classmethod
    def x_pow_minus_one(cls, d: int) -> "SparsePoly":
        return cls(((0, -1), (d, 1)))

    # -- basic accessors --------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.terms)

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return self.terms[-1][0]

    @property
    def low_degree(self) -> int:
        if not self.terms:
            raise ValueError("low degree of the zero polynomial")
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> int:
        return self.terms[-1][1]

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, e: int) -> int:
        return self.as_dict().get(e, 0)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "SparsePoly":
        return SparsePoly(tuple((e, -c) for e, c in self.terms))

    def __add__(self, other) -> "SparsePoly":
        other = _coerce(other)
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return SparsePoly.from_dict(acc)

    __radd__ = __add__

    def __sub__(self, other) -> "SparsePoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "SparsePoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            if other == 0:
                return SparsePoly()
            return SparsePoly(tuple((e, c * other) for e, c in self.terms))
        other = _coerce(other)
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return SparsePoly.from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        result = SparsePoly.monomial(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_coefficients(self, factor: int) -> "SparsePoly":
        return self * factor

    def divide_by_x_power(self, k: int) -> "SparsePoly":
        if self.terms and self.low_degree < k:
            raise ValueError(f"x^{k} does not divide {self}")
        return SparsePoly(tuple((e - k, c) for e, c in self.terms))

    def substitute_power(self, k: int) -> "SparsePoly":
        """f(x**k)."""
        return SparsePoly(tuple((e * k, c) for e, c in self.terms))

    def derivative(self) -> "SparsePoly":
        return SparsePoly(tuple((e - 1, e * c) for e, c in self.terms if e))

    def reciprocal(self) -> "SparsePoly":
        """x**deg(f) * f(1/x)."""
        d = self.degree
        return SparsePoly(tuple(sorted((d - e, c) for e, c in self.terms)))

    def content(self) -> int:
        from math import gcd

        g = 0
        for _, c in self.terms:
            g = gcd(g, c)
        return g

    def primitive(self) -> "SparsePoly":
        """Divide by the content and make the leading coefficient positive."""
        if not self.terms:
            return self
        g = self.content()
        if self.leading_coefficient < 0:
            g = -g
        return SparsePoly(tuple((e, c // g) for e, c in self.terms))

    # -- evaluation -------------------------------------------------------
    def __call__(self, x: Number) -> Number:
        if isinstance(x, Fraction):
            return sum((c * x ** e for e, c in self.terms), Fraction(0))
        return sum(c * x ** e for e, c in self.terms)

    def eval_mod(self, x: int, modulus: int) -> int:
        """f(x) mod modulus for integer x; exponents handled by fast powering."""
        if modulus == 1:
            return 0
        x %= modulus
        total = 0
        prev_e, power = 0, 1
        for e, c in self.terms:
            power = power * pow(x, e - prev_e, modulus) % modulus
            prev_e = e
            total += c * power
        return total % modulus

    def to_dense(self, cap: int | None = None) -> list[int]:
        """Low-to-high coefficient list; ``cap`` bounds the degree accepted."""
        if not self.terms:
            return []
        if cap is not None and self.degree > cap:
            raise ValueError(f"degree {self.degree} exceeds dense cap {cap}")
        out = [0] * (self.degree + 1)
        for e, c in self.terms:
            out[e] = c
        return out

    # -- formatting -------------------------------------------------------
    def to_text(self) -> str:
        return "; ".join(f"{c}*x^{e}" for e, c in self.terms)

    def to_json(self) -> list[list[str]]:
        return [[str(c), str(e)] for e, c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mag = abs(c)
            if e == 0:
                mono = str(mag)
            else:
                xe = "x" if e == 1 else f"x^{e}"
                mono = xe if mag == 1 else f"{mag}*{xe}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text


def _coerce(other) -> SparsePoly:
    if isinstance(other, SparsePoly):
        return other
    if isinstance(other, int):
        return SparsePoly.monomial(other)
    raise TypeError(f"cannot combine SparsePoly with {type(other).__name__}")


X = SparsePoly(((1, 1),))


def sparse_mul(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    return f * g


def sparse_div_exact(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Quotient of f by g in Z[x]; raises :class:`InexactDivisionError`."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    dg, lc = g.degree, g.leading_coefficient
    rem = f.as_dict()
    heap = [-e for e in rem]
    heapq.heapify(heap)
    quot: dict[int, int] = {}
    while heap:
        e = -heapq.heappop(heap)
        c = rem.get(e, 0)
        if c == 0:
            continue
        if e < dg:
            break
        q, r = divmod(c, lc)
        if r:
            break
        shift = e - dg
        quot[shift] = q
        for eg, cg in g.terms:
            k = eg + shift
            new = rem.get(k, 0) - q * cg
            if new:
                if k not in rem:
                    heapq.heappush(heap, -k)
                rem[k] = new
            else:
                rem.pop(k, None)
    remainder = SparsePoly.from_dict(rem)
    if remainder:
        raise InexactDivisionError(remainder)
    return SparsePoly.from_dict(quot)


def size_f(f: SparsePoly) -> int:
    """Integer bit-size of f: sum of bitlen(2+|c|) + bitlen(2+a) over terms.

    Upper-bounds the real-valued log2 size, so it is safe wherever that
    measure is used as a precision bound.
    """
    if f.is_zero:
        raise ValueError("size of the zero polynomial")
    return sum(bitlen(2 + abs(c)) + bitlen(2 + e) for e, c in f.terms)


def size_p(f: SparsePoly, p: int) -> int:
    return size_f(f) + bitlen(p)


_TERM_RE = re.compile(r"^(?:(?P<c>[+-]?\d+)(?:\*x(?:\^(?P<e1>\d+))?)?|(?P<s>[+-]?)x(?:\^(?P<e2>\d+))?)$")


def parse_poly(text: str) -> SparsePoly:
    """Parse ``'-17*x^0; 1*x^2'`` (or a JSON list of [coeff, exp] strings).

    Terms are separated by ``;``.  Each term is ``c*x^e``, ``c*x``, ``x^e``,
    ``-x`` or a bare integer.  Repeated exponents are summed.
    """
    if text.strip().startswith("["):
        return parse_poly_json(text)
    pairs = []
    pos = 0
    for chunk in text.split(";"):
        start, pos = pos, pos + len(chunk) + 1
        term = "".join(chunk.split())
        if not term:
            raise PolyParseError("empty term", start)
        m = _TERM_RE.match(term)
        if m is None:
            raise PolyParseError(f"cannot parse term {chunk.strip()!r}", start)
        if m.group("c") is not None:
            coef = int(m.group("c"))
            if "x" not in term:
                exp = 0
            else:
                exp = int(m.group("e1")) if m.group("e1") else 1
        else:
            coef = -1 if m.group("s") == "-" else 1
            exp = int(m.group("e2")) if m.group("e2") else 1
        pairs.append((coef, exp))
    return SparsePoly.from_terms(pairs)


def parse_poly_json(data) -> SparsePoly:
    """Accept a JSON string or an already-decoded list of [coeff, exp]."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PolyParseError(f"bad JSON: {exc.msg}", exc.pos) from None
    if not isinstance(data, list):
        raise PolyParseError("expected a JSON array of [coeff, exp] pairs", 0)
    pairs = []
    for i, item in enumerate(data):
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise PolyParseError("each entry must be a [coeff, exp] pair", i)
        try:
            c, e = int(item[0]), int(item[1])
        except (TypeError, ValueError):
            raise PolyParseError(f"non-integer entry {item!r}", i) from None
        if e < 0:
            raise PolyParseError("negative exponent", i)
        pairs.append((c, e))
    return SparsePoly.from_terms(pairs)
