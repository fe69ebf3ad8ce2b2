"""3CNF formulas to univariate polynomial systems over roots of unity.

Each variable gets its own prime ``p_i``; with ``D = prod p_i`` a D-th root
of unity ``zeta`` encodes the assignment "y_i is true iff zeta^(D/p_i) = 1".
A positive literal becomes ``x^(D/p_i) - 1``, a negative one the cofactor
``(x^D - 1) / (x^(D/p_i) - 1)``, and a clause the lcm of its literals.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import prod

from sympy.ntheory import primitive_root

from .core.dense import lcm_over_z
from .core.sparse import SparsePoly, sparse_div_exact
from .primegen import first_primes

Literal = tuple[int, bool]  # (1-based variable index, negated)


class DimacsError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...] = ()

    def __post_init__(self):
        fixed = []
        for cl in self.clauses:
            cl = tuple((int(v), bool(neg)) for v, neg in cl)
            if not 1 <= len(cl) <= 3:
                raise ValueError(f"clause {cl} must have 1 to 3 literals")
            # Short clauses are padded by repeating a literal; the lcm of a
            # repeated literal is the literal itself.
            cl = (cl + (cl[-1],) * 3)[:3]
            for v, _ in cl:
                if not 1 <= v <= self.n:
                    raise ValueError(f"variable {v} outside 1..{self.n}")
            fixed.append(cl)
        object.__setattr__(self, "clauses", tuple(fixed))

    @classmethod
    def from_dimacs(cls, text: str) -> "CnfFormula":
        n = None
        clauses, current = [], []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("c") or line.startswith("%"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise DimacsError("malformed problem line", lineno)
                try:
                    n = int(parts[2])
                except ValueError:
                    raise DimacsError("non-integer variable count", lineno) from None
                continue
            if n is None:
                raise DimacsError("clause before the 'p cnf' line", lineno)
            for tok in line.split():
                try:
                    lit = int(tok)
                except ValueError:
                    raise DimacsError(f"bad literal {tok!r}", lineno) from None
                if lit == 0:
                    if not current:
                        raise DimacsError("empty clause", lineno)
                    if len(current) > 3:
                        raise DimacsError("clause has more than 3 literals", lineno)
                    clauses.append(tuple(current))
                    current = []
                else:
                    if abs(lit) > n:
                        raise DimacsError(f"literal {lit} exceeds variable count", lineno)
                    current.append((abs(lit), lit < 0))
        if n is None:
            raise DimacsError("missing 'p cnf' line", 0)
        if current:
            if len(current) > 3:
                raise DimacsError("clause has more than 3 literals", 0)
            clauses.append(tuple(current))
        return cls(n, tuple(clauses))

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {len(self.clauses)}"]
        for cl in self.clauses:
            lines.append(" ".join(str(-v if neg else v) for v, neg in cl) + " 0")
        return "\n".join(lines) + "\n"

    def evaluate(self, assignment) -> bool:
        return all(any(assignment[v - 1] != neg for v, neg in cl) for cl in self.clauses)


def brute_force_sat(formula: CnfFormula):
    """A satisfying assignment (tuple of bools) or None."""
    for bits in itertools.product((False, True), repeat=formula.n):
        if formula.evaluate(bits):
            return bits
    return None


def random_3cnf(n: int, k: int, rng: random.Random) -> CnfFormula:
    clauses = tuple(
        tuple((rng.randint(1, n), rng.random() < 0.5) for _ in range(3)) for _ in range(k)
    )
    return CnfFormula(n, clauses)


@dataclass(frozen=True)
class PlaistedBasis:
    primes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(int(q) for q in self.primes)
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("basis primes must be strictly increasing")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def first(cls, n: int) -> "PlaistedBasis":
        return cls(tuple(first_primes(n)))

    @property
    def D(self) -> int:
        return prod(self.primes)

    def prime_of(self, var: int) -> int:
        if not 1 <= var <= len(self.primes):
            raise ValueError(f"variable {var} has no prime in a basis of length {len(self.primes)}")
        return self.primes[var - 1]


def _literal_in_y(q: int, negated: bool, step: int) -> list[int]:
    """Dense literal polynomial in y, where x^(D/p_i) = y^step."""
    if not negated:
        out = [0] * (step + 1)
        out[0], out[step] = -1, 1
        return out
    out = [0] * (step * (q - 1) + 1)
    for j in range(q):
        out[j * step] = 1
    return out


def plaisted_literal(basis: PlaistedBasis, literal: Literal) -> SparsePoly:
    var, negated = literal
    q = basis.prime_of(var)
    step = basis.D // q
    return SparsePoly.from_dense(_literal_in_y(q, negated, 1)).substitute_power(step)


def plaisted_clause(basis: PlaistedBasis, clause) -> SparsePoly:
    """lcm of the literal images, computed in y = x^(D / prod of its primes)."""
    vars_ = sorted({v for v, _ in clause})
    Q = prod(basis.prime_of(v) for v in vars_)
    comp = basis.D // Q
    acc = None
    for var, negated in clause:
        q = basis.prime_of(var)
        lit = _literal_in_y(q, negated, Q // q)
        acc = lit if acc is None else lcm_over_z(acc, lit)
    return SparsePoly.from_dense(acc).substitute_power(comp)


@dataclass
class ReductionOutput:
    basis: PlaistedBasis
    system: list[SparsePoly]
    unity: SparsePoly
    combined: SparsePoly | None = None
    gadget: SparsePoly | None = None
    gadget_prime: int | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "basis": [str(q) for q in self.basis.primes],
            "D_P": str(self.basis.D),
            "system": [f.to_json() for f in self.system],
            "unity": self.unity.to_json(),
            "combined": self.combined.to_json() if self.combined is not None else None,
            "gadget": None if self.gadget is None else {
                "poly": self.gadget.to_json(), "p": str(self.gadget_prime)},
        }


def reduce_cnf(formula: CnfFormula, basis: PlaistedBasis) -> ReductionOutput:
    if len(basis.primes) < formula.n:
        raise ValueError(f"basis has {len(basis.primes)} primes, formula needs {formula.n}")
    system = [plaisted_clause(basis, cl) for cl in formula.clauses]
    return ReductionOutput(basis, system, SparsePoly.x_pow_minus_one(basis.D))


def sos_combine(system: list[SparsePoly]) -> SparsePoly:
    """sum_i x^(d_i) f_i(x) f_i(1/x) with d_i = deg f_i."""
    if not system:
        raise ValueError("empty system")
    total = SparsePoly()
    m = max(len(f) for f in system)
    for f in system:
        if f.is_zero:
            raise ValueError("zero polynomial in system")
        d = f.degree
        mirror = SparsePoly.from_dict({d - a: c for a, c in f.terms})
        total = total + f * mirror
    bound = ((m - 1) * m + 1) * len(system)
    if len(total) > bound:
        raise AssertionError(f"term count {len(total)} exceeds {bound}")
    return total


def final_gadget(f: SparsePoly, D: int, p: int) -> SparsePoly:
    """f^2 - p (x^D - 1)^2."""
    u = SparsePoly.x_pow_minus_one(D)
    return f * f - u * u * p


class CongruenceError(ValueError):
    """The prime is not 1 modulo the root-of-unity order."""


def unity_root_exists(system: list[SparsePoly], D: int, p: int,
                      cap: int = 10 ** 5) -> int | None:
    """Smallest j with every polynomial vanishing at omega^j mod p, or None.

    omega is a primitive D-th root of unity in F_p.
    """
    if (p - 1) % D:
        raise CongruenceError(f"{p} is not 1 mod {D}")
    if D > cap:
        raise ValueError(f"unity cap exceeded: D = {D} > {cap}")
    omega = pow(primitive_root(p), (p - 1) // D, p) if p > 2 else 1
    w = 1
    for j in range(D):
        if all(f.eval_mod(w, p) == 0 for f in system):
            return j
        w = w * omega % p
    return None


def unity_equivalence_oracle(formula: CnfFormula, basis: PlaistedBasis, p: int,
                             cap: int = 10 ** 5) -> bool:
    red = reduce_cnf(formula, basis)
    return unity_root_exists(red.system, basis.D, p, cap) is not None


def divides_unity(f: SparsePoly, D: int) -> bool:
    try:
        sparse_div_exact(SparsePoly.x_pow_minus_one(D), f)
        return True
    except ArithmeticError:
        return False
