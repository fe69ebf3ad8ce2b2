"""Hensel certificates, resultants, exceptional-set membership and the
general bounded-budget Q_p decision procedure.

A certificate ``(zeta0, ell, p, valuation_shift)`` claims that the rescaled
polynomial ``g(u) = p^-m f(p^v u)`` has ``g(zeta0) = 0 mod p^ell`` with
``2 ord_p g'(zeta0) < ell``; Hensel's lemma then gives a true root
``p^v * u`` of f in Q_p.  An optional ``divisor`` lets the certificate speak
about an exact factor of f (its squarefree part), which is how roots that
are multiple in f still get certified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .core.arith import ord_int, ord_p
from .core.dense import (DensePolyModP, bareiss_det, poly_gcd_mod_p,
                         roots_mod_p, squarefree_part, taylor_shift)
from .core.sparse import (InexactDivisionError, SparsePoly, size_f,
                          sparse_div_exact)
from .newton import build_polygon

DEFAULT_ENUM_CAP = 10 ** 7
DEFAULT_SYLVESTER_CAP = 512
DEFAULT_DENSE_CAP = 4096


class HenselConditionFailed(ValueError):
    def __init__(self, ord_f, ord_fprime, start_ell):
        self.ord_f = ord_f
        self.ord_fprime = ord_fprime
        self.start_ell = start_ell
        super().__init__(
            f"Hensel condition fails at precision {start_ell}: "
            f"ord f(zeta0) = {ord_f}, ord f'(zeta0) = {ord_fprime}")


class CapExceeded(ValueError):
    """A dense computation would exceed its configured size cap."""


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    zeta0: int
    ell: int
    p: int
    valuation_shift: int = 0
    divisor: SparsePoly | None = None

    def to_json(self) -> dict:
        out = {"zeta0": str(self.zeta0), "ell": str(self.ell), "p": str(self.p),
               "valuation_shift": str(self.valuation_shift)}
        if self.divisor is not None:
            out["divisor"] = self.divisor.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "Certificate":
        if isinstance(data, str):
            data = json.loads(data)
        div = data.get("divisor")
        if div is not None:
            from .core.sparse import parse_poly_json

            div = parse_poly_json(div)
        return cls(int(data["zeta0"]), int(data["ell"]), int(data["p"]),
                   int(data.get("valuation_shift", 0)), div)


def rescale(f: SparsePoly, p: int, v: int) -> SparsePoly:
    """``p^-m f(p^v u)`` with m chosen so the result has p-content 1."""
    if f.is_zero:
        raise ValueError("cannot rescale the zero polynomial")
    vals = [ord_int(c, p) + v * a for a, c in f.terms]
    m = min(vals)
    out = []
    for (a, c), e in zip(f.terms, vals):
        uc = c // p ** ord_int(c, p)
        out.append((a, uc * p ** (e - m)))
    return SparsePoly(tuple(out))


def _ord_mod(x: int, p: int, ell: int):
    """ord_p of x when only x mod p^ell is known; values >= ell read as ell."""
    x %= p ** ell
    return ell if x == 0 else ord_int(x, p)


def _reported_ord(g: SparsePoly, x: int, p: int, ell: int):
    """ord_p g(x) for error reports: exact when cheap, else ">= ell" once it vanishes mod p^ell."""
    r = _ord_mod(g.eval_mod(x, p ** ell), p, ell)
    if r < ell:
        return r
    if g.is_zero or (g.degree + 1) * max(abs(x).bit_length(), 1) <= 1 << 16:
        return ord_p(g(x), p)
    return f">= {ell}"


def hensel_lift(f: SparsePoly, zeta0: int, p: int, start_ell: int,
                target_ell: int) -> int:
    """Residue mod p^target_ell of the unique Z_p root congruent to zeta0.

    The returned value is a root mod p^target_ell and agrees with zeta0
    modulo ``p^(start_ell - ord_p f'(zeta0))``.
    """
    fp = f.derivative()
    fval = f.eval_mod(zeta0, p ** start_ell)
    s = _ord_mod(fp.eval_mod(zeta0, p ** start_ell), p, start_ell)
    if fval != 0 or 2 * s >= start_ell:
        raise HenselConditionFailed(_reported_ord(f, zeta0, p, start_ell),
                                    _reported_ord(fp, zeta0, p, start_ell), start_ell)
    # Stop once f(zeta) = 0 mod p^(target+s): the true root is then pinned
    # down modulo p^target.
    goal = target_ell + s
    work = p ** (goal + s + 2)
    zeta = zeta0 % work
    ps = p ** s
    prec = start_ell
    while prec < goal:
        fz = f.eval_mod(zeta, work)
        dz = fp.eval_mod(zeta, work)
        if fz % p ** goal == 0:
            break
        unit = (dz // ps) % (work // ps)
        step = (fz // ps) * pow(unit, -1, work // ps)
        zeta = (zeta - step) % work
        prec = 2 * prec - 2 * s
    return zeta % p ** target_ell


def certificate_precision(f: SparsePoly) -> int:
    """The default certificate precision: four times the bit size of f."""
    return 4 * size_f(f)


def verify_certificate(f: SparsePoly, p: int, cert: Certificate) -> bool:
    """Check a certificate against f.  Never raises on malformed data."""
    try:
        from .primegen import is_prime

        if cert.p != p or cert.ell < 1 or not is_prime(p):
            return False
        mod = p ** cert.ell
        if not 0 <= cert.zeta0 < mod:
            return False
        target = f
        if cert.divisor is not None:
            sparse_div_exact(f, cert.divisor)
            target = cert.divisor
        if target.is_zero:
            return True
        g = rescale(target, p, cert.valuation_shift)
        if g.eval_mod(cert.zeta0, mod) != 0:
            return False
        s = _ord_mod(g.derivative().eval_mod(cert.zeta0, mod), p, cert.ell)
        return 2 * s < cert.ell
    except (InexactDivisionError, ValueError, ZeroDivisionError, TypeError):
        return False


def certified_root_valuation(cert: Certificate) -> int:
    """Valuation of the root witnessed by a certificate on a unit zeta0."""
    if cert.zeta0 % cert.p == 0:
        raise ValueError("zeta0 is not a unit")
    return cert.valuation_shift


# --------------------------------------------------------------------------
# resultants and the exceptional set
# --------------------------------------------------------------------------


def sylvester_matrix(f: SparsePoly, g: SparsePoly, cap: int = DEFAULT_SYLVESTER_CAP):
    """Rows: deg g shifted copies of f (low-to-high), then deg f copies of g."""
    d, dp = f.degree, g.degree
    n = d + dp
    if n < 1:
        raise ValueError("need deg f + deg g >= 1")
    if n > cap:
        raise CapExceeded(f"Sylvester matrix of size {n} exceeds cap {cap}; "
                          "use the gcd-mod-p test instead")
    fc, gc = f.to_dense(), g.to_dense()
    rows = []
    for i in range(dp):
        rows.append([0] * i + fc + [0] * (n - d - 1 - i))
    for i in range(d):
        rows.append([0] * i + gc + [0] * (n - dp - 1 - i))
    return rows


def sylvester_resultant(f: SparsePoly, g: SparsePoly, cap: int = DEFAULT_SYLVESTER_CAP) -> int:
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of a zero polynomial")
    if f.degree + g.degree == 0:
        raise ValueError("need deg f + deg g >= 1")
    return bareiss_det(sylvester_matrix(f, g, cap))


def hadamard_bound_holds(f: SparsePoly, g: SparsePoly, res: int) -> bool:
    """|res| <= m^(d'/2) m'^(d/2) H^(d+d'), checked after squaring."""
    d, dp = f.degree, g.degree
    m, mp = len(f), len(g)
    H = max(abs(c) for c in f.coefficients + g.coefficients)
    return res * res <= m ** dp * mp ** d * H ** (2 * (d + dp))


def _normalised_support(f: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    """(f0, g): f divided by its lowest monomial and f0' / x^(a2-a1-1)."""
    if len(f) < 2:
        raise ValueError("A-discriminant needs at least two terms")
    f0 = f.divide_by_x_power(f.low_degree)
    d = f0.derivative()
    return f0, d.divide_by_x_power(d.low_degree)


def a_discriminant(f: SparsePoly, cap: int = DEFAULT_SYLVESTER_CAP) -> int:
    """Res(f0, g) / c_m, computed exactly by fraction-free elimination."""
    f0, g = _normalised_support(f)
    res = sylvester_resultant(f0, g, cap)
    q, r = divmod(res, f0.leading_coefficient)
    if r:
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    return q


def strip_p_content(f: SparsePoly, p: int) -> tuple[SparsePoly, int]:
    """(f / p^k, k) with k the largest power of p dividing every coefficient."""
    if f.is_zero:
        raise ValueError("the zero polynomial has no content")
    k = min(ord_int(c, p) for _, c in f.terms)
    return SparsePoly(tuple((a, c // p ** k) for a, c in f.terms)), k


def exceptional_set_report(f: SparsePoly, p: int, cap: int = DEFAULT_SYLVESTER_CAP) -> dict:
    """Membership of f in E at p, after dividing out the p-part of the content."""
    g, k = strip_p_content(f, p)
    return {"in_exceptional_set": in_exceptional_set(g, p, cap), "stripped_power": k}


def in_exceptional_set(f: SparsePoly, p: int, cap: int = DEFAULT_SYLVESTER_CAP) -> bool:
    """Does p divide the A-discriminant of f / p^k, where p^k is the p-part
    of the content?  Without the stripping every f with p | content would be
    a member, although its roots are those of f / p^k."""
    if len(f) < 2:
        raise ValueError("exceptional-set membership is undefined for monomials")
    f, _ = strip_p_content(f, p)
    f0, g = _normalised_support(f)
    if len(f0) == 3:
        from .trinomial import discriminant_mod_p

        (_, c1), (a2, c2), (a3, c3) = f0.terms
        if c3 % p:
            return discriminant_mod_p(c1, c2, c3, a2, a3, p) == 0
    if f0.leading_coefficient % p == 0:
        try:
            return a_discriminant(f, cap) % p == 0
        except CapExceeded:
            return True
    fb = DensePolyModP(p, tuple(f0.to_dense()))
    gb = DensePolyModP(p, tuple(g.to_dense()))
    if gb.is_zero:
        return True
    return poly_gcd_mod_p(fb, gb).degree > 0


# --------------------------------------------------------------------------
# brute-force oracles
# --------------------------------------------------------------------------


def brute_force_roots_mod(f: SparsePoly, p: int, ell: int,
                          cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    """Every residue mod p^ell that is a root mod p^ell, by exhaustion."""
    mod = p ** ell
    if mod > cap:
        raise ValueError(f"p^ell = {mod} exceeds the enumeration cap {cap}")
    return [x for x in range(mod) if f.eval_mod(x, mod) == 0]


def lifted_roots_mod(f: SparsePoly, p: int, ell: int,
                     cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    """Roots mod p^ell, found level by level (roots mod p^(j+1) reduce to
    roots mod p^j).  Same output as exhaustion, far fewer evaluations."""
    level = [x for x in range(p) if f.eval_mod(x, p) == 0]
    mod = p
    for _ in range(1, ell):
        nxt_mod = mod * p
        nxt = []
        for r in level:
            for t in range(p):
                x = r + mod * t
                if f.eval_mod(x, nxt_mod) == 0:
                    nxt.append(x)
            if len(nxt) > cap:
                raise ValueError("too many residues to enumerate")
        level, mod = nxt, nxt_mod
    return sorted(level)


def zp_root_classes(f: SparsePoly, p: int, ell: int) -> set[int]:
    """Residue classes of Z_p roots visible at precision ell.

    A residue x with ``2 s < ell`` (s = ord f'(x)) pins down one Z_p root
    modulo ``p^(ell - s)``; distinct roots give distinct classes.
    """
    fp = f.derivative()
    mod = p ** ell
    out = set()
    for x in lifted_roots_mod(f, p, ell):
        s = _ord_mod(fp.eval_mod(x, mod), p, ell)
        if 2 * s < ell:
            out.add((x % p ** (ell - s), ell - s))
    return out


def qp_root_count_oracle(f: SparsePoly, p: int, ell: int) -> int:
    """Distinct Q_p roots of f by enumeration, for polynomials whose roots
    are simple and visible at precision ell.

    Integral roots come from f0 = f / x^a1; roots of negative valuation are
    inverses of the roots of the reciprocal that are divisible by p.
    """
    count = 1 if f.low_degree > 0 else 0
    f0 = f.divide_by_x_power(f.low_degree)
    if len(f0) < 2:
        return count
    count += len(zp_root_classes(f0, p, ell))
    rec = f0.reciprocal()
    count += sum(1 for x, _ in zp_root_classes(rec, p, ell) if x % p == 0)
    return count


# --------------------------------------------------------------------------
# general decision
# --------------------------------------------------------------------------


@dataclass
class Budget:
    max_nodes: int = 10_000
    dense_cap: int = DEFAULT_DENSE_CAP
    nodes_used: int = 0

    def spend(self) -> bool:
        self.nodes_used += 1
        return self.nodes_used <= self.max_nodes


@dataclass
class GeneralResult:
    status: str  # "feasible" | "infeasible" | "unknown"
    certificate: Certificate | None = None
    certificates: list[Certificate] = field(default_factory=list)
    reason: str = ""
    details: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


class _BudgetExhausted(Exception):
    pass


def _unit_roots_mod_p(h: SparsePoly, p: int, budget: Budget) -> list[int]:
    """Nonzero roots mod p of h, folding exponents modulo p - 1."""
    folded: dict[int, int] = {}
    for a, c in h.terms:
        e = a % (p - 1) if a else 0
        folded[e] = (folded.get(e, 0) + c) % p
    dense = [0] * (max(folded) + 1)
    for e, c in folded.items():
        dense[e] = c
    while dense and dense[-1] == 0:
        dense.pop()
    if not dense:
        return list(range(1, p))
    if len(dense) == 1:
        return []
    return [r for r in roots_mod_p(dense, p) if r]


def _strip(c: list[int], p: int) -> tuple[list[int], int]:
    """Divide out the largest power of p dividing every entry."""
    nz = [x for x in c if x]
    s = ord_int(nz[0], p)
    for x in nz[1:]:
        # Only a residue below the current minimum can lower it, and then
        # the small residue has the same valuation as x itself.
        r = x % p ** s
        if r:
            s = ord_int(r, p)
    q = p ** s
    return [x // q for x in c], s


def _eval_dense_mod(c: list[int], x: int, m: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % m
    return acc


def _lift_dense(c: list[int], t0: int, p: int, digits: int) -> int:
    """Lift a simple root t0 mod p of the dense polynomial c to p^digits."""
    dc = [i * a for i, a in enumerate(c)][1:]
    t = t0
    prec = 1
    while prec < digits:
        prec = min(2 * prec, digits)
        m = p ** prec
        t = (t - _eval_dense_mod(c, t, m) * pow(_eval_dense_mod(dc, t, m), -1, m)) % m
    return t % p ** digits


def _branch_search(h: SparsePoly, r: int, p: int, budget: Budget,
                   max_depth: int) -> list[tuple[int, int]]:
    """Explore u = r + p t for a multiple root r of h mod p.

    Returns pairs (zeta0 at Hensel precision, start precision) for each
    simple root found below r; raises _BudgetExhausted when out of budget.
    """
    if h.degree > budget.dense_cap:
        raise _BudgetExhausted(f"degree {h.degree} above dense cap")
    base = h.to_dense()
    found = []
    # stack entries: (H dense, B, k, S) with h(B + p^k t) = p^S H(t)
    stack = [(base, 0, 0, 0, [r])]
    while stack:
        H, B, k, S, candidates = stack.pop()
        for tau in candidates:
            if not budget.spend():
                raise _BudgetExhausted("branch-node budget exhausted")
            shifted = taylor_shift(H, tau)
            scale, scaled = 1, []
            for a in shifted:
                scaled.append(a * scale)
                scale *= p
            shifted = scaled
            child, s = _strip(shifted, p)
            B2, k2, S2 = B + p ** k * tau, k + 1, S + s
            if k2 > max_depth:
                raise _BudgetExhausted("branch depth exhausted")
            mod_c = [a % p for a in child]
            while mod_c and mod_c[-1] == 0:
                mod_c.pop()
            if len(mod_c) <= 1:
                continue  # nonzero constant mod p: no roots below this node
            dchild = [(i * a) % p for i, a in enumerate(child)][1:]
            roots = roots_mod_p(mod_c, p)
            multiple = []
            for t in roots:
                if _eval_dense_mod(dchild, t, p):
                    e = max(1, S2 - 2 * k2 + 1)
                    tt = _lift_dense(child, t, p, e)
                    found.append((B2 + p ** k2 * tt, S2 + e, S2 - k2))
                else:
                    multiple.append(t)
            if multiple:
                stack.append((child, B2, k2, S2, multiple))
    return [(z, start) for z, start, _ in found]


def decide_general(f: SparsePoly, p: int, budget: Budget | None = None, *,
                   ell: int | None = None, find_all: bool = False,
                   max_depth: int = 200) -> GeneralResult:
    """Search for a certified Q_p root of f.

    Roots are grouped by valuation (integer slopes of the Newton polygon);
    for each, the rescaled polynomial's unit roots mod p are lifted, with
    branching below roots that are multiple mod p.  ``ell`` overrides the
    certificate precision (default four times the bit size of f); the
    certificate always uses at least the precision Hensel's lemma needs.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    # Fresh node counter per call, so one Budget can configure many runs.
    budget = replace(budget, nodes_used=0) if budget else Budget()
    certs: list[Certificate] = []
    details: dict = {}
    base_ell = ell if ell is not None else certificate_precision(f)
    X1 = SparsePoly(((1, 1),))
    if f.low_degree > 0:
        certs.append(Certificate(0, base_ell, p, 0, X1))
        if not find_all:
            return GeneralResult("feasible", certs[0], certs, details={"root": "0"})
    f0 = f.divide_by_x_power(f.low_degree).primitive()
    if len(f0) < 2:
        return _finish(certs, False, "", details)
    target, divisor = f, None
    if f0.degree <= budget.dense_cap:
        sq = squarefree_part(f0.to_dense())
        if len(sq) - 1 < f0.degree:
            divisor = SparsePoly.from_dense(sq)
            target = divisor
            details["squarefree_divisor"] = str(divisor)
    search = divisor if divisor is not None else f0
    unknown_reasons = []
    for edge in build_polygon(search, p).lower_edges:
        v = edge.inner_normal_v
        if v.denominator != 1:
            continue
        v = int(v)
        h = rescale(target, p, v)
        hs = rescale(search, p, v)
        hp = hs.derivative()
        for r in _unit_roots_mod_p(hs, p, budget):
            if not budget.spend():
                unknown_reasons.append("branch-node budget exhausted")
                break
            if hp.eval_mod(r, p):
                pairs = [(r, 1)]
            else:
                try:
                    pairs = _branch_search(hs, r, p, budget, max_depth)
                except _BudgetExhausted as exc:
                    unknown_reasons.append(str(exc))
                    continue
            for z, start in pairs:
                cert = _make_cert(h, z, start, p, v, divisor, base_ell)
                certs.append(cert)
                if not find_all:
                    return _finish(certs, False, "", details)
    return _finish(certs, bool(unknown_reasons), "; ".join(sorted(set(unknown_reasons))),
                   details)


def _make_cert(h: SparsePoly, z: int, start: int, p: int, v: int,
               divisor: SparsePoly | None, base_ell: int) -> Certificate:
    mod = p ** start
    s = _ord_mod(h.derivative().eval_mod(z, mod), p, start)
    ell = max(base_ell, 2 * s + 1)
    zeta0 = hensel_lift(h, z, p, start, ell)
    return Certificate(zeta0, ell, p, v, divisor)


def _finish(certs, unknown: bool, reason: str, details: dict) -> GeneralResult:
    if certs:
        return GeneralResult("feasible", certs[0], certs, details=details)
    if unknown:
        return GeneralResult("unknown", None, [], reason, details)
    return GeneralResult("infeasible", None, [], "", details)


def certified_root_approximation(cert: Certificate) -> Fraction:
    """p^v * zeta0: the root approximated to p-adic precision ell + v."""
    return Fraction(cert.p) ** cert.valuation_shift * cert.zeta0
