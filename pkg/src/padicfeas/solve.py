"""Dispatch a feasibility question to the cheapest applicable solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .binomial import explain_binomial
from .certify import Budget, Certificate, decide_general
from .core.sparse import SparsePoly
from .trinomial import (Deferred, degenerate_rational_root, decide_trinomial,
                        discriminant_vanishes, TrinomialInstance)

GENERAL_P_LIMIT = 10 ** 7


@dataclass
class Decision:
    status: str  # "feasible" | "infeasible" | "unknown"
    method: str
    details: dict = field(default_factory=dict)
    certificate: Certificate | None = None
    root_count: int | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def _status(ok: bool) -> str:
    return "feasible" if ok else "infeasible"


def _attach_certificate(dec: Decision, f: SparsePoly, p: int, budget: Budget | None,
                        ell: int | None) -> Decision:
    if dec.feasible and p <= GENERAL_P_LIMIT and not f.is_zero:
        res = decide_general(f, p, budget, ell=ell)
        dec.certificate = res.certificate
        if res.certificate is None:
            dec.details["certificate_note"] = res.reason or "no certificate found"
    return dec


def decide(f: SparsePoly, p: int, budget: Budget | None = None, *,
           ell: int | None = None, with_certificate: bool = True) -> Decision:
    """Decide whether f has a root in Q_p."""
    budget = budget or Budget()
    if len(f) <= 2:
        rep = explain_binomial(f, p)
        dec = Decision(_status(rep.feasible), "binomial", rep.details())
        return _attach_certificate(dec, f, p, budget, ell) if with_certificate else dec
    if len(f) == 3:
        tri = decide_trinomial(f, p)
        if not isinstance(tri, Deferred):
            dec = Decision(_status(tri.feasible), tri.method, {
                "lower_binomials": tri.details}, root_count=tri.root_count)
            return _attach_certificate(dec, f, p, budget, ell) if with_certificate else dec
        inst = TrinomialInstance.from_poly(f, p)
        if gcd(inst.a2, inst.a3) == 1 and discriminant_vanishes(
                inst.c1, inst.c2, inst.c3, inst.a2, inst.a3):
            zeta = degenerate_rational_root(f)
            dec = Decision("feasible", "trinomial-degenerate",
                           {"rational_root": f"{zeta.numerator}/{zeta.denominator}",
                            "deferred": tri.reason})
            return _attach_certificate(dec, f, p, budget, ell) if with_certificate else dec
        deferred_reason = tri.reason
    else:
        deferred_reason = None
    if p > GENERAL_P_LIMIT:
        return Decision("unknown", "general",
                        {"reason": f"p above the search limit {GENERAL_P_LIMIT}"})
    res = decide_general(f, p, budget, ell=ell)
    details = dict(res.details)
    if deferred_reason:
        details["deferred"] = deferred_reason
    if res.reason:
        details["reason"] = res.reason
    return Decision(res.status, "general", details, res.certificate)
