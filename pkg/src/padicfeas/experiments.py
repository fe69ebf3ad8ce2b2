"""Batch experiments: discriminant density and the SAT-to-gadget pipeline."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .certify import (Budget, GeneralResult, decide_general, exceptional_set_report,
                      verify_certificate)
from .core.sparse import SparsePoly
from .hardness import (CnfFormula, PlaistedBasis, brute_force_sat, final_gadget,
                       reduce_cnf, sos_combine, unity_root_exists)
from .primegen import AgpConfig, agp_prime_search, deterministic_prime_search, sieve


# --------------------------------------------------------------------------
# density of the complement of the exceptional set
# --------------------------------------------------------------------------


def _density_factors(d: int, m: int, H: int) -> tuple[float, float]:
    return float(1 - Fraction((2 * d - 1) * m, H)), 1 - d * math.log2(d * m * H) / H


def density_lower_bound(d: int, m: int, H: int) -> float:
    """(1 - (2d-1)m/H)(1 - d log2(dmH)/H); the log makes it a float."""
    first, second = _density_factors(d, m, H)
    return first * second


@dataclass
class DensityReport:
    support: list[int]
    H: int
    samples: int
    seed: int
    hits: int
    estimate: float
    sigma: float
    bound: float
    example_variant_bound: float
    passes: bool
    vacuous: bool
    content_stripped: int = 0  # samples where p divided every coefficient

    def to_json(self) -> dict:
        return {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                for k, v in self.__dict__.items()}


def run_density(support, H: int, samples: int, seed: int = 0) -> DensityReport:
    """Monte-Carlo estimate of the fraction of (f, p) with p not dividing D_A(f).

    Coefficients are uniform nonzero integers in [-H, H]; p is a uniform
    prime <= H.  Each sample uses its own generator seeded from the master
    seed and the sample index, so runs are reproducible sample by sample.
    """
    A = sorted(set(int(a) for a in support))
    if len(A) < 2 or A[0] < 0:
        raise ValueError("support needs at least two distinct non-negative exponents")
    if H < 2:
        raise ValueError("H must be at least 2")
    primes = sieve(H)
    hits = stripped = 0
    for k in range(samples):
        rng = random.Random(f"{seed}:{k}")
        coeffs = []
        for _ in A:
            c = 0
            while c == 0:
                c = rng.randint(-H, H)
            coeffs.append(c)
        f = SparsePoly(tuple(zip(A, coeffs)))
        p = rng.choice(primes)
        rep = exceptional_set_report(f, p)
        stripped += rep["stripped_power"] > 0
        if not rep["in_exceptional_set"]:
            hits += 1
    est = hits / samples
    sigma = math.sqrt(max(est * (1 - est), 0.0) / samples)
    d, m = A[-1], len(A)
    bound = density_lower_bound(d, m, H)
    # Either factor at or below zero makes the bound say nothing (two
    # negative factors would multiply to a meaningless positive value).
    vacuous = min(_density_factors(d, m, H)) <= 0
    # Also report the tighter variant with first factor (1 - (2d-1)/H),
    # i.e. without the factor m, for comparison.
    variant = (1 - (2 * d - 1) / H) * (1 - d * math.log2(d * m * H) / H)
    return DensityReport(A, H, samples, seed, hits, est, sigma, bound, variant,
                         vacuous or est >= bound - 3 * sigma, vacuous, stripped)


# --------------------------------------------------------------------------
# end-to-end pipeline
# --------------------------------------------------------------------------


PIPELINE_P_LIMIT = 10 ** 8


class StageError(RuntimeError):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"{stage}: {message}")


@dataclass
class PipelineReport:
    formula: CnfFormula
    basis: list[int]
    D: int
    p: int
    status: str
    certificate: dict | None
    certificate_verified: bool | None
    sat_brute_force: bool | None
    unity_oracle: bool
    agree: bool | None
    reason: str
    gadget_terms: int
    gadget_degree: int
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "formula": self.formula.to_dimacs(),
            "basis": [str(q) for q in self.basis],
            "D_P": str(self.D),
            "p": str(self.p),
            "status": self.status,
            "certificate": self.certificate,
            "certificate_verified": self.certificate_verified,
            "sat_brute_force": self.sat_brute_force,
            "unity_oracle": self.unity_oracle,
            "agree": self.agree,
            "reason": self.reason,
            "gadget_terms": self.gadget_terms,
            "gadget_degree": self.gadget_degree,
            "timings": self.timings,
        }


def run_pipeline(formula: CnfFormula, *, seed: int | None = None, unity_cap: int = 10 ** 5,
                 budget: Budget | None = None, ell: int | None = 1,
                 prime_mode: str = "deterministic",
                 p_limit: int = PIPELINE_P_LIMIT) -> PipelineReport:
    """prime -> reduction -> sum of squares -> gadget -> p-adic decision.

    ``prime_mode="deterministic"`` uses the first n primes as basis and the
    smallest prime = 1 mod D_P.  ``prime_mode="agp"`` draws the basis block
    and the prime from the randomized search with the given seed.
    ``ell`` is the certificate precision; the default 1 asks for the least
    precision Hensel's lemma accepts, which keeps gadget certificates small.
    Primes above ``p_limit`` skip the p-adic search and report "unknown":
    root finding mod p on a gadget of degree 4 D_P is out of reach there.
    """
    n = max(formula.n, 1)
    times = {}
    t0 = time.perf_counter()
    if prime_mode == "agp":
        res = agp_prime_search(AgpConfig(n=n, seed=seed))
        if not res.success:
            raise StageError("primegen", res.message)
        basis, p = PlaistedBasis(tuple(res.primes)), res.p
    elif prime_mode == "deterministic":
        basis = PlaistedBasis.first(n)
        if basis.D > unity_cap:
            raise StageError("primegen", f"unity cap exceeded: D_P = {basis.D}")
        p = deterministic_prime_search(basis.D, basis.D * 10 ** 6)
        if p is None:
            raise StageError("primegen", "no prime = 1 mod D_P below the search bound")
    else:
        raise ValueError(f"unknown prime mode {prime_mode!r}")
    D = basis.D
    if D > unity_cap:
        raise StageError("reduce", f"unity cap exceeded: D_P = {D} > {unity_cap}")
    times["primegen"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    red = reduce_cnf(formula, basis)
    combined = sos_combine(red.system + [red.unity])
    gadget = final_gadget(combined, D, p)
    times["reduce"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    if p > p_limit:
        result = GeneralResult("unknown", None, [], f"p = {p} above the pipeline limit {p_limit}")
    else:
        result = decide_general(gadget, p, budget, ell=ell)
    times["decide"] = time.perf_counter() - t0
    oracle = unity_root_exists(red.system, D, p, unity_cap) is not None
    sat = None
    if formula.n <= 20:
        sat = brute_force_sat(formula) is not None
    cert = result.certificate
    verified = verify_certificate(gadget, p, cert) if cert is not None else None
    agree = None
    if sat is not None and result.status != "unknown":
        agree = sat == oracle == (result.status == "feasible")
    return PipelineReport(formula, list(basis.primes), D, p, result.status,
                          cert.to_json() if cert else None, verified, sat, oracle, agree,
                          result.reason, len(gadget), gadget.degree, times)
