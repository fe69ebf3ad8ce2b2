"""Primes p with p - 1 divisible by a block of consecutive small primes.

``agp_prime_search`` draws ``p = 1 + c * M_i`` where ``M_i`` is the product
of the i-th block of n consecutive primes, with i and c uniform.  Primality
is decided by trial division for small n, by Miller-Rabin with a witness set
that is provably complete below 3.3e24, and by a Baillie-PSW style test plus
extra random rounds above that (reported as probabilistic).
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import ceil, isqrt, prod

from sympy.ntheory.primetest import is_strong_lucas_prp

from .core.arith import isqrt_ceil

TRIAL_LIMIT = 1 << 20
# Miller-Rabin with the first 13 primes as bases is correct for every
# n < 3317044064679887385961981 (Sorenson and Webster).
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
EXTRA_ROUNDS = 64

SUCCESS_SUFFIX = "is a prime that works!"
FAILURE_MESSAGE = "I have failed to find a suitable prime. Please forgive me."


def sieve(limit: int) -> list[int]:
    """All primes <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for q in range(2, isqrt(limit) + 1):
        if flags[q]:
            flags[q * q::q] = bytes(len(range(q * q, limit + 1, q)))
    return [i for i, b in enumerate(flags) if b]


def first_primes(count: int, max_limit: int = 1 << 26) -> list[int]:
    """The first ``count`` primes, growing the sieve bound by doubling."""
    limit = 64
    while True:
        ps = sieve(limit)
        if len(ps) >= count:
            return ps[:count]
        if limit >= max_limit:
            raise ValueError(f"sieve capacity exceeded: need {count} primes")
        limit = min(2 * limit, max_limit)


@dataclass(frozen=True)
class Primality:
    prime: bool
    certainty: str  # "deterministic" | "probabilistic"
    witness: str = ""

    def __bool__(self) -> bool:
        return self.prime


_SMALL = sieve(isqrt(TRIAL_LIMIT) + 1)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    """One strong-probable-prime round; False means a is a witness."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n: int, seed: int = 0) -> Primality:
    if n < 2:
        raise ValueError(f"primality is defined for n >= 2, got {n}")
    if n < TRIAL_LIMIT:
        for q in _SMALL:
            if q * q > n:
                break
            if n % q == 0:
                return Primality(n == q, "deterministic", "" if n == q else f"divisor {q}")
        return Primality(True, "deterministic")
    for q in _SMALL[:100]:
        if n % q == 0:
            return Primality(False, "deterministic", f"divisor {q}")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < MR_DETERMINISTIC_LIMIT:
        for a in MR_BASES:
            if not _mr_round(n, d, s, a):
                return Primality(False, "deterministic", f"Miller-Rabin base {a}")
        return Primality(True, "deterministic")
    if not _mr_round(n, d, s, 2):
        return Primality(False, "deterministic", "Miller-Rabin base 2")
    if not is_strong_lucas_prp(n):
        return Primality(False, "deterministic", "strong Lucas test")
    rng = random.Random(seed ^ n)
    for _ in range(EXTRA_ROUNDS):
        a = rng.randrange(2, n - 1)
        if not _mr_round(n, d, s, a):
            return Primality(False, "deterministic", f"Miller-Rabin base {a}")
    return Primality(True, "probabilistic")


def is_prime(n: int) -> bool:
    return n >= 2 and primality(n).prime


@dataclass(frozen=True)
class AgpConfig:
    n: int
    epsilon: Fraction = Fraction(1, 3)
    x0: int = 17
    ell_agp: int = 1
    seed: int | None = None
    draws: int | None = None  # overrides J; used to exercise the failure path

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 < eps < Fraction(1, 2):
            raise ValueError("epsilon must lie in (0, 1/2)")
        if self.x0 < 1 or self.ell_agp < 1:
            raise ValueError("x0 and ell_agp must be positive")


@dataclass
class PrimeSearchResult:
    status: str  # "success" | "failure"
    block_index: int
    primes: list[int]
    M_i: int
    M_L: int
    L: int
    x: int
    K: int
    J: int
    c: int | None = None
    p: int | None = None
    certainty: str | None = None
    trials: int = 0
    message: str = ""
    config: dict = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == "success"

    def size_bound_holds(self) -> bool:
        """log2 x <= max(log2 x0, 5, 1 + 5/2 log2 M_L), in integers."""
        x0 = self.config.get("x0", 17)
        return self.x <= max(x0, 32) or self.x * self.x <= 4 * self.M_L ** 5

    def to_json(self) -> dict:
        out = asdict(self)
        for k, v in list(out.items()):
            if isinstance(v, int) and not isinstance(v, bool):
                out[k] = str(v)
        out["primes"] = [str(q) for q in self.primes]
        out["config"] = {k: str(v) for k, v in self.config.items()}
        out["failure_probability"] = "empirical (AGP constants are configuration)"
        return out


_LN2_UP = Fraction(6931472, 10 ** 7)


def ln_upper(y: Fraction) -> Fraction:
    """A rational upper bound on ln(y) for y >= 1, within about 5%."""
    y = Fraction(y)
    if y < 1:
        raise ValueError("ln_upper needs y >= 1")
    z = y ** 16
    top = -(-z.numerator // z.denominator)
    return Fraction(top.bit_length(), 16) * _LN2_UP


def agp_parameters(cfg: AgpConfig, i: int, primes: list[int]) -> dict:
    n = cfg.n
    L = ceil(2 / cfg.epsilon) * cfg.ell_agp
    M_L = prod(primes[(L - 1) * n:L * n])
    M_i = prod(primes[(i - 1) * n:i * n])
    x = max(cfg.x0, 17, 1 + isqrt_ceil(M_L ** 5))
    K = (x - 1) // M_i
    J = ceil(2 * ln_upper(2 / cfg.epsilon) * ln_upper(Fraction(x)))
    return {"L": L, "M_L": M_L, "M_i": M_i, "x": x, "K": K, "J": J}


def agp_prime_search(cfg: AgpConfig, rng: random.Random | None = None) -> PrimeSearchResult:
    rng = rng or random.Random(cfg.seed)
    L = ceil(2 / cfg.epsilon) * cfg.ell_agp
    primes = first_primes(cfg.n * L)
    i = rng.randint(1, L)
    prm = agp_parameters(cfg, i, primes)
    block = primes[(i - 1) * cfg.n:i * cfg.n]
    J = cfg.draws if cfg.draws is not None else prm["J"]
    conf = {"n": cfg.n, "epsilon": cfg.epsilon, "x0": cfg.x0,
            "ell_agp": cfg.ell_agp, "seed": cfg.seed}
    res = PrimeSearchResult("failure", i, block, prm["M_i"], prm["M_L"], L,
                            prm["x"], prm["K"], J, config=conf)
    for trial in range(1, J + 1):
        c = rng.randint(1, prm["K"])
        cand = 1 + c * prm["M_i"]
        verdict = primality(cand)
        res.trials = trial
        if verdict.prime:
            res.status, res.c, res.p, res.certainty = "success", c, cand, verdict.certainty
            res.message = f"1+{c}*{'*'.join(map(str, block))} {SUCCESS_SUFFIX}"
            return res
    res.message = FAILURE_MESSAGE
    return res


def deterministic_prime_search(M: int, bound: int) -> int | None:
    """Smallest prime p = 1 mod M with p <= bound, or None."""
    if M < 2:
        raise ValueError("M must be at least 2")
    cand = 1 + M
    while cand <= bound:
        if is_prime(cand):
            return cand
        cand += M
    return None
