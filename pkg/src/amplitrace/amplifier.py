"""Amplifier bookkeeping: place sets, Hecke normalizations, period lower bounds, exponent budget."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .affine_hecke import coset_growth_ratio, double_coset_count
from .errors import ConsistencyError, InfeasibleBudget, ValidationError
from .exact import ExactPower, dot
from .rootdata import RootDatum, dominant_representative, is_integral, norm_star
from .sympair import SymmetricPair, margin

# Pairs whose H-period of tau(v, nu) is an H-side double coset volume.
GROUP_CASE_PAIRS = frozenset({"maclachlan-reid", "sl2xsl2-diag", "sl3xsl3-diag", "compact-control"})

DEFAULT_EPSILON = Fraction(1, 8)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Place:
    q: int
    congruence: tuple[int, int] | None = None  # (a, m) meaning q = a mod m

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ValidationError(f"place norm {self.q} is not prime")
        if self.congruence is not None:
            a, m = self.congruence
            if self.q % m != a % m:
                raise ValidationError(f"{self.q} is not {a} mod {m}")


def primes_below(n: int) -> list[int]:
    """Sieve of Eratosthenes: all primes < n."""
    if n < 3:
        return []
    sieve = bytearray([1]) * n
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n, p)))
    return [i for i in range(n) if sieve[i]]


def choose_places(P: int, cond: tuple[int, int] | None = None) -> list[Place]:
    """Primes q with P/2 <= q < P, optionally restricted to q = a mod m."""
    if int(P) != P or P < 2:
        raise ValidationError(f"P must be an integer >= 2, got {P}")
    if cond is not None and (cond[1] < 1):
        raise ValidationError(f"congruence modulus must be positive, got {cond[1]}")
    lo = (P + 1) // 2
    out = []
    for q in primes_below(P):
        if q < lo:
            continue
        if cond is not None and q % cond[1] != cond[0] % cond[1]:
            continue
        out.append(Place(q, cond))
    return out


def tau_normalization(rd: RootDatum, mu: Sequence, q: int) -> Fraction | ExactPower:
    """The constant value ``q^(-||mu||*)`` of tau on ``K mu K``."""
    if q < 2:
        raise ValidationError(f"q must be >= 2, got {q}")
    e = norm_star(rd, mu)
    if e.denominator == 1:
        return Fraction(1, q ** int(e))
    return ExactPower(Fraction(1), q, -e)


def tau_l2_squared(rd: RootDatum, mu: Sequence, q: int) -> Fraction:
    """``||tau(v, mu)||_2^2 = #K mu K / K * q^(-2||mu||*)``."""
    return coset_growth_ratio(rd, mu, q)


def _check_nu(pair: SymmetricPair, nu: Sequence) -> tuple[int, ...]:
    if len(nu) != pair.h.character_lattice_rank:
        raise ValidationError(f"nu must have length {pair.h.character_lattice_rank}")
    if not is_integral(nu):
        raise ValidationError(f"nu = {list(nu)} is not integral")
    nu = tuple(int(x) for x in nu)
    if not any(nu):
        raise ValidationError("nu must be a nonzero cocharacter of H")
    return nu


@dataclass(frozen=True)
class PeriodBound:
    q: int
    bound: ExactPower
    exact: ExactPower | None


def period_lower_bound(pair: SymmetricPair, nu: Sequence, q: int) -> PeriodBound:
    """Certified lower bound ``q^(2||nu||*_H - ||nu||*)`` for the H-period of tau(v, nu) at 1.

    For the group-case pairs the period equals ``#K_H nu K_H / K_H * q^(-||nu||*)``,
    which is returned as ``exact``.
    """
    nu = _check_nu(pair, nu)
    if q < 2:
        raise ValidationError(f"q must be >= 2, got {q}")
    g_norm = norm_star(pair.g, pair.embed_coweight(nu))
    h_norm = norm_star(pair.h, nu)
    bound = ExactPower(Fraction(1), q, 2 * h_norm - g_norm)
    exact = None
    if pair.label in GROUP_CASE_PAIRS:
        count = double_coset_count(pair.h, dominant_representative(pair.h, nu))(q)
        exact = ExactPower(Fraction(count), q, -g_norm)
        if exact < bound:
            raise ConsistencyError(f"exact period {exact} is below the certified bound {bound}")
    return PeriodBound(q, bound, exact)


@dataclass(frozen=True)
class AmplifierPlan:
    pair: str
    nu: tuple[int, ...]
    P: int
    S: tuple[Place, ...]
    norm_nu: Fraction
    norm_nu_H: Fraction
    support_exponent_B: Fraction
    coset_exponent_C: Fraction
    tau_l2: tuple[Fraction, ...]
    k_S_at_1: Fraction
    sup_bound: tuple[Fraction, int]  # (constant, exponent of P)
    period_bounds: tuple[PeriodBound, ...]
    degenerate: bool

    def cross_period_sum(self) -> float:
        """``sum_{v != w} bound_v * bound_w`` (float; used for reporting)."""
        vals = [float(b.bound) for b in self.period_bounds]
        return sum(vals) ** 2 - sum(x * x for x in vals)

    def cross_period_certified(self) -> bool:
        """Exact check that the cross sum is at least ``|S|(|S| - 1)``: every bound is >= 1."""
        return all(b.bound >= 1 for b in self.period_bounds)


def build_amplifier(pair: SymmetricPair, nu: Sequence, P: int,
                    rep_weights: Sequence[Sequence[int]] | None = None,
                    cond: tuple[int, int] | None = None) -> AmplifierPlan:
    nu = _check_nu(pair, nu)
    m = margin(pair, nu)
    if m < 0:
        raise ValidationError(f"nu = {list(nu)} is not a largeness witness (margin {m})")
    weights = pair.rep_weights if rep_weights is None else tuple(tuple(w) for w in rep_weights)
    if not weights:
        raise ValidationError(f"{pair.label}: no representation weights available")
    S = tuple(choose_places(P, cond))
    e_nu = pair.embed_coweight(nu)
    norm_nu = norm_star(pair.g, e_nu)
    B = Fraction(max(abs(dot(w, e_nu)) for w in weights))
    # supp k_S: |S| diagonal terms of degree <= 2||nu||* and |S|^2 cross terms
    # of degree ||nu||* at two places, each contributing O(q^(4||nu||*)) cosets.
    C = 2 + 4 * norm_nu
    tau2 = tuple(tau_l2_squared(pair.g, e_nu, v.q) for v in S)
    k1 = sum(tau2, Fraction(0))
    # Diagonal sum peaks at 1 with value k_S(1); the off-diagonal terms have
    # sup norm <= 1 and supports overlapping at most pairwise.
    sup_const = (k1 + 2) / P
    periods = tuple(period_lower_bound(pair, nu, v.q) for v in S)
    return AmplifierPlan(pair.label, nu, P, S, norm_nu, norm_star(pair.h, nu), B, C, tau2, k1,
                         (sup_const, 1), periods, not S)


# ---------------------------------------------------------------- exponent budget

@dataclass(frozen=True)
class ExponentBudget:
    A: Fraction
    delta0: Fraction
    B: Fraction | None
    eta: Fraction | None
    epsilon: Fraction
    c: Fraction
    delta: Fraction
    delta_limit: Fraction  # epsilon -> 0
    certificate: dict = field(default_factory=dict, compare=False)

    def symbolic_check(self) -> bool:
        return self.c * self.A <= self.delta0 / 2 and self.delta == self.c * (1 - self.epsilon) / 2 and self.delta > 0


def _budget_certificate(c: Fraction, A: Fraction, delta0: Fraction, delta: Fraction, epsilon: Fraction,
                        n_grid: int = 40) -> dict:
    """Check the modeled inequalities on a grid of (N, ||xi||) with N(1+||xi||) in [1e3, 1e9].

    With X = N(1+||xi||) and P = X^c: error factor P^A X^(-delta0) <= 1/2, and the
    main-term ratio P^(2-eps) / P >= X^(2 delta).  Work in logs to avoid overflow.
    """
    worst_err, worst_gap, count = -math.inf, math.inf, 0
    fc, fA, fd0, fdel, feps = map(float, (c, A, delta0, delta, epsilon))
    for i in range(n_grid):
        log_n = math.log(10) * (9 * i / (n_grid - 1))
        for j in range(n_grid):
            log_xi1 = math.log(10) * (9 * j / (n_grid - 1))
            log_x = log_n + log_xi1
            if not (math.log(1e3) - 1e-12 <= log_x <= math.log(1e9) + 1e-12):
                continue
            count += 1
            log_p = fc * log_x
            err = fA * log_p - fd0 * log_x
            worst_err = max(worst_err, err)
            gap = (1 - feps) * log_p - 2 * fdel * log_x
            worst_gap = min(worst_gap, gap)
    ok = count > 0 and worst_err <= math.log(0.5) + 1e-12 and worst_gap >= -1e-9
    return {
        "grid_points": count,
        "max_error_factor": math.exp(worst_err) if count else None,
        "min_log_ratio_margin": worst_gap if count else None,
        "pass": ok,
    }


def exponent_budget(A, delta0, B=None, eta=None, epsilon=DEFAULT_EPSILON) -> ExponentBudget:
    """Largest amplifier length ``P = X^c`` and resulting saving ``delta``."""
    A, delta0, epsilon = Fraction(A), Fraction(delta0), Fraction(epsilon)
    if delta0 <= 0:
        raise InfeasibleBudget(f"delta0 = {delta0} leaves no room for a power saving")
    if A <= 0:
        raise ValidationError(f"A must be positive, got {A}")
    if not 0 < epsilon <= Fraction(1, 4):
        raise ValidationError(f"epsilon must lie in (0, 1/4], got {epsilon}")
    c = delta0 / (2 * A)
    delta = c * (1 - epsilon) / 2
    cert = _budget_certificate(c, A, delta0, delta, epsilon)
    return ExponentBudget(A, delta0, None if B is None else Fraction(B), None if eta is None else Fraction(eta),
                          epsilon, c, delta, c / 2, cert)
