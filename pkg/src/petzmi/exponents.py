"""Direct error exponents of testing a bipartite state against product states.

The exponent of the type-I error, under an exponential constraint e^(-nR) on
the type-II error against all (iid) product alternatives, is

    E(R) = sup over s in (1/2, 1) of ((1-s)/s) (I_s - R),

where I_s is the doubly minimized Renyi mutual information. The formula is an
equality for rates above a threshold R_(1/2) and E(R) > 0 exactly when R is
below the mutual information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divergences import relative_entropy_variance
from .errors import DomainError, UnsupportedRegimeError
from .linalg import log_on_support, power_on_support, tensor_product
from .prmi import FixedPointConfig, PrmiSolution, prmi_down_down
from .states import BipartiteState

ALPHA_ONE_DERIVATIVE_WINDOW = 1e-4


@dataclass(frozen=True)
class ExponentReport:
    """Direct exponent at a given type-II rate.

    guaranteed_exact is set when the rate exceeds the threshold R_(1/2), above
    which the variational formula is known to equal the true exponent.
    """

    rate: float
    exponent: float
    s_star: float | None
    mutual_information: float
    r_half: float
    guaranteed_exact: bool


@dataclass(frozen=True)
class RateCurvePoint:
    s: float
    rate: float
    exponent: float


def _mutual_information_variance(rho: BipartiteState) -> float:
    product = tensor_product(rho.marginal_a, rho.marginal_b).matrix
    return relative_entropy_variance(rho, product)


def alpha_derivative(alpha: float, rho: BipartiteState, solution: PrmiSolution | None = None,
                     config: FixedPointConfig | None = None) -> float:
    """d/d alpha of the doubly minimized Renyi mutual information.

    By the envelope theorem the minimizers may be held fixed, so this is the
    alpha-derivative of D_alpha(rho || sigma* x tau*), evaluated analytically:
    with Q = tr[rho^alpha omega^(1-alpha)],
      dD/dalpha = -log Q / (alpha-1)^2 + Q' / (Q (alpha-1)),
      Q' = tr[rho^alpha log(rho) omega^(1-alpha)] - tr[rho^alpha omega^(1-alpha) log(omega)].
    At alpha = 1 the derivative equals half the relative-entropy variance to the
    product of the marginals.
    """
    if abs(alpha - 1.0) <= ALPHA_ONE_DERIVATIVE_WINDOW:
        return 0.5 * _mutual_information_variance(rho)
    if solution is None:
        solution = prmi_down_down(alpha, rho, config)
    omega = tensor_product(solution.sigma_a, solution.tau_b)
    rho_a = power_on_support(rho, alpha).matrix
    om_b = power_on_support(omega, 1.0 - alpha).matrix
    log_rho = log_on_support(rho).matrix
    log_om = log_on_support(omega).matrix
    q = float(np.real(np.trace(rho_a @ om_b)))
    q_prime = float(np.real(np.trace(rho_a @ log_rho @ om_b))) - float(
        np.real(np.trace(rho_a @ om_b @ log_om))
    )
    return -math.log(q) / (alpha - 1.0) ** 2 + q_prime / (q * (alpha - 1.0))


class _PrmiCache:
    """Memoized I_s evaluations sharing one solver configuration."""

    def __init__(self, rho: BipartiteState, config: FixedPointConfig | None = None):
        self.rho = rho
        self.config = config
        self._values: dict[float, PrmiSolution] = {}

    def solution(self, s: float) -> PrmiSolution:
        if s not in self._values:
            self._values[s] = prmi_down_down(s, self.rho, self.config)
        return self._values[s]

    def value(self, s: float) -> float:
        return self.solution(s).as_float()


def r_half_threshold(rho: BipartiteState, cache: _PrmiCache | None = None) -> float:
    """The rate threshold R_(1/2) = I_(1/2) - (1/4) d/ds I_s at s = 1/2+.

    Both the value and the one-sided derivative are extrapolated to s = 1/2 from
    the right with a two-point Richardson step, then clamped into the a-priori
    interval [I_0, I_(1/2)] (with 0 as a trivial lower bound when I_0 is not
    computable for the state at hand).
    """
    cache = cache or _PrmiCache(rho)
    h = 1e-3
    i_h = cache.value(0.5 + h)
    i_2h = cache.value(0.5 + 2 * h)
    i_half = 2 * i_h - i_2h
    d_h = alpha_derivative(0.5 + h, rho, cache.solution(0.5 + h))
    d_2h = alpha_derivative(0.5 + 2 * h, rho, cache.solution(0.5 + 2 * h))
    d_half = 2 * d_h - d_2h
    r = i_half - 0.25 * d_half
    try:
        i_zero = prmi_down_down(0.0, rho, cache.config).as_float()
    except UnsupportedRegimeError:
        i_zero = 0.0
    if not np.isfinite(i_zero):
        i_zero = 0.0
    return float(min(max(r, i_zero), i_half))


def _golden_section_max(f, lo: float, hi: float, iters: int = 60) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal function."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def direct_exponent(rho: BipartiteState, rate: float,
                    config: FixedPointConfig | None = None) -> ExponentReport:
    """sup over s in (1/2, 1) of ((1-s)/s)(I_s - rate).

    The objective is unimodal in s (its derivative is (rate - psi(s))/s^2 with
    psi increasing), so golden-section search applies. The exponent is zero
    exactly when the rate is at least the mutual information.
    """
    if rate < 0:
        raise DomainError("rate must be nonnegative")
    cache = _PrmiCache(rho, config)
    i_one = cache.value(1.0)
    r_half = r_half_threshold(rho, cache)
    guaranteed = rate > r_half
    if rate >= i_one:
        return ExponentReport(
            rate=rate, exponent=0.0, s_star=None,
            mutual_information=i_one, r_half=r_half, guaranteed_exact=guaranteed,
        )

    def objective(s: float) -> float:
        return ((1.0 - s) / s) * (cache.value(s) - rate)

    lo, hi = 0.5 + 1e-4, 1.0 - 1e-4
    s_star, best = _golden_section_max(objective, lo, hi)
    for s in (lo, hi):
        v = objective(s)
        if v > best:
            s_star, best = s, v
    return ExponentReport(
        rate=rate, exponent=max(best, 0.0), s_star=s_star,
        mutual_information=i_one, r_half=r_half, guaranteed_exact=guaranteed,
    )


def rate_curve(rho: BipartiteState, s_values,
               config: FixedPointConfig | None = None) -> list[RateCurvePoint]:
    """Parametric (rate, exponent) curve.

    At parameter s the optimizing rate is R(s) = I_s - s(1-s) dI/ds and the
    exponent there is (1-s)^2 dI/ds; the rate increases toward the mutual
    information as s -> 1 while the exponent decays to zero.
    """
    cache = _PrmiCache(rho, config)
    points = []
    for s in s_values:
        if not 0.5 < s < 1.0:
            raise DomainError(f"curve parameter must lie in (1/2, 1), got {s}")
        sol = cache.solution(s)
        d = alpha_derivative(s, rho, sol)
        points.append(RateCurvePoint(
            s=float(s),
            rate=sol.as_float() - s * (1.0 - s) * d,
            exponent=(1.0 - s) ** 2 * d,
        ))
    return points
