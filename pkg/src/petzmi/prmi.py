"""Petz Renyi mutual informations of bipartite states.

Three variants are computed, distinguished by which marginals of the product
reference state are optimized:

  up_up    : both arguments fixed to the true marginals,
             I = D_alpha(rho_AB || rho_A x rho_B);
  up_down  : the B argument minimized, closed form through a Schatten
             quasi-norm of a partial trace;
  down_down: both arguments minimized. For alpha in (1/2, 2] this is solved by
             alternating minimization, each half-step being the exact one-sided
             minimizer; the iteration is a fixed-point scheme whose fixed points
             coincide with the global minimizers in that range.

All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .classical import rmi_down_down as classical_rmi_down_down
from .divergences import (
    ALPHA_ONE_WINDOW,
    DivergenceValue,
    min_entropy,
    petz_divergence,
    relative_entropy,
    renyi_entropy,
)
from .errors import (
    DomainError,
    InvalidInputError,
    NumericalDegradationError,
    UnsupportedRegimeError,
)
from .linalg import (
    HermitianOperator,
    partial_trace,
    power_on_support,
    schatten_norm,
    tensor_product,
    trace_distance,
)
from .states import BipartiteState, DensityOperator, cc_state, random_density

MONOTONICITY_SLACK = 1e-11
RESTART_AGREEMENT_TOL = 1e-8


@dataclass(frozen=True)
class FixedPointConfig:
    """Controls for the alternating-minimization solver."""

    tol: float = 1e-12
    max_iter: int = 10000
    restarts: int | None = None  # None: 1 for alpha <= 1, else 8
    seed: int = 0


@dataclass(frozen=True)
class PrmiSolution:
    """Result of a doubly minimized Renyi mutual information computation.

    residual is the trace distance between sigma_a and its image under one full
    round of the fixed-point map; certified means the value is guaranteed to be
    the global minimum (fixed points are global minimizers for alpha in
    (1/2, 2], and restarts agreed where uniqueness is not known).
    """

    value: float
    alpha: float
    sigma_a: DensityOperator | None
    tau_b: DensityOperator | None
    residual: float
    iterations: int
    objective_trace: tuple[float, ...]
    certified: bool
    is_infinite: bool = False

    def as_float(self) -> float:
        return math.inf if self.is_infinite else self.value


def prmi_up_up(alpha: float, rho: BipartiteState) -> DivergenceValue:
    """D_alpha of the state against the product of its own marginals."""
    return petz_divergence(
        alpha, rho, tensor_product(rho.marginal_a, rho.marginal_b).matrix
    )


def gen_prmi_down(alpha: float, rho: BipartiteState, sigma_a) -> tuple[float, DensityOperator]:
    """min over tau_B of D_alpha(rho_AB || sigma_A x tau_B), with its minimizer.

    Valid for every alpha in (0, 1) and (1, inf): writing
    M = tr_A[rho^alpha (sigma_A^(1-alpha) x 1)], the value is
    (1/(alpha-1)) log ||M||_(1/alpha)^... i.e. (alpha/(alpha-1)) log tr[M^(1/alpha)]
    and the minimizer is tau = M^(1/alpha) / tr[M^(1/alpha)].
    """
    if alpha <= 0:
        raise DomainError("closed form requires alpha > 0")
    sigma_a = sigma_a if isinstance(sigma_a, DensityOperator) else DensityOperator(sigma_a)
    if alpha > 1:
        # finite only when supp(rho_A) <= supp(sigma_A)
        proj = power_on_support(sigma_a, 0.0).matrix
        leak = 1.0 - float(np.real(np.trace(rho.marginal_a.matrix @ proj)))
        if leak > 1e-12:
            return math.inf, None
    m = _cross_trace(power_on_support(rho, alpha).matrix, sigma_a, alpha, rho.d_a, rho.d_b)
    m_pow = power_on_support(m, 1.0 / alpha)
    norm = m_pow.trace()
    if norm <= 0:
        return math.inf, None
    tau = DensityOperator(m_pow.matrix / norm)
    value = (alpha / (alpha - 1.0)) * math.log(norm)
    return value, tau


def _cross_trace(rho_alpha: np.ndarray, sigma_a: DensityOperator, alpha: float, d_a: int, d_b: int) -> HermitianOperator:
    """tr_A[rho^alpha (sigma_A^(1-alpha) x 1_B)] for a precomputed rho^alpha."""
    s_pow = power_on_support(sigma_a, 1.0 - alpha).matrix
    r = rho_alpha.reshape(d_a, d_b, d_a, d_b)
    # contract the A legs against sigma^(1-alpha)
    return HermitianOperator(np.einsum("ibjd,ji->bd", r, s_pow))


def prmi_up_down(alpha: float, rho: BipartiteState) -> DivergenceValue:
    """min over tau_B with sigma_A fixed to the true marginal rho_A."""
    if not np.isfinite(alpha) or alpha < 0:
        raise DomainError(f"Renyi order must be a finite nonnegative real, got {alpha!r}")
    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        return prmi_up_up(1.0, rho)
    if alpha == 0:
        # D_0 against sigma_A x tau: -log of the largest eigenvalue of
        # tr_A[rho^0 (rho_A x 1)] over unit-trace tau
        proj = power_on_support(rho, 0.0).matrix
        m = _cross_trace(proj, rho.marginal_a, 0.0, rho.d_a, rho.d_b)
        top = float(np.max(m.spectrum))
        return DivergenceValue.infinite() if top <= 0 else DivergenceValue(-math.log(top))
    value, _ = gen_prmi_down(alpha, rho, rho.marginal_a)
    if value == math.inf:
        return DivergenceValue.infinite()
    return DivergenceValue(value=value)


def fixed_point_map(alpha: float, rho: BipartiteState, sigma_a: DensityOperator) -> DensityOperator:
    """One full round A -> B -> A of the alternating-minimization update."""
    _, tau = gen_prmi_down(alpha, rho, sigma_a)
    swapped = _swapped(rho)
    _, sigma_new = gen_prmi_down(alpha, swapped, tau)
    return sigma_new


def _swapped(rho: BipartiteState) -> BipartiteState:
    from .linalg import permute_factors

    m = permute_factors(rho.matrix, [rho.d_a, rho.d_b], [1, 0])
    return BipartiteState(m, rho.d_b, rho.d_a)


def _pure_amplitudes_or_none(rho: BipartiteState):
    if not rho.is_pure():
        return None
    vecs = rho.eigenvectors
    return vecs[:, 0]


def prmi_closed_form(alpha: float, rho: BipartiteState, which: str) -> float | None:
    """Known closed forms: pure states and perfectly correlated cc states.

    Returns None when no closed form applies. Used for cross-checks and for the
    alpha <= 1/2 regime where the alternating scheme is not guaranteed global.
    """
    if _pure_amplitudes_or_none(rho) is not None:
        rho_a = rho.marginal_a
        if which == "uu":
            return 2.0 * renyi_entropy(3.0 - 2.0 * alpha, rho_a)
        if which == "ud":
            if alpha == 0:
                return 2.0 * renyi_entropy(math.inf, rho_a)
            return 2.0 * renyi_entropy((2.0 - alpha) / alpha, rho_a)
        if which == "dd":
            if alpha <= 0.5:
                return (1.0 / (1.0 - alpha)) * min_entropy(rho_a)
            return 2.0 * renyi_entropy(1.0 / (2.0 * alpha - 1.0), rho_a)
    p = _copy_cc_pmf_or_none(rho)
    if p is not None:
        rho_a = rho.marginal_a
        if which == "uu":
            return renyi_entropy(2.0 - alpha, rho_a)
        if which == "ud":
            if alpha == 0:
                return renyi_entropy(math.inf, rho_a)
            return renyi_entropy(1.0 / alpha, rho_a)
        if which == "dd":
            if alpha <= 0.5:
                return (alpha / (1.0 - alpha)) * min_entropy(rho_a)
            return renyi_entropy(alpha / (2.0 * alpha - 1.0), rho_a)
    return None


def _copy_cc_pmf_or_none(rho: BipartiteState):
    if rho.d_a != rho.d_b:
        return None
    pmf = rho.diagonal_pmf_or_none()
    if pmf is None:
        return None
    table = pmf.table
    p = np.diag(table)
    if np.max(np.abs(table - np.diag(p))) > 1e-12:
        return None
    return p


def _dd_closed_form_solution(alpha: float, rho: BipartiteState) -> PrmiSolution | None:
    """Pure / copy-cc answers for alpha <= 1/2, with the known minimizers."""
    value = prmi_closed_form(alpha, rho, "dd")
    if value is None:
        return None
    sigma_a = tau_b = None
    if alpha > 0.5:
        # exponent of the optimizing marginal power differs between the cases
        if _pure_amplitudes_or_none(rho) is not None:
            expo = 1.0 / (2.0 * alpha - 1.0)
        else:
            expo = alpha / (2.0 * alpha - 1.0)
        s = power_on_support(rho.marginal_a, expo)
        sigma_a = DensityOperator(s.matrix / s.trace())
        t = power_on_support(rho.marginal_b, expo)
        tau_b = DensityOperator(t.matrix / t.trace())
    return PrmiSolution(
        value=value,
        alpha=alpha,
        sigma_a=sigma_a,
        tau_b=tau_b,
        residual=0.0,
        iterations=0,
        objective_trace=(value,),
        certified=True,
    )


def _run_fixed_point(
    alpha: float,
    rho: BipartiteState,
    sigma0: DensityOperator,
    config: FixedPointConfig,
) -> PrmiSolution:
    rho_alpha = power_on_support(rho, alpha).matrix
    swapped = _swapped(rho)
    sigma = sigma0
    trace = []
    prev = math.inf
    residual = math.inf
    iterations = config.max_iter
    for it in range(1, config.max_iter + 1):
        m = _cross_trace(rho_alpha, sigma, alpha, rho.d_a, rho.d_b)
        m_pow = power_on_support(m, 1.0 / alpha)
        norm = m_pow.trace()
        if norm <= 0:
            return PrmiSolution(
                value=math.nan, alpha=alpha, sigma_a=sigma, tau_b=None,
                residual=math.inf, iterations=it, objective_trace=tuple(trace),
                certified=False, is_infinite=True,
            )
        value = (alpha / (alpha - 1.0)) * math.log(norm)
        tau = DensityOperator(m_pow.matrix / norm)
        if value > prev + MONOTONICITY_SLACK:
            raise NumericalDegradationError(
                f"objective increased by {value - prev:.3e} at iteration {it}"
            )
        trace.append(value)
        prev = value
        _, sigma_new = gen_prmi_down(alpha, swapped, tau)
        residual = trace_distance(sigma_new, sigma)
        sigma = sigma_new
        if residual <= config.tol:
            iterations = it
            break
    value, tau = gen_prmi_down(alpha, rho, sigma)
    return PrmiSolution(
        value=value,
        alpha=alpha,
        sigma_a=sigma,
        tau_b=tau,
        residual=residual,
        iterations=iterations,
        objective_trace=tuple(trace),
        certified=False,  # filled in by the caller
    )


def _initial_points(rho: BipartiteState, restarts: int, seed: int):
    yield rho.marginal_a
    yield DensityOperator(np.eye(rho.d_a) / rho.d_a)
    rng = np.random.default_rng(seed)
    for _ in range(max(0, restarts - 2)):
        yield random_density(rho.d_a, rng)


def prmi_down_down(
    alpha: float,
    rho: BipartiteState,
    config: FixedPointConfig | None = None,
) -> PrmiSolution:
    """min over sigma_A, tau_B of D_alpha(rho_AB || sigma_A x tau_B).

    Regimes:
      alpha = 1          : the mutual information, minimizers the true marginals.
      1/2 < alpha <= 2   : alternating minimization; every fixed point is a
                           global minimizer, so a converged run is certified.
                           For alpha in (1/2, 1] the minimizer is unique and a
                           single start suffices; for alpha in (1, 2] multiple
                           starts are run and must agree.
      0 <= alpha <= 1/2  : closed forms (pure / perfectly correlated states),
                           the classical reduction for diagonal states, or an
                           exhaustive product-state search for small dimensions.
      alpha > 2          : closed forms only (fixed points need not be
                           minimizers); generic states are rejected.
    """
    if not np.isfinite(alpha) or alpha < 0:
        raise DomainError(f"Renyi order must be a finite nonnegative real, got {alpha!r}")
    config = config or FixedPointConfig()

    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        d = relative_entropy(
            rho, tensor_product(rho.marginal_a, rho.marginal_b).matrix
        )
        return PrmiSolution(
            value=d.value, alpha=alpha, sigma_a=rho.marginal_a, tau_b=rho.marginal_b,
            residual=0.0, iterations=0, objective_trace=(d.value,), certified=True,
        )

    if alpha > 2.0:
        # fixed points are not known to be minimizers here; only the closed
        # forms (pure / perfectly correlated states) remain available
        closed = _dd_closed_form_solution(alpha, rho)
        if closed is not None:
            return closed
        raise UnsupportedRegimeError(
            f"doubly minimized Renyi mutual information of a generic state is "
            f"not supported for alpha = {alpha} > 2"
        )

    if alpha > 0.5:
        restarts = config.restarts
        if restarts is None:
            restarts = 1 if alpha <= 1.0 else 8
        runs = []
        for idx, sigma0 in enumerate(_initial_points(rho, max(restarts, 1), config.seed)):
            if idx >= max(restarts, 1):
                break
            runs.append(_run_fixed_point(alpha, rho, sigma0, config))
        finite = [r for r in runs if not r.is_infinite]
        if not finite:
            return runs[0]
        best = min(finite, key=lambda r: r.value)
        converged = best.residual <= 10 * config.tol
        agree = all(
            r.is_infinite or abs(r.value - best.value) <= RESTART_AGREEMENT_TOL
            for r in runs
        )
        certified = converged and (alpha <= 1.0 or agree)
        return replace(best, certified=certified)

    # alpha in [0, 1/2]
    closed = _dd_closed_form_solution(alpha, rho)
    if closed is not None:
        return closed
    pmf = rho.diagonal_pmf_or_none()
    if pmf is not None:
        value, r_opt, q_opt = classical_rmi_down_down(alpha, pmf)
        return PrmiSolution(
            value=value, alpha=alpha,
            sigma_a=DensityOperator(np.diag(r_opt)),
            tau_b=DensityOperator(np.diag(q_opt)),
            residual=0.0, iterations=0, objective_trace=(value,), certified=True,
        )
    if rho.d_a <= 3 and rho.d_b <= 3:
        from .oracle import brute_force_dd

        value, sigma_a, tau_b = brute_force_dd(alpha, rho)
        return PrmiSolution(
            value=value, alpha=alpha, sigma_a=sigma_a, tau_b=tau_b,
            residual=0.0, iterations=0, objective_trace=(value,), certified=False,
        )
    raise UnsupportedRegimeError(
        "alpha <= 1/2 is only supported for pure, classical, or low-dimensional states"
    )


def prmi(alpha: float, rho: BipartiteState, which: str, config: FixedPointConfig | None = None):
    """Dispatch on the variant name: 'uu', 'ud', or 'dd'."""
    if which == "uu":
        return prmi_up_up(alpha, rho)
    if which == "ud":
        return prmi_up_down(alpha, rho)
    if which == "dd":
        return prmi_down_down(alpha, rho, config)
    raise InvalidInputError(f"unknown variant {which!r}; expected 'uu', 'ud', or 'dd'")
