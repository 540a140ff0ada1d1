"""Renyi divergences of density-operator pairs and Renyi entropies.

Both the standard (Petz) and the minimal (sandwiched) quantum Renyi divergence
are implemented, together with the relative entropy, the relative-entropy
variance, and the Renyi entropy for all real orders including the limits.

Infinite values are represented explicitly by DivergenceValue.is_infinite; no
float('inf') ever enters an arithmetic expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError
from .linalg import (
    HermitianOperator,
    default_cutoff,
    log_on_support,
    power_on_support,
    support_projector,
)
from .states import DensityOperator

ALPHA_ONE_WINDOW = 1e-6
SUPPORT_OVERLAP_TOL = 1e-10


@dataclass(frozen=True)
class DivergenceValue:
    """A divergence value that may be +infinity.

    `q_value` carries the underlying trace functional Q when finite and
    meaningful (None otherwise).
    """

    value: float
    is_infinite: bool = False
    q_value: float | None = None

    def as_float(self) -> float:
        return math.inf if self.is_infinite else self.value

    @staticmethod
    def infinite() -> "DivergenceValue":
        return DivergenceValue(value=math.nan, is_infinite=True)


def _check_order(alpha: float) -> None:
    if not np.isfinite(alpha) or alpha < 0:
        raise DomainError(f"Renyi order must be a finite nonnegative real, got {alpha!r}")


def _as_density(op) -> DensityOperator:
    return op if isinstance(op, DensityOperator) else DensityOperator(op)


def dominated(rho: DensityOperator, sigma: DensityOperator) -> bool:
    """Whether supp(rho) is contained in supp(sigma), numerically."""
    proj = support_projector(sigma).matrix
    leak = np.real(np.trace(rho.matrix @ (np.eye(sigma.dim) - proj)))
    return leak <= SUPPORT_OVERLAP_TOL


def orthogonal(rho: DensityOperator, sigma: DensityOperator) -> bool:
    """Whether the supports of rho and sigma are (numerically) orthogonal."""
    pr = support_projector(rho).matrix
    ps = support_projector(sigma).matrix
    return float(np.real(np.trace(pr @ ps))) <= SUPPORT_OVERLAP_TOL


def _finite_regime(alpha: float, rho: DensityOperator, sigma: DensityOperator) -> bool:
    if alpha < 1:
        return not orthogonal(rho, sigma)
    return dominated(rho, sigma)


def relative_entropy(rho, sigma) -> DivergenceValue:
    """Umegaki relative entropy tr[rho (log rho - log sigma)], natural log."""
    rho = _as_density(rho)
    sigma = _as_density(sigma)
    if rho.dim != sigma.dim:
        raise InvalidInputError("states must have equal dimension")
    if not dominated(rho, sigma):
        return DivergenceValue.infinite()
    diff = log_on_support(rho).matrix - log_on_support(sigma).matrix
    val = float(np.real(np.trace(rho.matrix @ diff)))
    return DivergenceValue(value=val)


def relative_entropy_variance(rho, sigma) -> float:
    """V(rho || sigma) = tr[rho (log rho - log sigma - D)^2].

    Requires supp(rho) <= supp(sigma). Computed as ||(log rho - log sigma)
    sqrt(rho)||_F^2 - D^2, which is exact on the support.
    """
    rho = _as_density(rho)
    sigma = _as_density(sigma)
    d = relative_entropy(rho, sigma)
    if d.is_infinite:
        raise DomainError("variance undefined: supp(rho) not contained in supp(sigma)")
    diff = log_on_support(rho).matrix - log_on_support(sigma).matrix
    root = power_on_support(rho, 0.5).matrix
    second_moment = float(np.linalg.norm(diff @ root, "fro") ** 2)
    return second_moment - d.value**2


def petz_q(alpha: float, rho, sigma) -> float:
    """The trace functional Q_alpha = tr[rho^alpha sigma^(1-alpha)]."""
    rho = _as_density(rho)
    sigma = _as_density(sigma)
    ra = power_on_support(rho, alpha).matrix
    sb = power_on_support(sigma, 1.0 - alpha).matrix
    return float(np.real(np.trace(ra @ sb)))


def petz_divergence(alpha: float, rho, sigma) -> DivergenceValue:
    """Petz Renyi divergence D_alpha(rho || sigma), natural log.

    Finite iff (alpha < 1 and the states are not orthogonal) or
    supp(rho) <= supp(sigma); alpha = 1 is the relative entropy, alpha = 0 is
    -log tr[rho^0 sigma].
    """
    _check_order(alpha)
    rho = _as_density(rho)
    sigma = _as_density(sigma)
    if rho.dim != sigma.dim:
        raise InvalidInputError("states must have equal dimension")
    if not _finite_regime(alpha, rho, sigma):
        return DivergenceValue.infinite()
    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        return relative_entropy(rho, sigma)
    q = petz_q(alpha, rho, sigma)
    return DivergenceValue(value=math.log(q) / (alpha - 1.0), q_value=q)


def sandwiched_q(alpha: float, rho, sigma) -> float:
    """Q~_alpha = tr[(sigma^((1-alpha)/2alpha) rho sigma^((1-alpha)/2alpha))^alpha]."""
    rho = _as_density(rho)
    sigma = _as_density(sigma)
    exponent = (1.0 - alpha) / (2.0 * alpha)
    s_pow = power_on_support(sigma, exponent).matrix
    inner = HermitianOperator(s_pow @ rho.matrix @ s_pow)
    return float(np.real(np.trace(power_on_support(inner, alpha).matrix)))


def sandwiched_divergence(alpha: float, rho, sigma) -> DivergenceValue:
    """Sandwiched Renyi divergence, natural log. Same finiteness rule as the
    Petz divergence; alpha = 1 is the relative entropy."""
    _check_order(alpha)
    if alpha == 0:
        raise DomainError("sandwiched divergence requires alpha > 0")
    rho = _as_density(rho)
    sigma = _as_density(sigma)
    if rho.dim != sigma.dim:
        raise InvalidInputError("states must have equal dimension")
    if not _finite_regime(alpha, rho, sigma):
        return DivergenceValue.infinite()
    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        return relative_entropy(rho, sigma)
    q = sandwiched_q(alpha, rho, sigma)
    return DivergenceValue(value=math.log(q) / (alpha - 1.0), q_value=q)


def renyi_entropy(alpha: float, rho) -> float:
    """Renyi entropy H_alpha(rho) = (1/(1-alpha)) log tr[rho^alpha], natural log.

    Accepts any real alpha as well as +-inf:
      alpha = 1 is the von Neumann entropy,
      alpha = +inf is -log lambda_max,
      alpha = -inf is -log lambda_min (over the support),
      negative alpha uses powers taken on the support.
    """
    rho = _as_density(rho)
    cutoff = default_cutoff(rho)
    probs = np.clip(rho.spectrum, 0.0, None)
    probs = probs[probs > cutoff]
    if alpha == math.inf:
        return -math.log(float(probs.max()))
    if alpha == -math.inf:
        return -math.log(float(probs.min()))
    if not np.isfinite(alpha):
        raise DomainError(f"invalid Renyi entropy order {alpha!r}")
    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        return float(-np.sum(probs * np.log(probs)))
    # max-shifted evaluation: direct probs**alpha under/overflows for large |alpha|
    ref = probs.max() if alpha > 0 else probs.min()
    log_sum = alpha * math.log(ref) + math.log(float(np.sum((probs / ref) ** alpha)))
    return log_sum / (1.0 - alpha)


def min_entropy(rho) -> float:
    return renyi_entropy(math.inf, rho)
