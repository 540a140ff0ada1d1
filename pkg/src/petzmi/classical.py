"""Classical Renyi divergences and Renyi mutual informations of joint pmfs.

These serve both as standalone functionality for classical-classical inputs and
as independent cross-checks for the quantum code paths on commuting states.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .divergences import ALPHA_ONE_WINDOW, DivergenceValue
from .errors import DomainError, InvalidInputError, UnsupportedRegimeError
from .states import Pmf


def _as_pmf_vector(p) -> np.ndarray:
    v = np.asarray(p, dtype=float).reshape(-1)
    if np.min(v) < -1e-12:
        raise InvalidInputError("probability vector has negative entries")
    return np.clip(v, 0.0, None)


def classical_divergence(alpha: float, p, q) -> DivergenceValue:
    """Classical Renyi divergence D_alpha(p || q), natural log."""
    if not np.isfinite(alpha) or alpha < 0:
        raise DomainError(f"Renyi order must be a finite nonnegative real, got {alpha!r}")
    p = _as_pmf_vector(p)
    q = _as_pmf_vector(q)
    if p.size != q.size:
        raise InvalidInputError("pmf supports must have equal size")
    sp = p > 0
    sq = q > 0
    if alpha < 1:
        if not np.any(sp & sq):
            return DivergenceValue.infinite()
    elif np.any(sp & ~sq):
        return DivergenceValue.infinite()
    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        mask = sp
        return DivergenceValue(value=float(np.sum(p[mask] * np.log(p[mask] / q[mask]))))
    mask = sp & sq
    if alpha == 0:
        return DivergenceValue(value=-math.log(float(np.sum(q[sp]))))
    s = float(np.sum(p[mask] ** alpha * q[mask] ** (1.0 - alpha)))
    return DivergenceValue(value=math.log(s) / (alpha - 1.0), q_value=s)


def mutual_information(pmf: Pmf) -> float:
    table = pmf.table
    prod = np.outer(pmf.marginal_x, pmf.marginal_y)
    mask = table > 0
    return float(np.sum(table[mask] * np.log(table[mask] / prod[mask])))


def rmi_up_up(alpha: float, pmf: Pmf) -> DivergenceValue:
    """I_alpha^(up,up): divergence to the product of the true marginals."""
    return classical_divergence(alpha, pmf.table.reshape(-1), np.outer(pmf.marginal_x, pmf.marginal_y).reshape(-1))


def _down_value_and_optimal_q(alpha: float, table: np.ndarray, r: np.ndarray):
    """Given a candidate first-argument marginal r, the optimal second-argument
    pmf and the resulting divergence value for fixed r.

    m_y = sum_x P(x,y)^alpha r(x)^(1-alpha); the optimum is q ~ m^(1/alpha) and
    the value is (alpha/(alpha-1)) log ||m||_(1/alpha)^(1/alpha) ... expressed
    below directly through the 1/alpha-quasi-norm of m.
    """
    with np.errstate(divide="ignore"):
        ra = np.where(r > 0, r ** (1.0 - alpha), 0.0)
    m = (table**alpha * ra[:, None]).sum(axis=0)
    s = float(np.sum(m ** (1.0 / alpha)))
    q = m ** (1.0 / alpha) / s
    value = (alpha / (alpha - 1.0)) * math.log(s)
    return value, q


def rmi_down_down(alpha: float, pmf: Pmf, tol: float = 1e-12, max_iter: int = 10000):
    """Doubly minimized classical Renyi mutual information
    min_{r, q} D_alpha(P || r x q).

    For alpha > 1/2 this alternates the two closed-form one-sided minimizations,
    which monotonically decreases the objective. For alpha <= 1/2 the objective
    can have non-interior optima; a dense simplex grid with local refinement is
    used instead (alphabets of size <= 3 only).

    Returns (value, r, q).
    """
    if not np.isfinite(alpha) or alpha < 0:
        raise DomainError(f"Renyi order must be a finite nonnegative real, got {alpha!r}")
    table = pmf.table
    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        return mutual_information(pmf), pmf.marginal_x.copy(), pmf.marginal_y.copy()
    if alpha > 0.5:
        r = pmf.marginal_x.copy()
        prev = math.inf
        for _ in range(max_iter):
            val, q = _down_value_and_optimal_q(alpha, table, r)
            _, r_new = _down_value_and_optimal_q(alpha, table.T, q)
            if abs(val - prev) <= tol and np.max(np.abs(r_new - r)) <= tol:
                r = r_new
                break
            prev = val
            r = r_new
        val, q = _down_value_and_optimal_q(alpha, table, r)
        return val, r, q
    return _down_down_small_alpha(alpha, table)


def _simplex_grid(dim: int, steps: int):
    """All pmfs on `dim` points with entries i/steps."""
    for combo in itertools.combinations_with_replacement(range(dim), steps):
        counts = np.bincount(combo, minlength=dim)
        yield counts / steps


def _down_down_small_alpha(alpha: float, table: np.ndarray):
    d = table.shape[0]
    if d > 3:
        raise UnsupportedRegimeError(
            "exhaustive simplex search for alpha <= 1/2 is limited to alphabets of size <= 3"
        )

    def value_for_r(r):
        if alpha == 0:
            # D_0(P || r x q) = -log sum over supp(P) of r(x) q(y); optimal over q
            # is the best column mass, i.e. -log max_y sum_{x: P(x,y)>0} r(x)
            col = np.where(table > 0, r[:, None], 0.0).sum(axis=0)
            best = float(np.max(col))
            return math.inf if best <= 0 else -math.log(best), None
        return _down_value_and_optimal_q(alpha, table, r)

    best_val, best_r, best_q = math.inf, None, None
    for r in _simplex_grid(d, 60):
        val, q = value_for_r(r)
        if val < best_val:
            best_val, best_r, best_q = val, r, q
    # local refinement: shrink a box around the best point twice
    width = 1.0 / 60
    for _ in range(3):
        base = best_r
        for delta in itertools.product(np.linspace(-width, width, 9), repeat=d):
            r = base + np.asarray(delta)
            if np.min(r) < 0:
                continue
            s = r.sum()
            if s <= 0:
                continue
            r = r / s
            val, q = value_for_r(r)
            if val < best_val:
                best_val, best_r, best_q = val, r, q
        width /= 4
    if best_q is None and alpha == 0:
        col = np.where(table > 0, best_r[:, None], 0.0).sum(axis=0)
        best_q = np.zeros(table.shape[1])
        best_q[int(np.argmax(col))] = 1.0
    return best_val, best_r, best_q


def rmi_up_down(alpha: float, pmf: Pmf) -> float:
    """I_alpha^(up,down): first marginal fixed to the true one, second minimized."""
    if abs(alpha - 1.0) <= ALPHA_ONE_WINDOW:
        return mutual_information(pmf)
    if alpha <= 0:
        raise DomainError("closed form requires alpha > 0")
    val, _ = _down_value_and_optimal_q(alpha, pmf.table, pmf.marginal_x)
    return val
