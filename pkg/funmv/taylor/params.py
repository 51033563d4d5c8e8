"""
Choice of the Taylor degree m* and the scaling parameter s

The cost of a run is about 2*sigma*n0*m*(s+1) matvecs with
s = ceil(alpha/theta_m). The cheapest surrogate for alpha is tried first:
||A||_1^sigma, then (sigma = 1 only) d_2 = ||A^2||_1^(1/2), and only when
neither is cheap enough is the full alpha_p sequence estimated.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import DEFAULT_CONFIG, resolve_tol
from ..errors import InputError
from ..linalg.normest import AlphaSequence, alpha_sequence, norm_root
from ..linalg.sparse import MatvecCounter, one_norm, scale
from .theta import theta_table

logger = logging.getLogger(__name__)

PATHS = ('norm-bound', 'd2-bound', 'full-alpha', 'zero-matrix', 'precomputed')


@dataclass
class ParamChoice:
    """Selected degree and scaling, with what the selection cost"""

    m_star: int
    s: int
    theta_cost: int
    path: str
    surrogate: float = 0.0
    overflow: bool = False
    alpha: Optional[AlphaSequence] = field(default=None, repr=False)

    def cost_bound(self, sigma, n0=1):
        """Worst-case matvecs of the Taylor passes plus the estimation cost"""
        return int(round(2 * sigma * n0 * self.m_star * (self.s + 1))) + self.theta_cost


@dataclass(eq=False)
class SpmMatrix:
    """
    S_pm = alpha_p(A^sigma)/theta_m for p(p-1)-1 <= m <= mmax, else 0

    Row p-2 holds p = 2..pmax, column m-1 holds m = 1..mmax. t_ref is the
    |t| the matrix was built for: the entries describe t_ref^(1/sigma)*A.
    """

    values: np.ndarray
    sigma: float
    tol: float
    t_ref: float = 1.0
    theta_cost: int = 0

    @property
    def pmax(self):
        return self.values.shape[0] + 1

    @property
    def mmax(self):
        return self.values.shape[1]

    def entry(self, p, m):
        return float(self.values[p - 2, m - 1])


def scaled_argument(A, t, sigma):
    """t^(1/sigma) * A: t*A for sigma = 1, t^2*A for sigma = 1/2"""
    return scale(A, t if sigma == 1 else t * t)


def _check_limits(mmax, pmax, ell):
    if not 1 <= mmax <= 60:
        raise InputError(f"mmax must lie in [1, 60], got {mmax}")
    if pmax < 2 or pmax * (pmax - 1) > mmax + 1:
        raise InputError(f"need 2 <= pmax and pmax*(pmax-1) <= mmax+1, got pmax={pmax}, mmax={mmax}")
    if ell < 1:
        raise InputError(f"ell must be a positive integer, got {ell}")


def _argmin_cost(value, thetas, mmax):
    # smallest m wins ties
    best_m, best_s = None, None
    for m in range(1, mmax + 1):
        s = math.ceil(value / thetas[m])
        if best_m is None or m * s < best_m * best_s:
            best_m, best_s = m, s
    return best_m, max(best_s, 1)


def _argmin_alpha(seq, thetas, mmax, pmax):
    best_m, best_c = None, None
    for m in range(1, mmax + 1):
        admissible = [seq.alphas[p] for p in range(2, pmax + 1) if p * (p - 1) - 1 <= m]
        if not admissible:
            continue
        c = m * math.ceil(min(admissible) / thetas[m])
        if best_m is None or c < best_c:
            best_m, best_c = m, c
    return best_m, max(best_c // best_m, 1)


def _norm_bound_limit(ell, pmax, n0, mmax):
    return 2 * ell * pmax * (pmax + 3) / (n0 * mmax)


def norm_bound_choice(A, sigma, tol, mmax=25, pmax=5, ell=2, n0=1):
    """
    (m*, s) from ||A||_1^sigma alone, or None when that bound is too loose

    Costs no matvecs. A is already multiplied by t^(1/sigma) and nonzero.
    """
    thetas = theta_table(resolve_tol(tol), mmax)
    norm = one_norm(A) ** sigma
    if norm > thetas[mmax] * (_norm_bound_limit(ell, pmax, n0, mmax) - 1):
        return None
    m_star, s = _argmin_cost(norm, thetas, mmax)
    logger.debug("parameters from ||A||^sigma = %.6g: m*=%d s=%d", norm, m_star, s)
    return ParamChoice(m_star, s, 0, 'norm-bound', surrogate=norm)


def select_parameters(A, sigma, tol, mmax=25, pmax=5, ell=2, n0=1, counter=None, config=None):
    """
    Degree and scaling for the action of cos/sinc at A^sigma

    Args:
        A: CSR matrix, already multiplied by t^(1/sigma)
        sigma: 1 or 0.5
        tol: tolerance (number or precision label)
        mmax, pmax, ell: selection limits and estimator width
        n0: number of columns of the block that will be propagated
        counter: MatvecCounter charged with the estimation cost

    Returns:
        ParamChoice
    """
    config = config or DEFAULT_CONFIG
    tol = resolve_tol(tol)
    _check_limits(mmax, pmax, ell)
    if sigma not in (1, 0.5):
        raise InputError(f"sigma must be 1 or 0.5, got {sigma}")
    if n0 < 1:
        raise InputError(f"n0 must be positive, got {n0}")

    thetas = theta_table(tol, mmax)
    norm = one_norm(A) ** sigma
    if norm == 0:
        return ParamChoice(m_star=0, s=1, theta_cost=0, path='zero-matrix')

    choice = norm_bound_choice(A, sigma, tol, mmax, pmax, ell, n0)
    if choice is not None:
        return choice

    bound = _norm_bound_limit(ell, pmax, n0, mmax)
    spent = MatvecCounter()
    try:
        if sigma == 1:
            d2 = norm_root(A, 1, 2, ell, spent, config)
            nu = spent.count
            if d2 <= thetas[mmax] * (bound - nu - 1):
                m_star, s = _argmin_cost(d2, thetas, mmax)
                logger.debug("parameters from d_2 = %.6g: m*=%d s=%d", d2, m_star, s)
                return ParamChoice(m_star, s, nu, 'd2-bound', surrogate=d2)

        seq = alpha_sequence(A, sigma, pmax, ell, spent, config)
        if seq.overflow:
            s = math.ceil(norm / thetas[mmax])
            logger.warning("alpha estimation overflowed; scaling from ||A||^sigma, s=%d", s)
            return ParamChoice(mmax, max(s, 1), spent.count, 'full-alpha',
                               surrogate=norm, overflow=True, alpha=seq)

        m_star, s = _argmin_alpha(seq, thetas, mmax, pmax)
        surrogate = min(seq.alphas[p] for p in range(2, pmax + 1) if p * (p - 1) - 1 <= m_star)
        logger.debug("parameters from alpha_p: m*=%d s=%d cost %d", m_star, s, spent.count)
        return ParamChoice(m_star, s, spent.count, 'full-alpha', surrogate=surrogate, alpha=seq)
    finally:
        if counter is not None:
            counter.add(spent.count)


def build_spm(A, sigma, tol, mmax=25, pmax=5, ell=2, t=1.0, counter=None, config=None):
    """
    Precompute S_pm for repeated selections with the same A

    The alpha sequence is estimated once for t^(1/sigma)*A; select_for_t
    rescales it for any other t.
    """
    tol = resolve_tol(tol)
    _check_limits(mmax, pmax, ell)
    if t == 0:
        raise InputError("S_pm must be built for a nonzero t")

    seq = alpha_sequence(scaled_argument(A, t, sigma), sigma, pmax, ell, counter, config)
    thetas = theta_table(tol, mmax)
    values = np.zeros((pmax - 1, mmax))
    for p in range(2, pmax + 1):
        for m in range(max(p * (p - 1) - 1, 1), mmax + 1):
            values[p - 2, m - 1] = seq.alphas[p] / thetas[m]
    return SpmMatrix(values=values, sigma=sigma, tol=tol, t_ref=float(abs(t)), theta_cost=seq.cost)


def select_for_t(S, t, mmax=None):
    """
    (m*, s, degenerate) from a precomputed S_pm

    m* is the column of the smallest admissible (p(p-1)-1 <= m) entry of
    ceil(|t|/t_ref * S) diag(1..mmax), smallest m on ties.
    """
    if mmax is not None and mmax != S.mmax:
        raise InputError(f"S_pm was built for mmax={S.mmax}, got {mmax}")
    mmax = S.mmax

    p = np.arange(2, S.pmax + 1)[:, None]
    m = np.arange(1, mmax + 1)
    admissible = p * (p - 1) - 1 <= m
    if not np.any(S.values[admissible]):
        logger.warning("S_pm has no nonzero entry; falling back to m*=%d, s=1", mmax)
        return mmax, 1, True

    factor = abs(t) / S.t_ref
    costs = np.where(admissible, np.ceil(factor * S.values) * m, np.inf)
    column_min = costs.min(axis=0)

    m_star = int(np.argmin(column_min)) + 1
    s = max(int(column_min[m_star - 1]) // m_star, 1)
    return m_star, s, False
