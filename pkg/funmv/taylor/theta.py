"""
Forward-error bound of the truncated cosine series and its theta_m table

rho_m(x) = sum_{j>m} x^(2j)/(2j)! bounds the error of the degree-m
truncated Taylor series of cos, cosh, sinc and sinch at any matrix whose
alpha_p is at most x. theta_m is the largest x with rho_m(x) <= tol, so
the tables are solved here for any tolerance instead of being hardcoded.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize

from ..config import PRECISIONS, resolve_tol
from ..errors import InputError

MAX_DEGREE = 60

# Relative width of the final bisection bracket
_BISECT_RTOL = 1e-10


def rho(m, theta):
    """
    Tail sum rho_m(theta), summed term by term

    Summation stops once a term falls below 1e-30 of the running sum.
    Returns +inf when theta^(2(m+1)) or the sum overflows.
    """
    if theta < 0:
        raise InputError(f"theta must be nonnegative, got {theta}")
    if m < 0:
        raise InputError(f"degree must be nonnegative, got {m}")
    if theta == 0:
        return 0.0

    j = m + 1
    if 2 * j * math.log(theta) > math.log(np.finfo(float).max):
        return math.inf

    # theta^(2j)/(2j)! as an interleaved product so nothing overflows early
    term = 1.0
    for i in range(1, 2 * j + 1):
        term *= theta / i

    total = term
    theta2 = theta * theta
    while term != 0.0:
        term *= theta2 / ((2 * j + 1) * (2 * j + 2))
        j += 1
        total += term
        if not math.isfinite(total):
            return math.inf
        if term < 1e-30 * (total + 1e-300):
            break
    return total


def solve_theta(m, tol):
    """Largest theta with rho_m(theta) <= tol, to relative width 1e-10"""
    tol = resolve_tol(tol)
    if m < 0:
        raise InputError(f"degree must be nonnegative, got {m}")

    hi = 2.0 * m + 2.0
    while rho(m, hi) <= tol:
        hi *= 2.0

    theta = optimize.bisect(
        lambda x: rho(m, x) - tol, 0.0, hi,
        xtol=1e-300, rtol=_BISECT_RTOL, maxiter=400,
    )
    # bisect returns a point inside the final bracket; step to the feasible side
    while rho(m, theta) > tol:
        theta *= 1.0 - _BISECT_RTOL
    return theta


@dataclass(frozen=True, eq=False)
class ThetaTable:
    """theta[m] for m = 0..mmax at one tolerance"""

    tol: float
    theta: np.ndarray

    @property
    def mmax(self):
        return len(self.theta) - 1

    def __getitem__(self, m):
        return float(self.theta[m])

    def rows(self, start=1):
        return [(m, float(self.theta[m])) for m in range(start, self.mmax + 1)]


@lru_cache(maxsize=None)
def theta_table(tol, mmax=25):
    """Solved table for degrees 0..mmax, cached per (tol, mmax)"""
    tol = resolve_tol(tol)
    if not 1 <= mmax <= MAX_DEGREE:
        raise InputError(f"mmax must lie in [1, {MAX_DEGREE}], got {mmax}")
    values = np.array([solve_theta(m, tol) for m in range(mmax + 1)])
    values.setflags(write=False)
    return ThetaTable(tol=tol, theta=values)


def builtin_table(precision, mmax=25):
    """Table for one of the named precisions: half, single or double"""
    if precision not in PRECISIONS:
        raise InputError(f"Unknown precision '{precision}': use one of {sorted(PRECISIONS)}")
    return theta_table(PRECISIONS[precision], mmax)
