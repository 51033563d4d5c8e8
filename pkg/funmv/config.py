"""
Tuning knobs and named tolerances

Everything that changes how parameters are selected or how the Taylor
passes terminate lives in FunmvConfig; the defaults are the values the
algorithm was tuned with (mmax = 25, pmax = 5, two estimator columns).
"""

import os
from dataclasses import dataclass

from .errors import InputError


# Unit roundoff of the three built-in precisions
PRECISIONS = {
    'half': 2.0 ** -10,
    'single': 2.0 ** -24,
    'double': 2.0 ** -53,
}

STOP_NORMS = ('inf', 'one')


def resolve_tol(tol):
    """Turn a precision label or a number into a tolerance in (0, 1)"""
    if isinstance(tol, str):
        label = tol.strip().lower()
        if label in PRECISIONS:
            return PRECISIONS[label]
        try:
            tol = float(label)
        except ValueError:
            raise InputError(
                f"Unknown tolerance '{tol}': use half, single, double or a number"
            ) from None

    tol = float(tol)
    if not 0.0 < tol < 1.0:
        raise InputError(f"Tolerance must lie in (0, 1), got {tol}")
    return tol


@dataclass(frozen=True)
class FunmvConfig:
    """Algorithm settings; immutable so one instance can be shared"""

    mmax: int = 25                   # largest Taylor degree considered
    pmax: int = 5                    # largest p in alpha_p
    ell: int = 2                     # columns used by the 1-norm estimator
    early_stop: bool = True          # truncate Taylor passes once terms are negligible
    stop_norm: str = 'inf'           # norm used by the early-termination test
    allow_shift: bool = True         # False forces mu = 0 for options 1 and 2
    seed: int = 0                    # seed for the estimator's random columns
    exact_norm_threshold: int = 128  # n at or below which 1-norms of powers are exact
    itmax: int = 5                   # estimator sweeps

    def __post_init__(self):
        if self.mmax < 1 or self.mmax > 60:
            raise InputError(f"mmax must lie in [1, 60], got {self.mmax}")
        if self.pmax < 2:
            raise InputError(f"pmax must be at least 2, got {self.pmax}")
        if self.pmax * (self.pmax - 1) > self.mmax + 1:
            raise InputError(
                f"pmax={self.pmax} too large for mmax={self.mmax}: "
                "need pmax*(pmax-1) <= mmax+1"
            )
        if self.ell < 1:
            raise InputError(f"ell must be a positive integer, got {self.ell}")
        if self.stop_norm not in STOP_NORMS:
            raise InputError(f"stop_norm must be one of {STOP_NORMS}, got {self.stop_norm!r}")
        if self.itmax < 2:
            raise InputError(f"itmax must be at least 2, got {self.itmax}")

    @classmethod
    def from_env(cls, **overrides):
        """Defaults, with the estimator seed taken from FUNMV_SEED when set"""
        seed = os.environ.get('FUNMV_SEED')
        if seed is not None and 'seed' not in overrides:
            try:
                overrides['seed'] = int(seed)
            except ValueError:
                raise InputError(f"FUNMV_SEED must be an integer, got '{seed}'") from None
        return cls(**overrides)


DEFAULT_CONFIG = FunmvConfig()
