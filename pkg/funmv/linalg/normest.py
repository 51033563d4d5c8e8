"""
1-norm estimates of matrix powers and the alpha_p sequence

d_k = ||A^(sigma*k)||_1^(1/k) for even k is needed to choose the scaling
parameter. Powers are never formed: a PowerOperator applies A (or A^*)
e times to a thin block, and the block 1-norm estimator of Higham and
Tisseur needs only a handful of such applications. For small n the norm
is computed exactly by applying the power to the identity.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..config import DEFAULT_CONFIG
from ..errors import InputError
from .sparse import MatvecCounter, matmat, rmatmat

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerOperator:
    """A^e applied to blocks; e*l matvecs for an n x l block"""

    A: object
    e: int

    def __post_init__(self):
        if self.e < 1:
            raise InputError(f"power must be a positive integer, got {self.e}")

    @property
    def n(self):
        return self.A.shape[0]

    def matmat(self, X, counter=None):
        with np.errstate(over='ignore', invalid='ignore'):
            for _ in range(self.e):
                X = matmat(self.A, X, counter)
        return X

    def rmatmat(self, X, counter=None):
        with np.errstate(over='ignore', invalid='ignore'):
            for _ in range(self.e):
                X = rmatmat(self.A, X, counter)
        return X


@dataclass
class AlphaSequence:
    """Estimated d_k (even k) and alpha_p = max(d_2p, d_2p+2) for A^sigma"""

    sigma: float
    d: dict = field(default_factory=dict)
    alphas: dict = field(default_factory=dict)
    cost: int = 0

    @property
    def overflow(self):
        return any(np.isinf(v) for v in self.d.values())


def _sign(Y):
    if np.iscomplexobj(Y):
        mag = np.abs(Y)
        out = np.ones_like(Y)
        nz = mag > 0
        out[nz] = Y[nz] / mag[nz]
        return out
    return np.where(Y >= 0, 1.0, -1.0)


def _parallel_to_any(col, others):
    # +-1 columns are parallel exactly when |<col, other>| == n
    if others.size == 0:
        return False
    return bool(np.any(np.abs(col @ others) == col.size))


def _resample_parallel(S, previous, rng, attempts=10):
    n, t = S.shape
    for j in range(t):
        for _ in range(attempts):
            others = S[:, :j]
            if previous is not None:
                others = np.hstack([others, previous])
            if not _parallel_to_any(S[:, j], others):
                break
            S[:, j] = rng.choice([-1.0, 1.0], size=n)
    return S


def _exact_one_norm_power(op, counter):
    Y = op.matmat(np.eye(op.n, dtype=op.A.dtype), counter)
    if not np.all(np.isfinite(Y)):
        return np.inf
    return float(np.max(np.sum(np.abs(Y), axis=0)))


def _block_estimate(op, ell, counter, rng, itmax):
    n = op.n
    t = min(ell, n)
    is_real = not np.iscomplexobj(op.A.data)

    X = np.ones((n, t))
    if t > 1:
        X[:, 1:] = rng.choice([-1.0, 1.0], size=(n, t - 1))
        _resample_parallel(X, None, rng)
    X /= n

    est_old = 0.0
    used = set()
    ind = None
    S = None

    for k in range(1, itmax + 1):
        Y = op.matmat(X, counter)
        if not np.all(np.isfinite(Y)):
            return np.inf
        col_norms = np.sum(np.abs(Y), axis=0)
        best_j = int(np.argmax(col_norms))
        est = float(col_norms[best_j])

        if k >= 2 and est <= est_old:
            return est_old
        est_old = est
        ind_best = None if ind is None else ind[best_j]
        if k == itmax:
            break

        S_old = S
        S = _sign(Y)
        if is_real:
            if S_old is not None and all(_parallel_to_any(S[:, j], S_old) for j in range(t)):
                break
            if t > 1:
                _resample_parallel(S, S_old, rng)

        Z = op.rmatmat(S, counter)
        if not np.all(np.isfinite(Z)):
            return np.inf
        h = np.max(np.abs(Z), axis=1)
        if ind_best is not None and h.max() == h[ind_best]:
            break

        # stable sort: ties go to the lowest index
        order = np.argsort(-h, kind='stable')
        if t > 1 and all(int(i) in used for i in order[:t]):
            break
        fresh = [int(i) for i in order if int(i) not in used][:t]
        if len(fresh) < t:
            break
        ind = fresh
        used.update(fresh)
        X = np.zeros((n, t))
        X[fresh, np.arange(t)] = 1.0

    return est_old


def est_one_norm_power(op, ell=2, counter=None, config=None):
    """
    Lower-bound estimate of ||A^e||_1

    Args:
        op: PowerOperator for A^e
        ell: number of estimator columns
        counter: MatvecCounter charged with every product performed
        config: FunmvConfig (seed, sweep cap, exact-norm threshold)

    Returns:
        The estimate, exact when n <= config.exact_norm_threshold, or +inf
        if applying the power overflowed.
    """
    config = config or DEFAULT_CONFIG
    if ell < 1:
        raise InputError(f"ell must be a positive integer, got {ell}")

    if op.A.nnz == 0:
        return 0.0
    if op.n <= config.exact_norm_threshold:
        est = _exact_one_norm_power(op, counter)
    else:
        rng = np.random.default_rng(config.seed)
        est = _block_estimate(op, ell, counter, rng, config.itmax)

    if np.isinf(est):
        logger.warning("Overflow while estimating ||A^%d||_1", op.e)
    return est


def norm_root(A, sigma, k, ell=2, counter=None, config=None):
    """d_k = ||A^(sigma*k)||_1^(1/k); sigma*k must be a positive integer"""
    e = sigma * k
    if e != int(e) or e < 1:
        raise InputError(f"sigma*k must be a positive integer, got sigma={sigma}, k={k}")
    est = est_one_norm_power(PowerOperator(A, int(e)), ell, counter, config)
    return est ** (1.0 / k)


def alpha_sequence(A, sigma, pmax, ell=2, counter=None, config=None):
    """
    Estimate d_2p for p = 2..pmax+1 and form alpha_p for p = 2..pmax

    The estimation cost (about 4*sigma*ell*pmax*(pmax+3) matvecs when the
    estimator is used) is recorded in the returned sequence and charged to
    counter.
    """
    if pmax < 2:
        raise InputError(f"pmax must be at least 2, got {pmax}")
    if sigma not in (1, 0.5):
        raise InputError(f"sigma must be 1 or 0.5, got {sigma}")

    spent = MatvecCounter()
    seq = AlphaSequence(sigma=sigma)
    for p in range(2, pmax + 2):
        k = 2 * p
        seq.d[k] = norm_root(A, sigma, k, ell, spent, config)
    for p in range(2, pmax + 1):
        seq.alphas[p] = max(seq.d[2 * p], seq.d[2 * p + 2])
    seq.cost = spent.count

    if counter is not None:
        counter.add(spent.count)
    logger.debug("alpha sequence (sigma=%s): %s, cost %d", sigma, seq.alphas, seq.cost)
    return seq
