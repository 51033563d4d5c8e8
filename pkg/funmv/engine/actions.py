"""
Actions of cos/cosh together with sin/sinh/sinc/sinch on a thin block

The argument tA^sigma is scaled by s, cos(tA^sigma/s) is applied by a
truncated Taylor series, and the Chebyshev recurrences
    T_k + T_{k-2} = 2 cos(X) T_{k-1}      (first kind)
    U_k - U_{k-2} = 2 T_k                 (second kind)
with X = tA^sigma/s recover cos(tA^sigma)B = T_s and, through one more
sinc-mode pass on U_{s-1}, the sinc/sin companion. For options 1 and 2
the matrix is shifted by mu = trace(A)/n first and the shift is undone with
the addition formulas, either once at the end or after every pass when
cos/sin (cosh/sinh) of t*mu would overflow.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..config import DEFAULT_CONFIG, resolve_tol
from ..errors import InputError, NumericalError
from ..linalg.sparse import (
    MatvecCounter, as_block, as_csr, inf_norm, matmat, one_norm, one_norm_block,
    shift_diagonal, trace_mean,
)
from ..taylor.params import (
    ParamChoice, build_spm, norm_bound_choice, scaled_argument, select_for_t, select_parameters,
)

logger = logging.getLogger(__name__)

# option id -> (sigma, k0, shift); k0 = 1 selects the trigonometric sign pattern
OPTION_TABLE = {
    1: (1, 1, 1),
    2: (1, 0, 1),
    3: (1, 1, 0),
    4: (1, 0, 0),
    5: (0.5, 1, 0),
    6: (0.5, 0, 0),
}

OPTION_OUTPUTS = {
    1: ('cos', 'sin'),
    2: ('cosh', 'sinh'),
    3: ('cos', 'sinc'),
    4: ('cosh', 'sinch'),
    5: ('cos', 'sinc'),
    6: ('cosh', 'sinch'),
}

UNDO_MODES = ('none', 'inside', 'outside')


@dataclass(frozen=True)
class FunmvOption:
    id: int
    sigma: float
    k0: int
    shift: int

    @classmethod
    def from_id(cls, option):
        if isinstance(option, FunmvOption):
            return option
        try:
            option = int(option)
        except (TypeError, ValueError):
            raise InputError(f"option must be an integer 1..6, got {option!r}") from None
        if option not in OPTION_TABLE:
            raise InputError(f"option must be an integer 1..6, got {option}")
        return cls(option, *OPTION_TABLE[option])

    @property
    def outputs(self):
        """Names of the functions returned in C and S"""
        return OPTION_OUTPUTS[self.id]


@dataclass
class FunmvReport:
    """Outputs C and S with the diagnostics of the run"""

    C: np.ndarray
    S: np.ndarray
    option: int
    matvecs: int
    s: int
    m_star: int
    m_i: List[int] = field(default_factory=list)
    mu: complex = 0.0
    undo: str = 'none'
    path: str = ''
    theta_cost: int = 0
    cost_bound: int = 0

    @property
    def n0(self):
        return 1 if self.C.ndim == 1 else self.C.shape[1]

    def expected_matvecs(self):
        """2*sigma*n0*sum(m_i) + undo/shift products + estimation cost"""
        sigma, _, shift = OPTION_TABLE[self.option]
        total = 2 * sigma * self.n0 * sum(self.m_i)
        if self.undo == 'inside':
            total += self.n0 * (self.s + 1)
        if shift and self.undo != 'inside':
            total += self.n0
        return int(round(total)) + self.theta_cost


def _as_scalar(t):
    t = complex(t) if np.iscomplexobj(t) else float(t)
    if isinstance(t, complex) and t.imag == 0:
        t = t.real
    if not np.isfinite(t):
        raise InputError(f"t must be finite, got {t}")
    return t


def _real_if_exact(z):
    z = complex(z)
    return z.real if z.imag == 0 else z


def _shift_factors(option_id, x):
    with np.errstate(over='ignore', invalid='ignore'):
        if option_id == 1:
            phi1, phi2 = np.cos(x), np.sin(x)
        else:
            phi1, phi2 = np.cosh(x), np.sinh(x)
    if not (np.isfinite(phi1) and np.isfinite(phi2)):
        raise NumericalError(
            f"overflow evaluating the shift correction at t*mu = {x}; "
            "the shift cannot be undone for this input"
        )
    return _real_if_exact(phi1), _real_if_exact(phi2)


def _classify_undo(option_id, tmu, s):
    """Where the shift is undone and with which factors"""
    tmu = complex(tmu)
    if option_id == 1 and tmu.imag != 0:
        return 'inside', _shift_factors(1, tmu / s)
    if option_id == 1 and tmu != 0:
        return 'outside', _shift_factors(1, tmu.real)
    if option_id == 2 and tmu.real != 0:
        return 'inside', _shift_factors(2, _real_if_exact(tmu / s))
    if option_id == 2 and tmu.imag != 0:
        return 'outside', _shift_factors(2, tmu)
    return 'none', (1.0, 0.0)


def taylor_pass(A, block, t, s, m_star, sigma, k0, mode='cos', undo_inside=False, tol=2.0 ** -53,
                counter=None, early_stop=True, stop_norm='inf', pass_index=1):
    """
    Truncated cos (mode='cos') or sinc (mode='sinc') series of tA^sigma/s on block

    Each degree costs one product with A for sigma = 1/2 and two for
    sigma = 1. With undo_inside the companion series Z is accumulated with
    weights 1/(2k+1) (cos mode) or 2k+1 (sinc mode), giving sinc or cos of
    the same argument for the shift correction.

    Returns:
        (V, Z or None, m_stop)
    """
    if m_star < 1 or s < 1:
        raise InputError(f"Taylor pass needs m_star >= 1 and s >= 1, got m_star={m_star}, s={s}")
    if mode not in ('cos', 'sinc'):
        raise InputError(f"mode must be 'cos' or 'sinc', got {mode!r}")
    norm = inf_norm if stop_norm == 'inf' else one_norm_block

    h = (t / s) ** 2
    sign = -1 if k0 else 1
    B = block
    V = block.copy()
    Z = block.copy() if undo_inside else None
    c1 = norm(B)
    m_stop = 0

    for k in range(1, m_star + 1):
        beta = 2 * k
        if mode == 'cos':
            gamma, q = beta - 1, 1.0 / (beta + 1)
        else:
            gamma, q = beta + 1, float(beta + 1)

        with np.errstate(over='ignore', invalid='ignore'):
            if sigma == 1:
                B = matmat(A, B, counter)
            B = matmat(A, B, counter) * (h / (beta * gamma))
        if not np.all(np.isfinite(B)):
            raise NumericalError(f"non-finite values in Taylor pass {pass_index} at degree {k}")

        c2 = norm(B)
        coeff = sign ** k
        V = V + coeff * B
        if Z is not None:
            Z = Z + (coeff * q) * B
        m_stop = k

        # an exactly zero term ends the series
        if c2 == 0 or (early_stop and c1 + c2 <= tol * norm(V)):
            break
        c1 = c2

    return V, Z, m_stop


def _zero_operator(A, B, t, tmu, option, counter):
    """Exact outputs when t*A (after shifting) vanishes"""
    undo = 'none'
    if option.id in (1, 2):
        S0 = matmat(A, B * t, counter)
        C, S = B.copy(), S0
        if tmu != 0:
            phi1, phi2 = _shift_factors(option.id, tmu)
            undo = 'outside'
            C, S = phi1 * B + ((-1) ** option.k0 * phi2) * S0, phi1 * S0 + phi2 * B
    else:
        C, S = B.copy(), B.copy()
    return C, S, undo


def funmv(t, A, B, tol='double', option=1, precomputed=None, config=None, counter=None):
    """
    C and S for one of the six options

        1: cos(tA)B, sin(tA)B          2: cosh(tA)B, sinh(tA)B
        3: cos(tA)B, sinc(tA)B         4: cosh(tA)B, sinch(tA)B
        5: cos(t√A)B, sinc(t√A)B       6: cosh(t√A)B, sinch(t√A)B

    Args:
        t: real or complex scalar
        A: square matrix (any scipy sparse format or dense array)
        B: vector or n x n0 block
        tol: tolerance or precision label
        option: option id 1..6 or a FunmvOption
        precomputed: SpmMatrix built by build_spm for the same (shifted) A and sigma
        config: FunmvConfig
        counter: optional MatvecCounter to charge the run to

    Returns:
        FunmvReport
    """
    config = config or DEFAULT_CONFIG
    opt = FunmvOption.from_id(option)
    tol = resolve_tol(tol)
    t = _as_scalar(t)

    A = as_csr(A)
    vector_input = np.ndim(B) == 1
    B = as_block(B, A.shape[0])
    n0 = B.shape[1]

    dtype = np.result_type(A.dtype, B.dtype, np.asarray(t).dtype)
    A = A.astype(dtype, copy=False)
    B = B.astype(dtype, copy=False)

    spent = MatvecCounter()
    mu = 0.0
    if opt.shift and config.allow_shift:
        mu = trace_mean(A)
        A = shift_diagonal(A, mu)
    tmu = _real_if_exact(t * mu)

    if abs(t) * one_norm(A) == 0:
        C, S, undo = _zero_operator(A, B, t, tmu, opt, spent)
        report = FunmvReport(
            C=C, S=S, option=opt.id, matvecs=spent.count, s=1, m_star=0, m_i=[],
            mu=mu, undo=undo, path='zero-matrix', theta_cost=0, cost_bound=spent.count,
        )
        return _finish(report, vector_input, counter)

    if precomputed is not None:
        if precomputed.sigma != opt.sigma:
            raise InputError(
                f"S_pm was built for sigma={precomputed.sigma}, option {opt.id} needs sigma={opt.sigma}"
            )
        if precomputed.tol != tol:
            raise InputError(f"S_pm was built for tol={precomputed.tol}, got tol={tol}")
        # the norm bound is free, so it still goes first
        choice = norm_bound_choice(
            scaled_argument(A, t, opt.sigma), opt.sigma, tol,
            mmax=precomputed.mmax, pmax=precomputed.pmax, ell=config.ell, n0=n0,
        )
        if choice is None:
            m_star, s, _ = select_for_t(precomputed, t)
            choice = ParamChoice(m_star, s, 0, 'precomputed')
    else:
        choice = select_parameters(
            scaled_argument(A, t, opt.sigma), opt.sigma, tol,
            mmax=config.mmax, pmax=config.pmax, ell=config.ell, n0=n0,
            counter=spent, config=config,
        )
    m_star, s, path, theta_cost = choice.m_star, choice.s, choice.path, choice.theta_cost

    undo, (phi1, phi2) = _classify_undo(opt.id, tmu, s)
    logger.debug("option %d: m*=%d s=%d path=%s mu=%s undo=%s", opt.id, m_star, s, path, mu, undo)

    cost_bound = choice.cost_bound(opt.sigma, n0)
    if undo == 'inside':
        cost_bound += n0 * (s + 1)
    if opt.shift and undo != 'inside':
        cost_bound += n0

    # U accumulates U_{s-1}/2: T_1 + T_3 + ... + T_{s-1} for even s,
    # B/2 + T_2 + T_4 + ... + T_{s-1} for odd s
    U = B / 2 if s % 2 else np.zeros_like(B)
    T0, T1, T2 = None, B, None
    V = None
    m_i = []
    sign = (-1) ** opt.k0

    for i in range(1, s + 2):
        if i == s + 1:
            U = 2 * U
            T1 = U
        V, Z, m_stop = taylor_pass(
            A, T1, t, s, m_star, opt.sigma, opt.k0,
            mode='cos' if i <= s else 'sinc', undo_inside=undo == 'inside', tol=tol,
            counter=spent, early_stop=config.early_stop, stop_norm=config.stop_norm,
            pass_index=i,
        )
        m_i.append(m_stop)

        if undo == 'inside':
            if i <= s:
                V = V * phi1 + matmat(A, Z * (sign * t * phi2 / s), spent)
            else:
                V = matmat(A, V * (t * phi1 / s), spent) + Z * phi2

        if i == 1:
            T2 = V
        elif i <= s:
            T2 = 2 * V - T0
        if i <= s - 1 and (s % 2 == 0) != (i % 2 == 0):
            U = U + T2
        T0, T1 = T1, T2

    C = T2
    if undo == 'inside':
        S = V
    elif opt.id in (1, 2):
        S = matmat(A, V * (t / s), spent)
    else:
        S = V / s

    if undo == 'outside':
        C, S = phi1 * C + (sign * phi2) * S, phi1 * S + phi2 * C

    report = FunmvReport(
        C=C, S=S, option=opt.id, matvecs=spent.count, s=s, m_star=m_star, m_i=m_i,
        mu=mu, undo=undo, path=path, theta_cost=theta_cost, cost_bound=int(round(cost_bound)),
    )
    logger.debug("option %d finished: %d matvecs, passes stopped at %s", opt.id, spent.count, m_i)
    return _finish(report, vector_input, counter)


def _finish(report, vector_input, counter):
    if vector_input:
        report.C = report.C[:, 0]
        report.S = report.S[:, 0]
    if counter is not None:
        counter.add(report.matvecs)
    return report


def funmv_multi(ts, A, B, tol='double', option=1, config=None, counter=None):
    """
    Run one option at several t values, estimating alpha_p only once

    Returns:
        (reports, spm): one FunmvReport per t and the shared SpmMatrix
        (None when the norm bound settles every t)
    """
    config = config or DEFAULT_CONFIG
    opt = FunmvOption.from_id(option)
    tol = resolve_tol(tol)
    ts = [_as_scalar(t) for t in ts]

    A = as_csr(A)
    base = A
    if opt.shift and config.allow_shift:
        base = shift_diagonal(A, trace_mean(A))

    n0 = as_block(B, A.shape[0]).shape[1]
    spm = None
    nonzero = [t for t in ts if t != 0]
    needs_alpha = [
        t for t in nonzero
        if norm_bound_choice(scaled_argument(base, t, opt.sigma), opt.sigma, tol, mmax=config.mmax,
                             pmax=config.pmax, ell=config.ell, n0=n0) is None
    ]
    if needs_alpha:
        spm = build_spm(
            base, opt.sigma, tol, mmax=config.mmax, pmax=config.pmax, ell=config.ell,
            t=abs(needs_alpha[0]), counter=counter, config=config,
        )

    reports = [
        funmv(t, A, B, tol=tol, option=opt, precomputed=spm, config=config, counter=counter)
        for t in ts
    ]
    return reports, spm


def exp_action(t, A, B, tol='double', config=None, counter=None):
    """e^(tA)B as cosh(tA)B + sinh(tA)B"""
    report = funmv(t, A, B, tol=tol, option=2, config=config, counter=counter)
    return report.C + report.S
