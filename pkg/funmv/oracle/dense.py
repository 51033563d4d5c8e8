"""
Dense reference evaluators for cos/sin/sinc and their hyperbolic versions

Two independent paths: an eigendecomposition for symmetric (Hermitian)
matrices, and a compensated Taylor series with double-angle recovery for
general matrices up to n = 512. Neither shares code with the engine, and
neither is fast; they exist to check it.
"""

import math

import numpy as np
from scipy import fft, linalg

from ..errors import InputError, NumericalError
from ..linalg.sparse import as_block, to_dense

FUNCTIONS = ('cos', 'sin', 'sinc', 'cosh', 'sinh', 'sinch')
EVEN_FUNCTIONS = ('cos', 'sinc', 'cosh', 'sinch')

MAX_EIGEN_N = 16384
MAX_SERIES_N = 512

_MAX_TERMS = 200
_EPS = np.finfo(float).eps


def _check_function(f):
    if f not in FUNCTIONS:
        raise InputError(f"Unknown function '{f}': use one of {', '.join(FUNCTIONS)}")


def scalar_function(f, z):
    """f applied elementwise to a real or complex array"""
    _check_function(f)
    z = np.asarray(z)
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        if f == 'cos':
            return np.cos(z)
        if f == 'sin':
            return np.sin(z)
        if f == 'cosh':
            return np.cosh(z)
        if f == 'sinh':
            return np.sinh(z)
        safe = np.where(z == 0, 1, z)
        if f == 'sinc':
            return np.where(z == 0, 1, np.sin(safe) / safe)
        return np.where(z == 0, 1, np.sinh(safe) / safe)


def _argument(lam, t, sigma):
    if sigma == 1:
        return t * lam
    # complex root: the even functions only see t^2*lam
    return t * np.sqrt(np.asarray(lam, dtype=complex))


def _maybe_real(result, f, A, B, t, sigma, lam=None):
    real_inputs = np.isrealobj(A) and np.isrealobj(B) and np.imag(t) == 0
    if not real_inputs:
        return result
    if sigma == 1 or f in EVEN_FUNCTIONS or (lam is not None and np.all(lam >= 0)):
        return result.real
    return result


def dense_func_action(f, A, sigma, t, B):
    """
    f(t A^sigma) B for symmetric (Hermitian) A through eigh

    For sigma = 1/2 the eigenvalues may be negative; the even functions
    depend only on t^2*lambda so the square-root branch does not matter.
    """
    _check_function(f)
    A = to_dense(A)
    n = A.shape[0]
    if n > MAX_EIGEN_N:
        raise InputError(f"eigen oracle limited to n <= {MAX_EIGEN_N}, got {n}")
    B = as_block(B, n)
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if np.max(np.abs(A - A.conj().T), initial=0.0) > 1e-12 * scale:
        raise InputError("eigen oracle needs a symmetric (Hermitian) matrix")

    lam, Q = linalg.eigh(A)
    values = scalar_function(f, _argument(lam, t, sigma))
    result = Q @ (values[:, np.newaxis] * (Q.conj().T @ B))
    return _maybe_real(result, f, A, B, t, sigma, lam)


class _CompensatedSum:
    """Elementwise Neumaier summation of matrices"""

    def __init__(self, first):
        self.total = np.array(first, dtype=complex if np.iscomplexobj(first) else float)
        self.comp = np.zeros_like(self.total)

    def _add_real(self, total, comp, term):
        new = total + term
        big = np.abs(total) >= np.abs(term)
        comp += np.where(big, (total - new) + term, (term - new) + total)
        return new

    def add(self, term):
        if np.iscomplexobj(self.total):
            term = np.asarray(term, dtype=complex)
            re, im = self.total.real.copy(), self.total.imag.copy()
            cre, cim = self.comp.real.copy(), self.comp.imag.copy()
            re = self._add_real(re, cre, term.real)
            im = self._add_real(im, cim, term.imag)
            self.total = re + 1j * im
            self.comp = cre + 1j * cim
        else:
            self.total = self._add_real(self.total, self.comp, term)

    @property
    def value(self):
        return self.total + self.comp


def _series(W, sign, odd):
    """sum_k sign^k W^k / (2k + odd)!"""
    n = W.shape[0]
    term = np.eye(n, dtype=W.dtype)
    acc = _CompensatedSum(term)
    quiet = 0
    for k in range(1, _MAX_TERMS):
        term = (sign * (term @ W)) / ((2 * k - 1 + odd) * (2 * k + odd))
        acc.add(term)
        if np.max(np.abs(term)) <= _EPS * np.max(np.abs(acc.value)):
            quiet += 1
            if quiet == 2:
                break
        else:
            quiet = 0
    return acc.value


def dense_func_action_general(f, A, sigma, t, B):
    """
    f(t A^sigma) B for any A with n <= 512

    W = X^2 (X = t A^sigma) is scaled by 4^-j so that ||W||_1 <= 1/4, cos and
    sinc of X/2^j are summed from factorials in compensated arithmetic,
    and j double-angle steps cos(2Y) = 2cos(Y)^2 - I, sinc(2Y) = sinc(Y)cos(Y)
    recover the full argument. sin and sinh need X itself and are only
    available for sigma = 1.
    """
    _check_function(f)
    A = to_dense(A)
    n = A.shape[0]
    if n > MAX_SERIES_N:
        raise InputError(f"series oracle limited to n <= {MAX_SERIES_N}, got {n}")
    if sigma == 0.5 and f in ('sin', 'sinh'):
        raise InputError(f"{f}(t*sqrt(A)) needs a square root; use the eigen oracle")
    B = as_block(B, n)

    dtype = np.result_type(A.dtype, B.dtype, np.asarray(t).dtype)
    X = t * A.astype(dtype)
    W = X @ X if sigma == 1 else t * X

    norm = float(np.max(np.sum(np.abs(W), axis=0))) if n else 0.0
    j = 0 if norm <= 0.25 else math.ceil(math.log(4 * norm, 4))
    Wj = W / 4.0 ** j

    sign = -1 if f in ('cos', 'sin', 'sinc') else 1
    cos_part = _series(Wj, sign, 0)
    sinc_part = _series(Wj, sign, 1) if f not in ('cos', 'cosh') else None

    identity = np.eye(n, dtype=cos_part.dtype)
    with np.errstate(over='ignore', invalid='ignore'):
        for _ in range(j):
            if sinc_part is not None:
                sinc_part = sinc_part @ cos_part
            cos_part = 2 * (cos_part @ cos_part) - identity

    if f in ('cos', 'cosh'):
        result = cos_part @ B
    elif f in ('sinc', 'sinch'):
        result = sinc_part @ B
    else:
        result = X @ (sinc_part @ B)

    if not np.all(np.isfinite(result)):
        raise NumericalError(f"series oracle overflowed for {f} at n = {n}")
    return _maybe_real(result, f, A, B, t, sigma)


def expm_series(M):
    """Matrix exponential by scaled Taylor series and repeated squaring"""
    M = np.asarray(M)
    n = M.shape[0]
    norm = float(np.max(np.sum(np.abs(M), axis=0))) if n else 0.0
    j = 0 if norm <= 0.5 else math.ceil(math.log2(2 * norm))
    Mj = M / 2.0 ** j

    term = np.eye(n, dtype=np.result_type(M.dtype, float))
    acc = _CompensatedSum(term)
    for k in range(1, _MAX_TERMS):
        term = (term @ Mj) / k
        acc.add(term)
        if np.max(np.abs(term)) <= _EPS * np.max(np.abs(acc.value)):
            break
    E = acc.value
    for _ in range(j):
        E = E @ E
    if not np.all(np.isfinite(E)):
        raise NumericalError("series exponential overflowed")
    return E


def block_ode_solution(A, b, z, t=1.0):
    """
    y(t) for y'' + Ay = 0, y(0) = b, y'(0) = z, from the block exponential

    Top half of exp(t [[0, I], [-A, 0]]) [b; z], which equals
    cos(t sqrt(A)) b + t sinc(t sqrt(A)) z.
    """
    A = to_dense(A)
    n = A.shape[0]
    M = np.zeros((2 * n, 2 * n), dtype=np.result_type(A.dtype, float))
    M[:n, n:] = np.eye(n)
    M[n:, :n] = -A
    state = np.concatenate([np.ravel(b), np.ravel(z)])
    return (expm_series(t * M) @ state)[:n]


def poisson_eigenvalues(k):
    """Eigenvalues of the negated 5-point Laplacian on a k x k grid, as a k x k array"""
    lam = 2.0 - 2.0 * np.cos(np.pi * np.arange(1, k + 1) / (k + 1))
    return -(lam[:, np.newaxis] + lam[np.newaxis, :])


def poisson_func_action(f, k, t, B, sigma=1):
    """
    f(t A^sigma) B for A = poisson(k) through the 2-D sine transform

    The orthonormal DST-I is its own inverse and diagonalises the grid
    Laplacian, so the cost is two transforms per column.
    """
    _check_function(f)
    n = k * k
    B = as_block(B, n)
    values = scalar_function(f, _argument(poisson_eigenvalues(k), t, sigma))
    if np.iscomplexobj(values) and not np.any(np.imag(values)):
        values = values.real

    def transform(X):
        if np.iscomplexobj(X):
            return transform(X.real) + 1j * transform(X.imag)
        return fft.dstn(X, type=1, norm='ortho')

    columns = [transform(transform(col.reshape(k, k)) * values).reshape(n) for col in B.T]
    result = np.stack(columns, axis=1)
    if np.isrealobj(B) and np.imag(t) == 0 and (sigma == 1 or f in EVEN_FUNCTIONS):
        result = result.real
    return result
