"""
Test matrices and right-hand sides for the benchmark cases

poisson(k) is the negated 5-point Laplacian on a k x k grid (symmetric
negative definite, n = k^2), triw(n, c) the negated upper triangular
matrix with 1 on the diagonal and c above it, diag_range(n) = diag(1..n).
"""

import numpy as np
from scipy import sparse

from ..errors import InputError


def _check_size(n, name):
    if int(n) != n or n < 1:
        raise InputError(f"{name} must be a positive integer, got {n}")
    return int(n)


def laplacian_1d(k):
    """Tridiagonal [-1, 2, -1] of size k"""
    k = _check_size(k, 'grid size')
    return sparse.diags_array([-np.ones(k - 1), 2 * np.ones(k), -np.ones(k - 1)],
                              offsets=[-1, 0, 1], shape=(k, k), format='csr')


def poisson(k):
    """Negated 5-point Laplacian on a k x k grid: -4 on the diagonal, 1 for each neighbour"""
    T = laplacian_1d(k)
    I = sparse.eye_array(T.shape[0], format='csr')
    L = sparse.kron(I, T) + sparse.kron(T, I)
    A = sparse.csr_array(-L)
    A.sort_indices()
    return A


def triw(n, c=4.0):
    """Negated upper triangular matrix: -1 on the diagonal, -c strictly above"""
    n = _check_size(n, 'dimension')
    upper = np.triu(np.full((n, n), -float(c)), k=1)
    np.fill_diagonal(upper, -1.0)
    return sparse.csr_array(upper)


def diag_range(n):
    """diag(1, 2, ..., n)"""
    n = _check_size(n, 'dimension')
    return sparse.diags_array(np.arange(1.0, n + 1), format='csr')


def cos_range(n):
    return np.cos(np.arange(1.0, _check_size(n, 'length') + 1))


def sin_range(n):
    return np.sin(np.arange(1.0, _check_size(n, 'length') + 1))


def ones(n):
    return np.ones(_check_size(n, 'length'))


def ends(n):
    """[1, 0, ..., 0, 1]"""
    b = np.zeros(_check_size(n, 'length'))
    b[0] = b[-1] = 1.0
    return b


MATRIX_GENERATORS = {
    'poisson': poisson,
    'triw': triw,
    'diag-range': diag_range,
}

VECTOR_GENERATORS = {
    'cos-range': cos_range,
    'sin-range': sin_range,
    'ones': ones,
    'ends': ends,
}


def generate_matrix(name, size, param=None):
    """Matrix from MATRIX_GENERATORS; param is the triw off-diagonal value"""
    if name not in MATRIX_GENERATORS:
        raise InputError(f"Unknown generator '{name}': use one of {', '.join(MATRIX_GENERATORS)}")
    if name == 'triw' and param is not None:
        return triw(size, param)
    return MATRIX_GENERATORS[name](size)


def generate_vector(name, n):
    if name not in VECTOR_GENERATORS:
        raise InputError(f"Unknown vector '{name}': use one of {', '.join(VECTOR_GENERATORS)}")
    return VECTOR_GENERATORS[name](n)
