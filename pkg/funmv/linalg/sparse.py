"""
Sparse operator and dense block primitives

A is held as a scipy CSR array and every block (B, T_k, U, V, Z, C, S) as a
2-D numpy array with one column per right-hand side. All products of A
with a block go through matmat so the caller's MatvecCounter sees them.
"""

import numpy as np
from scipy import sparse

from ..errors import InputError


class MatvecCounter:
    """Running total of products of A with single columns"""

    def __init__(self, count=0):
        self.count = int(count)

    def add(self, columns):
        self.count += int(columns)

    def __repr__(self):
        return f"MatvecCounter({self.count})"


def csr_from_arrays(n, row_ptr, col_idx, values):
    """Build an n x n CSR matrix from raw arrays, validating the layout"""
    row_ptr = np.asarray(row_ptr, dtype=np.int64)
    col_idx = np.asarray(col_idx, dtype=np.int64)
    values = np.asarray(values)

    if row_ptr.shape != (n + 1,):
        raise InputError(f"row_ptr must have length n+1 = {n + 1}, got {row_ptr.size}")
    if row_ptr[0] != 0 or np.any(np.diff(row_ptr) < 0):
        raise InputError("row_ptr must start at 0 and be nondecreasing")
    nnz = int(row_ptr[-1])
    if col_idx.size != nnz or values.size != nnz:
        raise InputError(
            f"row_ptr[n] = {nnz} but got {col_idx.size} column indices and {values.size} values"
        )
    if nnz and (col_idx.min() < 0 or col_idx.max() >= n):
        raise InputError(f"column indices must lie in [0, {n})")

    for i in range(n):
        cols = col_idx[row_ptr[i]:row_ptr[i + 1]]
        if np.any(np.diff(cols) <= 0):
            raise InputError(
                f"row {i}: column indices must be strictly increasing (duplicates are not allowed)"
            )

    return sparse.csr_array((values, col_idx, row_ptr), shape=(n, n))


def as_csr(A):
    """Canonical square CSR array from a sparse matrix, array or nested list"""
    if sparse.issparse(A):
        A = sparse.csr_array(A)
    else:
        dense = np.asarray(A)
        if dense.ndim != 2:
            raise InputError(f"expected a 2-D matrix, got an array with {dense.ndim} dimensions")
        A = sparse.csr_array(dense)

    if A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    if A.dtype.kind not in 'fc':
        A = A.astype(np.float64)
    A.sum_duplicates()
    A.sort_indices()
    return A


def as_block(B, n=None):
    """2-D float/complex block; a 1-D vector becomes a single column"""
    B = np.asarray(B)
    if B.ndim == 1:
        B = B[:, np.newaxis]
    if B.ndim != 2:
        raise InputError(f"expected a vector or a 2-D block, got {B.ndim} dimensions")
    if B.shape[1] < 1:
        raise InputError("block must have at least one column")
    if n is not None and B.shape[0] != n:
        raise InputError(f"block has {B.shape[0]} rows but the matrix has dimension {n}")
    if B.dtype.kind not in 'fc':
        B = B.astype(np.float64)
    if not np.all(np.isfinite(B)):
        raise InputError("block contains non-finite entries")
    return B


def to_dense(A):
    return A.toarray() if sparse.issparse(A) else np.asarray(A)


def matmat(A, B, counter=None):
    """A @ B, charging B's column count to the counter"""
    if A.shape[1] != B.shape[0]:
        raise InputError(f"dimension mismatch: A is {A.shape}, B is {B.shape}")
    if counter is not None:
        counter.add(B.shape[1])
    return A @ B


def rmatmat(A, B, counter=None):
    """A^* @ B through the transpose view of the same CSR storage"""
    if A.shape[0] != B.shape[0]:
        raise InputError(f"dimension mismatch: A* is {A.shape[::-1]}, B is {B.shape}")
    if counter is not None:
        counter.add(B.shape[1])
    if np.iscomplexobj(A.data):
        return np.conj(A.T @ np.conj(B))
    return A.T @ B


def one_norm(A):
    """Exact 1-norm (largest absolute column sum) of a sparse matrix"""
    if A.nnz == 0:
        return 0.0
    return float(np.max(abs(A).sum(axis=0)))


def one_norm_block(B):
    if B.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(B), axis=0)))


def inf_norm(B):
    if B.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(B), axis=1)))


def trace_mean(A):
    """trace(A)/n, the shift that minimises the Frobenius norm of A - mu*I"""
    n = A.shape[0]
    mu = A.diagonal().sum() / n
    return complex(mu) if np.iscomplexobj(mu) else float(mu)


def shift_diagonal(A, mu):
    """A - mu*I with every diagonal entry stored explicitly"""
    if mu == 0:
        return A
    n = A.shape[0]
    idx = np.arange(n)
    dtype = np.result_type(A.dtype, np.asarray(mu).dtype)
    shift = sparse.csr_array((np.full(n, mu, dtype=dtype), (idx, idx)), shape=(n, n))
    shifted = sparse.csr_array(A.astype(dtype) - shift)
    shifted.sort_indices()
    return shifted


def scale(A, c):
    """c*A, promoting a real matrix to complex when c is complex"""
    if isinstance(c, complex) and c.imag == 0:
        c = c.real
    return sparse.csr_array(A * c)
