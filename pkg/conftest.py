"""Shared test matrices"""

import numpy as np
import pytest
from scipy import sparse

from funmv.bench.generators import poisson


def laplacian_2d(k):
    """5-point Laplacian on a k x k grid (symmetric positive definite)"""
    return sparse.csr_array(-poisson(k))


def scaled_to_norm(M, norm):
    M = np.asarray(M, dtype=float)
    return M * (norm / np.max(np.sum(np.abs(M), axis=0)))


def random_symmetric(rng, n, norm):
    M = rng.standard_normal((n, n))
    return scaled_to_norm(M + M.T, norm)


def random_mild_nonnormal(rng, n, norm):
    """Symmetric part plus a small strictly upper triangular perturbation"""
    M = rng.standard_normal((n, n))
    M = M + M.T + 0.2 * np.triu(rng.standard_normal((n, n)), k=1)
    return scaled_to_norm(M, norm)


def rel_err(x, ref):
    """1-norm relative error; a vector and an n x 1 block compare alike"""
    x, ref = np.asarray(x), np.asarray(ref)
    if x.ndim == 1 or ref.ndim == 1:
        x, ref = x.reshape(-1), ref.reshape(-1)
    if x.shape != ref.shape:
        raise ValueError(f"shapes differ: {x.shape} and {ref.shape}")
    return float(np.sum(np.abs(x - ref)) / max(np.sum(np.abs(ref)), 1e-300))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
