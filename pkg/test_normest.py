import numpy as np
import pytest
from scipy import sparse

from conftest import laplacian_2d, random_symmetric
from funmv.config import FunmvConfig
from funmv.errors import InputError
from funmv.linalg.normest import (
    PowerOperator, alpha_sequence, est_one_norm_power, norm_root,
)
from funmv.linalg.sparse import MatvecCounter, as_csr


def test_power_operator_rejects_zero_power():
    with pytest.raises(InputError):
        PowerOperator(as_csr(np.eye(2)), 0)


def test_exact_path_small_matrix():
    A = laplacian_2d(3)
    counter = MatvecCounter()
    est = est_one_norm_power(PowerOperator(A, 2), counter=counter)
    assert est == pytest.approx(np.linalg.norm(np.linalg.matrix_power(A.toarray(), 2), 1))
    # identity block of width n, applied twice
    assert counter.count == 2 * 9


def test_zero_matrix_costs_nothing():
    counter = MatvecCounter()
    assert est_one_norm_power(PowerOperator(as_csr(np.zeros((5, 5))), 3), counter=counter) == 0
    assert counter.count == 0


@pytest.mark.parametrize("e", [1, 2, 3])
def test_estimator_is_lower_bound(e):
    A = laplacian_2d(15)  # n = 225 forces the block estimator
    exact = np.linalg.norm(np.linalg.matrix_power(A.toarray(), e), 1)
    counter = MatvecCounter()
    est = est_one_norm_power(PowerOperator(A, e), ell=2, counter=counter)
    assert 0 < est <= exact * (1 + 1e-12)
    # within a small factor on a Laplacian
    assert est >= 0.3 * exact
    assert counter.count > 0


def test_estimator_is_deterministic_for_a_seed():
    A = as_csr(sparse.random(300, 300, density=0.02, random_state=3))
    config = FunmvConfig(seed=7)
    a = est_one_norm_power(PowerOperator(A, 2), config=config)
    b = est_one_norm_power(PowerOperator(A, 2), config=config)
    assert a == b


def test_estimator_respects_exact_threshold_setting():
    A = laplacian_2d(4)
    exact = np.linalg.norm(np.linalg.matrix_power(A.toarray(), 3), 1)
    config = FunmvConfig(exact_norm_threshold=0)
    est = est_one_norm_power(PowerOperator(A, 3), config=config)
    assert est <= exact * (1 + 1e-12)


def test_norm_root_sigma_half():
    A = as_csr(np.diag([4.0, 9.0]))
    # ||A^(k/2)||^(1/k) = sqrt(9) for a diagonal matrix
    assert norm_root(A, 0.5, 4) == pytest.approx(3.0)
    with pytest.raises(InputError):
        norm_root(A, 0.5, 3)


def test_norm_root_overflow_is_infinite():
    A = as_csr(1e200 * np.eye(3))
    assert np.isinf(norm_root(A, 1, 4))
    assert alpha_sequence(A, 1, 2).overflow


def test_alpha_chain_for_random_matrices(rng):
    for _ in range(10):
        n = int(rng.integers(4, 30))
        M = rng.standard_normal((n, n))
        A = as_csr(M)
        seq = alpha_sequence(A, 1, 5)
        norm = np.linalg.norm(M, 1)
        d2 = norm_root(A, 1, 2)
        assert d2 <= norm * (1 + 1e-12)
        for p in range(2, 6):
            assert seq.alphas[p] <= d2 * (1 + 1e-12)
            assert seq.alphas[p] == max(seq.d[2 * p], seq.d[2 * p + 2])


def test_alpha_bounds_for_symmetric(rng):
    n = 12
    M = random_symmetric(rng, n, 10.0)
    radius = np.max(np.abs(np.linalg.eigvalsh(M)))
    seq = alpha_sequence(as_csr(M), 1, 5)
    for k, d in seq.d.items():
        assert radius * (1 - 1e-12) <= d <= n ** (1 / (2 * k)) * radius * (1 + 1e-12)


def test_alpha_sequence_cost_is_recorded():
    A = laplacian_2d(3)
    counter = MatvecCounter()
    seq = alpha_sequence(A, 0.5, 5, counter=counter)
    # exact path: sigma*2p powers of an n-column identity, p = 2..6
    assert seq.cost == 9 * (2 + 3 + 4 + 5 + 6)
    assert counter.count == seq.cost


def test_alpha_sequence_rejects_bad_arguments():
    A = as_csr(np.eye(3))
    with pytest.raises(InputError):
        alpha_sequence(A, 1, 1)
    with pytest.raises(InputError):
        alpha_sequence(A, 2, 5)
