import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy import linalg

from conftest import laplacian_2d, random_mild_nonnormal, random_symmetric, rel_err
from funmv.bench.generators import poisson
from funmv.errors import InputError, NumericalError
from funmv.oracle import (
    block_ode_solution, dense_func_action, dense_func_action_general, expm_series,
    poisson_eigenvalues, poisson_func_action, scalar_function,
)


def test_scalar_function_at_zero():
    z = np.array([0.0, 1.0])
    assert_allclose(scalar_function('sinc', z), [1.0, math.sin(1.0)])
    assert_allclose(scalar_function('sinch', z), [1.0, math.sinh(1.0)])
    with pytest.raises(InputError):
        scalar_function('tan', z)


def test_eigen_oracle_simple_cases():
    B = np.ones((3, 1))
    assert_allclose(dense_func_action('cos', np.zeros((3, 3)), 1, 1.0, B), B, atol=1e-15)
    assert dense_func_action('cos', np.array([[4.0]]), 0.5, 1.0, [1.0])[0, 0] == pytest.approx(math.cos(2))
    # negative eigenvalue under the square root gives cosh
    assert dense_func_action('cos', np.array([[-4.0]]), 0.5, 1.0, [1.0])[0, 0] == pytest.approx(math.cosh(2))


def test_eigen_oracle_rejects_nonsymmetric():
    with pytest.raises(InputError, match="symmetric"):
        dense_func_action('cos', np.array([[1.0, 2.0], [0.0, 1.0]]), 1, 1.0, [1.0, 1.0])


def test_grid_laplacian_eigenvalues():
    computed = np.sort(np.linalg.eigvalsh(laplacian_2d(3).toarray()))
    expected = np.sort(-poisson_eigenvalues(3).ravel())
    assert_allclose(computed, expected, atol=1e-13)


@pytest.mark.parametrize("f,sigma", [('cos', 1), ('sin', 1), ('sinch', 1), ('cos', 0.5), ('sinc', 0.5)])
def test_sine_transform_matches_eigen(rng, f, sigma):
    k = 6
    B = rng.standard_normal((k * k, 2))
    t = 0.7
    expected = dense_func_action(f, poisson(k).toarray(), sigma, t, B)
    assert_allclose(poisson_func_action(f, k, t, B, sigma), expected, rtol=1e-11, atol=1e-12)


@pytest.mark.parametrize("f", ['cos', 'sin', 'sinc', 'cosh', 'sinh', 'sinch'])
def test_series_matches_eigen_for_symmetric(rng, f):
    A = random_symmetric(rng, 8, 3.0)
    B = rng.standard_normal((8, 2))
    expected = dense_func_action(f, A, 1, 1.5, B)
    assert rel_err(dense_func_action_general(f, A, 1, 1.5, B), expected) <= 1e-12


@pytest.mark.parametrize("f", ['cos', 'sinc', 'cosh', 'sinch'])
def test_series_sqrt_matches_eigen(rng, f):
    A = random_symmetric(rng, 8, 4.0)
    B = rng.standard_normal((8, 1))
    expected = dense_func_action(f, A, 0.5, 1.2, B)
    assert rel_err(dense_func_action_general(f, A, 0.5, 1.2, B), expected) <= 1e-12


def test_series_nilpotent_is_exact():
    N = np.array([[0.0, 1.0], [0.0, 0.0]])
    B = np.array([[1.0], [2.0]])
    assert_array_equal(dense_func_action_general('cos', N, 1, 1.0, B), B)
    assert_array_equal(dense_func_action_general('sinc', N, 1, 1.0, B), B)


def test_sin_is_argument_times_sinc(rng):
    A = random_symmetric(rng, 8, 5.0)
    B = rng.standard_normal((8, 1))
    t = 0.8
    sinc = dense_func_action('sinc', A, 1, t, B)
    assert_allclose(dense_func_action('sin', A, 1, t, B), t * A @ sinc, rtol=1e-12, atol=1e-13)


def test_series_complex_argument(rng):
    A = random_symmetric(rng, 5, 2.0)
    B = rng.standard_normal((5, 1))
    t = 1 - 0.4j
    expected = dense_func_action('cos', A, 1, t, B)
    assert np.iscomplexobj(expected)
    assert rel_err(dense_func_action_general('cos', A, 1, t, B), expected) <= 1e-12


def test_series_limits():
    with pytest.raises(InputError):
        dense_func_action_general('sin', np.eye(3), 0.5, 1.0, np.ones(3))
    with pytest.raises(InputError):
        dense_func_action_general('cos', np.eye(513), 1, 1.0, np.ones(513))
    with pytest.raises(NumericalError):
        dense_func_action_general('cosh', 1e3 * np.eye(2), 1, 1.0, np.ones(2))


def test_expm_series_matches_scipy(rng):
    M = random_mild_nonnormal(rng, 8, 4.0)
    assert_allclose(expm_series(M), linalg.expm(M), rtol=1e-12, atol=1e-13)


def test_block_exponential_solves_the_ode(rng):
    A = laplacian_2d(2).toarray() + np.eye(4)
    b, z = rng.standard_normal(4), rng.standard_normal(4)
    t = 1.3
    expected = (dense_func_action('cos', A, 0.5, t, b) + t * dense_func_action('sinc', A, 0.5, t, z))[:, 0]
    assert rel_err(block_ode_solution(A, b, z, t), expected) <= 1e-12


def test_relative_error_of_vector_against_column():
    x = np.arange(1.0, 5.0)
    assert rel_err(x, x[:, None]) == 0
    assert rel_err(2 * x, x[:, None]) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        rel_err(np.ones((4, 2)), np.ones((4, 1)))
