import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy import linalg

from conftest import random_mild_nonnormal, random_symmetric, rel_err
from funmv import FunmvOption, exp_action, funmv, funmv_multi
from funmv.config import PRECISIONS, FunmvConfig
from funmv.engine import taylor_pass
from funmv.engine.actions import OPTION_OUTPUTS
from funmv.errors import InputError, NumericalError
from funmv.linalg.sparse import MatvecCounter, as_csr
from funmv.oracle import dense_func_action, dense_func_action_general
from funmv.taylor.params import build_spm

SINGLE = PRECISIONS['single']


def diag_range(n):
    return np.diag(np.arange(1.0, n + 1))


@pytest.mark.parametrize("option,id_", [(1, (1, 1, 1)), (2, (1, 0, 1)), (3, (1, 1, 0)),
                                        (4, (1, 0, 0)), (5, (0.5, 1, 0)), (6, (0.5, 0, 0))])
def test_option_table(option, id_):
    opt = FunmvOption.from_id(option)
    assert (opt.sigma, opt.k0, opt.shift) == id_
    assert FunmvOption.from_id(opt) is opt


@pytest.mark.parametrize("option", [0, 7, 'x', None])
def test_bad_option(option):
    with pytest.raises(InputError):
        funmv(1, np.eye(2), np.ones(2), option=option)


def test_bad_inputs():
    with pytest.raises(InputError):
        funmv(1, np.eye(3), np.ones(4))
    with pytest.raises(InputError):
        funmv(float('nan'), np.eye(3), np.ones(3))
    with pytest.raises(InputError):
        funmv(1, np.eye(3), np.ones(3), tol=1.5)


@pytest.mark.parametrize("option", range(1, 7))
def test_t_zero(option):
    A = np.array([[2.0, 1.0], [0.5, 3.0]])
    B = np.array([[1.0, -1.0], [2.0, 0.5]])
    report = funmv(0, A, B, option=option)
    assert_array_equal(report.C, B)
    if option in (1, 2):
        assert_array_equal(report.S, np.zeros_like(B))
    else:
        assert_array_equal(report.S, B)
    assert report.matvecs == report.expected_matvecs()


def test_scalar_shift_only():
    # trace shift removes the whole matrix
    report = funmv(1, np.array([[2.0]]), np.array([1.0]), option=1)
    assert report.path == 'zero-matrix'
    assert report.undo == 'outside'
    assert report.C[0] == pytest.approx(math.cos(2), rel=1e-15)
    assert report.S[0] == pytest.approx(math.sin(2), rel=1e-15)

    report = funmv(1, np.array([[2.0]]), np.array([1.0]), option=2)
    assert report.C[0] == pytest.approx(math.cosh(2), rel=1e-15)
    assert report.S[0] == pytest.approx(math.sinh(2), rel=1e-15)


def test_scalar_series():
    report = funmv(1, np.array([[2.0]]), np.array([1.0]), option=3)
    assert report.C[0] == pytest.approx(math.cos(2), abs=1e-14)
    assert report.S[0] == pytest.approx(math.sin(2) / 2, abs=1e-14)


def test_diag_range_sqrt_option():
    A = diag_range(100)
    b = np.ones(100)
    report = funmv(1, A, b, option=5)
    assert (report.m_star, report.s) == (17, 2)
    assert report.matvecs == 51
    assert report.m_i == [17, 17, 17]

    root = np.sqrt(np.arange(1.0, 101))
    assert rel_err(report.C, np.cos(root)) <= 1e-12
    assert rel_err(report.S, np.sin(root) / root) <= 1e-12


def test_diag_range_explicit_root_costs_twice():
    A = np.diag(np.sqrt(np.arange(1.0, 101)))
    report = funmv(1, A, np.ones(100), option=3)
    assert report.matvecs == 102
    sqrt_report = funmv(1, diag_range(100), np.ones(100), option=5)
    assert_allclose(report.C, sqrt_report.C, rtol=1e-12, atol=1e-13)
    assert_allclose(report.S, sqrt_report.S, rtol=1e-12, atol=1e-13)


def test_exp_action_matches_expm(rng):
    M = rng.uniform(-1, 1, (10, 10))
    M *= 5 / np.linalg.norm(M, 1)
    B = rng.standard_normal((10, 2))
    expected = linalg.expm(M) @ B
    assert rel_err(exp_action(1, M, B), expected) <= 1e-12


def test_exp_action_special_cases():
    B = np.array([1.0, 2.0])
    assert_array_equal(exp_action(0, np.eye(2), B), B)
    assert_array_equal(exp_action(1, np.zeros((2, 2)), B), B)
    assert exp_action(1, np.array([[1.0]]), np.array([1.0]))[0] == pytest.approx(math.e, rel=1e-15)
    nilpotent = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert_array_equal(exp_action(1, nilpotent, np.array([0.0, 1.0])), [1.0, 1.0])


def _oracle(f, A, sigma, t, b, symmetric):
    if symmetric:
        return dense_func_action(f, A, sigma, t, b)
    return dense_func_action_general(f, A, sigma, t, b)


def _check_all_options(A, b, ts, symmetric):
    tolerance = 1e3 * SINGLE
    for option in range(1, 7):
        sigma = FunmvOption.from_id(option).sigma
        f_c, f_s = OPTION_OUTPUTS[option]
        for t in ts:
            report = funmv(t, A, b, tol='single', option=option)
            assert report.matvecs == report.expected_matvecs()
            assert report.matvecs <= report.cost_bound
            if t == 0:
                continue
            assert rel_err(report.C, _oracle(f_c, A, sigma, t, b, symmetric)) <= tolerance, (option, t)
            assert rel_err(report.S, _oracle(f_s, A, sigma, t, b, symmetric)) <= tolerance, (option, t)


@pytest.mark.parametrize("seed", range(50))
def test_symmetric_agrees_with_eigen_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 13))
    A = random_symmetric(rng, n, rng.uniform(0.1, 30))
    b = rng.standard_normal(n)
    _check_all_options(A, b, (-2, 0.5, 1, 10), symmetric=True)


@pytest.mark.parametrize("seed", range(30))
def test_nonnormal_agrees_with_series_oracle(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(2, 13))
    A = random_mild_nonnormal(rng, n, rng.uniform(0.1, 10))
    b = rng.standard_normal(n)
    _check_all_options(A, b, (-1, 0.5, 1), symmetric=False)


@pytest.mark.parametrize("option", [1, 2])
def test_shift_does_not_change_result(rng, option):
    A = random_symmetric(rng, 8, 3.0) + 2 * np.eye(8)
    b = rng.standard_normal(8)
    shifted = funmv(1, A, b, tol='single', option=option)
    plain = funmv(1, A, b, tol='single', option=option, config=FunmvConfig(allow_shift=False))
    assert shifted.mu != 0
    assert plain.mu == 0
    assert rel_err(shifted.C, plain.C) <= 10 * SINGLE
    assert rel_err(shifted.S, plain.S) <= 10 * SINGLE


def test_complex_t_undoes_shift_inside(rng):
    A = random_symmetric(rng, 6, 3.0) + 2 * np.eye(6)
    b = rng.standard_normal(6)
    t = 1 + 0.5j
    report = funmv(t, A, b, option=1)
    assert report.undo == 'inside'
    assert report.matvecs == report.expected_matvecs()
    assert rel_err(report.C, dense_func_action('cos', A, 1, t, b)) <= 1e-10
    assert rel_err(report.S, dense_func_action('sin', A, 1, t, b)) <= 1e-10


def test_large_real_shift_is_undone_outside(rng):
    A = random_symmetric(rng, 6, 2.0) + 50 * np.eye(6)
    b = rng.standard_normal(6)
    report = funmv(1, A, b, option=1)
    assert report.undo == 'outside'
    assert rel_err(report.C, dense_func_action('cos', A, 1, 1, b)) <= 1e-10
    assert rel_err(report.S, dense_func_action('sin', A, 1, 1, b)) <= 1e-10


def test_hyperbolic_shift_is_undone_inside(rng):
    A = random_symmetric(rng, 6, 2.0) + 3 * np.eye(6)
    report = funmv(1, A, np.ones(6), option=2)
    assert report.undo == 'inside'
    assert report.matvecs == report.expected_matvecs()


def test_shift_overflow_raises():
    with pytest.raises(NumericalError):
        funmv(1, np.array([[1e6]]), np.array([1.0]), option=2)
    A = 1e3 * np.eye(4)
    A[0, 1] = 0.5
    with pytest.raises(NumericalError):
        funmv(1, A, np.ones(4), option=2)


def test_sinch_from_complex_sinc():
    sinch = funmv(1, np.array([[1.5]]), np.array([1.0]), option=4).S[0]
    sinc_i = funmv(1, np.array([[1.5j]]), np.array([1.0]), option=3).S[0]
    assert sinch == pytest.approx(math.sinh(1.5) / 1.5, rel=1e-14)
    assert sinc_i.real == pytest.approx(sinch, rel=1e-14)
    assert abs(sinc_i.imag) <= 1e-15


def test_scaling_coherence(rng):
    A = random_symmetric(rng, 7, 4.0)
    b = rng.standard_normal(7)
    for option in (1, 3, 4):
        lhs = funmv(2, A, b, option=option)
        rhs = funmv(1, 2 * A, b, option=option)
        assert_allclose(lhs.C, rhs.C, rtol=1e-12, atol=1e-14)
        assert_allclose(lhs.S, rhs.S, rtol=1e-12, atol=1e-14)


def test_no_early_stop_reaches_cost_bound(rng):
    A = random_symmetric(rng, 10, 8.0)
    config = FunmvConfig(early_stop=False)
    for option in range(1, 7):
        report = funmv(1, A, np.ones(10), option=option, config=config)
        assert report.m_i == [report.m_star] * (report.s + 1)
        assert report.matvecs == report.cost_bound == report.expected_matvecs()


def test_one_norm_stop_test(rng):
    A = random_symmetric(rng, 10, 8.0)
    b = rng.standard_normal(10)
    report = funmv(1, A, b, option=3, config=FunmvConfig(stop_norm='one'))
    assert rel_err(report.C, dense_func_action('cos', A, 1, 1, b)) <= 1e-12


def test_block_input_and_external_counter(rng):
    A = random_symmetric(rng, 9, 5.0)
    B = rng.standard_normal((9, 3))
    counter = MatvecCounter()
    report = funmv(1, A, B, option=5, counter=counter)
    assert report.C.shape == (9, 3)
    assert report.n0 == 3
    assert counter.count == report.matvecs
    assert rel_err(report.C, dense_func_action('cos', A, 0.5, 1, B)) <= 1e-11


def test_vector_input_returns_vector():
    report = funmv(1, diag_range(4), np.ones(4), option=3)
    assert report.C.shape == (4,)
    assert report.n0 == 1


def test_funmv_multi(rng):
    A = random_symmetric(rng, 8, 5.0)
    b = rng.standard_normal(8)
    ts = [20, 40, 80]
    counter = MatvecCounter()
    reports, spm = funmv_multi(ts, A, b, option=1, counter=counter)
    assert spm.t_ref == 20
    assert spm.theta_cost > 0
    assert counter.count == spm.theta_cost + sum(r.matvecs for r in reports)
    for t, report in zip(ts, reports):
        assert report.path == 'precomputed'
        assert report.theta_cost == 0
        assert rel_err(report.C, dense_func_action('cos', A, 1, t, b)) <= 1e-9
        assert rel_err(report.S, dense_func_action('sin', A, 1, t, b)) <= 1e-9


def test_funmv_multi_skips_alpha_when_norm_bound_holds(rng):
    A = random_symmetric(rng, 8, 5.0)
    reports, spm = funmv_multi([0.5, 1, 2], A, rng.standard_normal(8), option=1)
    assert spm is None
    assert all(r.path == 'norm-bound' and r.theta_cost == 0 for r in reports)


def test_precomputed_still_tries_norm_bound_first(rng):
    A = as_csr(random_symmetric(rng, 8, 5.0))
    b = rng.standard_normal(8)
    spm = build_spm(A, 1, 'double', t=20)
    small = funmv(0.5, A, b, option=3, precomputed=spm)
    assert small.path == 'norm-bound'
    assert small.matvecs == funmv(0.5, A, b, option=3).matvecs
    assert funmv(20, A, b, option=3, precomputed=spm).path == 'precomputed'


def test_funmv_multi_all_zero():
    reports, spm = funmv_multi([0, 0], np.eye(3), np.ones(3), option=3)
    assert spm is None
    assert all(r.path == 'zero-matrix' for r in reports)


def test_precomputed_must_match(rng):
    A = as_csr(random_symmetric(rng, 5, 2.0))
    spm = build_spm(A, 1, 'double')
    with pytest.raises(InputError):
        funmv(1, A, np.ones(5), option=5, precomputed=spm)
    with pytest.raises(InputError):
        funmv(1, A, np.ones(5), tol='single', option=3, precomputed=spm)


def test_taylor_pass_zero_matrix():
    V, Z, m_stop = taylor_pass(as_csr(np.zeros((3, 3))), np.ones((3, 1)), 1.0, 1, 5, 1, 1)
    assert m_stop == 1
    assert Z is None
    assert_array_equal(V, np.ones((3, 1)))


def test_taylor_pass_cos_at_theta():
    V, _, m_stop = taylor_pass(as_csr([[0.5]]), np.ones((1, 1)), 1.0, 1, 7, 1, 1, early_stop=False)
    assert m_stop == 7
    assert abs(V[0, 0] - math.cos(0.5)) <= 1e-15


def test_taylor_pass_sinc_of_root():
    V, Z, _ = taylor_pass(as_csr([[4.0]]), np.ones((1, 1)), 1.0, 1, 25, 0.5, 1, mode='sinc',
                          undo_inside=True)
    assert V[0, 0] == pytest.approx(0.45464871341284085, abs=1e-15)
    # the companion series of a sinc pass is cos
    assert Z[0, 0] == pytest.approx(math.cos(2), abs=1e-15)


def test_taylor_pass_hyperbolic_companion():
    V, Z, _ = taylor_pass(as_csr([[0.7]]), np.ones((1, 1)), 1.0, 1, 20, 1, 0, undo_inside=True)
    assert V[0, 0] == pytest.approx(math.cosh(0.7), rel=1e-15)
    assert Z[0, 0] == pytest.approx(math.sinh(0.7) / 0.7, rel=1e-15)


def test_taylor_pass_overflow():
    with pytest.raises(NumericalError):
        taylor_pass(as_csr([[1e200]]), np.ones((1, 1)), 1.0, 1, 5, 1, 1)


def test_taylor_pass_rejects_bad_mode():
    with pytest.raises(InputError):
        taylor_pass(as_csr([[1.0]]), np.ones((1, 1)), 1.0, 1, 5, 1, 1, mode='tan')
    with pytest.raises(InputError):
        taylor_pass(as_csr([[1.0]]), np.ones((1, 1)), 1.0, 0, 5, 1, 1)
