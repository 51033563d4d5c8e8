import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from funmv.bench import (
    BENCH_CASES, BenchCase, cos_range, diag_range, ends, generate_matrix, generate_vector,
    laplacian_1d, poisson, run_bench, triw,
)
from funmv.bench import harness
from funmv.config import FunmvConfig
from funmv.errors import InputError
from funmv.oracle import dense_func_action_general


def test_poisson_small_grid():
    expected = np.array([
        [-4, 1, 0, 1, 0, 0, 0, 0, 0],
        [1, -4, 1, 0, 1, 0, 0, 0, 0],
        [0, 1, -4, 0, 0, 1, 0, 0, 0],
        [1, 0, 0, -4, 1, 0, 1, 0, 0],
        [0, 1, 0, 1, -4, 1, 0, 1, 0],
        [0, 0, 1, 0, 1, -4, 0, 0, 1],
        [0, 0, 0, 1, 0, 0, -4, 1, 0],
        [0, 0, 0, 0, 1, 0, 1, -4, 1],
        [0, 0, 0, 0, 0, 1, 0, 1, -4],
    ], dtype=float)
    assert_array_equal(poisson(3).toarray(), expected)


def test_triw():
    A = triw(4).toarray()
    assert_array_equal(np.diag(A), -np.ones(4))
    assert_array_equal(A[np.triu_indices(4, k=1)], -4 * np.ones(6))
    assert_array_equal(A[np.tril_indices(4, k=-1)], np.zeros(6))
    assert_array_equal(triw(3, 2.0).toarray()[0], [-1, -2, -2])


def test_generators():
    assert_array_equal(laplacian_1d(3).toarray(), [[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert_array_equal(diag_range(3).diagonal(), [1, 2, 3])
    assert_array_equal(ends(5), [1, 0, 0, 0, 1])
    assert_allclose(cos_range(3), np.cos([1.0, 2.0, 3.0]))
    assert_array_equal(generate_matrix('triw', 3, 2.0).toarray(), triw(3, 2.0).toarray())
    assert generate_vector('ones', 4).sum() == 4


def test_generator_errors():
    with pytest.raises(InputError):
        generate_matrix('hilbert', 4)
    with pytest.raises(InputError):
        generate_vector('random', 4)
    with pytest.raises(InputError):
        poisson(0)
    with pytest.raises(InputError):
        triw(2.5)


def test_case_validation():
    with pytest.raises(InputError):
        BenchCase('x', 'poisson', 5, option=1, ode=True)
    with pytest.raises(InputError):
        BenchCase('x', 'file')
    with pytest.raises(InputError):
        BenchCase('x', 'poisson', 5, option=9)


def test_diag_option5_case():
    result = run_bench(BENCH_CASES['diag-option5'])
    assert result.matvecs == 51
    assert result.oracle == 'eigen'
    assert result.error <= 1e-12


def test_diag_sqrt_case_costs_twice():
    result = run_bench(BENCH_CASES['diag-sqrt-option3'], repeats=2)
    assert result.matvecs == 102
    assert result.counts == [102, 102]
    assert result.error <= 1e-12
    assert set(result.to_dict()) >= {'name', 'matvecs', 'wall_time', 'error', 'oracle'}


def test_ode_case_against_sine_transform():
    case = BenchCase('ode-small', 'poisson', 10, t=2.0, option=5, ode=True)
    result = run_bench(case)
    assert result.oracle == 'sine-transform'
    assert result.error <= 1e-11


def test_without_error():
    result = run_bench(BenchCase('small', 'poisson', 5, t=1.0), with_error=False)
    assert result.error is None
    assert result.matvecs > 0


def test_trailing_block_oracle(monkeypatch):
    monkeypatch.setattr(harness, 'MAX_SERIES_N', 10)
    monkeypatch.setattr(harness, 'TRAILING_BLOCK', 8)
    case = BenchCase('triw-small', 'triw', 20, t=0.1, param=4.0)
    A, B = case.build()
    reference, rows, oracle = harness.oracle_values(case, A, B)
    assert oracle == 'series-trailing'
    assert rows == slice(12, 20)
    full = dense_func_action_general('cos', A.toarray(), 1, 0.1, B)[12:, 0]
    assert_allclose(reference, full, rtol=1e-10, atol=1e-12)

    result = run_bench(case)
    assert result.oracle == 'series-trailing'
    assert result.error <= 1e-9


@pytest.mark.parametrize("name,expected,max_error", [
    ('poisson-double', 9757, 1e-10),
    ('poisson-single', 6415, 1e-5),
    ('poisson-half', 5223, 1e-2),
])
def test_poisson_reference_counts(name, expected, max_error):
    result = run_bench(BENCH_CASES[name])
    assert abs(result.matvecs - expected) <= 0.2 * expected
    assert result.oracle == 'sine-transform'
    assert result.error <= max_error


def test_poisson_stop_norms_agree():
    case = BENCH_CASES['poisson-double']
    inf_norm = run_bench(case, with_error=False)
    one_norm = run_bench(case, config=FunmvConfig(stop_norm='one'), with_error=False)
    assert abs(inf_norm.matvecs - one_norm.matvecs) <= 0.05 * inf_norm.matvecs
