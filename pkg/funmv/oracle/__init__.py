"""Dense reference evaluators, used by the tests and the bench harness"""

from .dense import (
    EVEN_FUNCTIONS, FUNCTIONS, MAX_EIGEN_N, MAX_SERIES_N, block_ode_solution,
    dense_func_action, dense_func_action_general, expm_series, poisson_eigenvalues,
    poisson_func_action, scalar_function,
)

__all__ = [
    'EVEN_FUNCTIONS', 'FUNCTIONS', 'MAX_EIGEN_N', 'MAX_SERIES_N', 'block_ode_solution',
    'dense_func_action', 'dense_func_action_general', 'expm_series', 'poisson_eigenvalues',
    'poisson_func_action', 'scalar_function',
]
