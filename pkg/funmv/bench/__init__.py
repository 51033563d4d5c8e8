from .generators import (
    MATRIX_GENERATORS, VECTOR_GENERATORS, cos_range, diag_range, ends, generate_matrix,
    generate_vector, laplacian_1d, ones, poisson, sin_range, triw,
)
from .harness import BENCH_CASES, BenchCase, BenchResult, oracle_values, run_bench

__all__ = [
    'MATRIX_GENERATORS', 'VECTOR_GENERATORS', 'cos_range', 'diag_range', 'ends', 'generate_matrix',
    'generate_vector', 'laplacian_1d', 'ones', 'poisson', 'sin_range', 'triw',
    'BENCH_CASES', 'BenchCase', 'BenchResult', 'oracle_values', 'run_bench',
]
