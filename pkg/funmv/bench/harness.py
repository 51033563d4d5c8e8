"""
Benchmark cases: matvec counts, wall time and the error against a dense oracle

Errors are relative 1-norm forward errors, computed only where an oracle
is feasible: the sine transform for poisson(k), an eigendecomposition for
other symmetric matrices, and the compensated series for small or upper
triangular matrices (on the trailing block, whose values depend only on
the trailing block of A).
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import sparse

from ..config import DEFAULT_CONFIG
from ..engine.actions import OPTION_OUTPUTS, OPTION_TABLE, funmv
from ..errors import InputError
from ..formats.matrix_market import load_matrix
from ..oracle.dense import (
    MAX_EIGEN_N, MAX_SERIES_N, dense_func_action, dense_func_action_general, poisson_func_action,
)
from .generators import generate_matrix, generate_vector, sin_range

logger = logging.getLogger(__name__)

TRAILING_BLOCK = 512


@dataclass
class BenchCase:
    """
    One benchmark problem

    matrix is a generator name (poisson, triw, diag-range) or 'file' with
    path set. With sqrt the operator is replaced by its explicit square
    root (diagonal matrices only); with ode the block is [b, sin-range]
    and the reported quantity is y(t) = cos(t√A)b + t sinc(t√A)z.
    """

    name: str
    matrix: str
    size: int = 0
    t: float = 1.0
    tol: str = 'double'
    option: int = 1
    vector: str = 'cos-range'
    param: Optional[float] = None
    path: Optional[str] = None
    sqrt: bool = False
    ode: bool = False

    def __post_init__(self):
        if self.option not in OPTION_TABLE:
            raise InputError(f"option must be an integer 1..6, got {self.option}")
        if self.ode and self.option != 5:
            raise InputError("the ODE case runs option 5")
        if self.matrix == 'file' and not self.path:
            raise InputError("a file case needs a matrix path")

    def build_matrix(self):
        if self.matrix == 'file':
            A = load_matrix(self.path)
        else:
            A = generate_matrix(self.matrix, self.size, self.param)
        if self.sqrt:
            if sparse.triu(A, k=1).nnz or sparse.tril(A, k=-1).nnz:
                raise InputError("an explicit square root is only formed for diagonal matrices")
            A = sparse.diags_array(np.sqrt(A.diagonal().astype(complex)), format='csr')
            if not np.any(A.data.imag):
                A = sparse.csr_array(A.real)
        return A

    def build(self):
        A = self.build_matrix()
        n = A.shape[0]
        b = generate_vector(self.vector, n)
        if self.ode:
            return A, np.column_stack([b, sin_range(n)])
        return A, b[:, np.newaxis]


@dataclass
class BenchResult:
    name: str
    option: int
    n: int
    matvecs: int
    wall_time: float
    error: Optional[float] = None
    oracle: Optional[str] = None
    s: int = 0
    m_star: int = 0
    path: str = ''
    counts: List[int] = field(default_factory=list)

    def to_dict(self):
        return {
            'name': self.name, 'option': self.option, 'n': self.n,
            'matvecs': self.matvecs, 'wall_time': self.wall_time,
            'error': self.error, 'oracle': self.oracle,
            's': self.s, 'm_star': self.m_star, 'path': self.path,
        }


BENCH_CASES = {
    'poisson-double': BenchCase('poisson-double', 'poisson', 99, t=500, tol='double', option=1),
    'poisson-single': BenchCase('poisson-single', 'poisson', 99, t=500, tol='single', option=1),
    'poisson-half': BenchCase('poisson-half', 'poisson', 99, t=500, tol='half', option=1),
    'triw-double': BenchCase('triw-double', 'triw', 2000, t=10, tol='double', option=1, param=4.0),
    'triw-ode': BenchCase('triw-ode', 'triw', 2000, t=10, tol='double', option=5, param=4.0, ode=True),
    'diag-option5': BenchCase('diag-option5', 'diag-range', 100, t=1, option=5, vector='ones'),
    'diag-sqrt-option3': BenchCase('diag-sqrt-option3', 'diag-range', 100, t=1, option=3,
                                   vector='ones', sqrt=True),
}


def _is_symmetric(A):
    diff = abs(A - A.conj().T)
    return diff.nnz == 0 or diff.max() <= 1e-14 * max(abs(A).max(), 1.0)


def _is_upper_triangular(A):
    return sparse.tril(A, k=-1).nnz == 0


def _combine(case, C, S):
    if case.ode:
        return C[:, 0] + case.t * S[:, 1]
    return C[:, 0]


def oracle_values(case, A, B):
    """
    Reference for the quantity the case reports, with the rows it covers

    Returns:
        (reference, rows, oracle name) or (None, None, None) when no oracle is feasible
    """
    sigma = OPTION_TABLE[case.option][0]
    f_c, f_s = OPTION_OUTPUTS[case.option]
    n = A.shape[0]

    def evaluate(func, A_part, B_part):
        C_ref = func(f_c, A_part, sigma, case.t, B_part[:, :1])[:, 0]
        if not case.ode:
            return C_ref
        return C_ref + case.t * func(f_s, A_part, sigma, case.t, B_part[:, 1:2])[:, 0]

    if case.matrix == 'poisson' and not case.sqrt:
        k = case.size
        C_ref = poisson_func_action(f_c, k, case.t, B[:, :1], sigma)[:, 0]
        if case.ode:
            C_ref = C_ref + case.t * poisson_func_action(f_s, k, case.t, B[:, 1:2], sigma)[:, 0]
        return C_ref, slice(0, n), 'sine-transform'

    if _is_symmetric(A) and n <= MAX_EIGEN_N:
        return evaluate(dense_func_action, A.toarray(), B), slice(0, n), 'eigen'

    if n <= MAX_SERIES_N:
        return evaluate(dense_func_action_general, A.toarray(), B), slice(0, n), 'series'

    if _is_upper_triangular(A):
        start = n - TRAILING_BLOCK
        tail = A[start:, start:].toarray()
        return evaluate(dense_func_action_general, tail, B[start:]), slice(start, n), 'series-trailing'

    return None, None, None


def run_bench(case, repeats=1, config=None, with_error=True):
    """Run a case repeats times; matvecs must agree across repeats"""
    if repeats < 1:
        raise InputError(f"repeats must be positive, got {repeats}")
    config = config or DEFAULT_CONFIG
    A, B = case.build()

    times, counts, report = [], [], None
    for _ in range(repeats):
        start = time.perf_counter()
        report = funmv(case.t, A, B, tol=case.tol, option=case.option, config=config)
        times.append(time.perf_counter() - start)
        counts.append(report.matvecs)
    if len(set(counts)) > 1:
        logger.warning("%s: matvec counts differ across repeats: %s", case.name, counts)

    result = BenchResult(
        name=case.name, option=case.option, n=A.shape[0], matvecs=counts[0],
        wall_time=min(times), s=report.s, m_star=report.m_star, path=report.path, counts=counts,
    )
    if not with_error:
        return result

    reference, rows, oracle = oracle_values(case, A, B)
    if reference is None:
        logger.info("%s: no feasible oracle for n = %d", case.name, A.shape[0])
        return result

    value = _combine(case, report.C, report.S)[rows]
    denom = np.sum(np.abs(reference))
    result.error = float(np.sum(np.abs(value - reference)) / (denom if denom else 1.0))
    result.oracle = oracle
    return result
