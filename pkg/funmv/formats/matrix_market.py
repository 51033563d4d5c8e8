"""
Matrix Market reading and writing

Operators are stored in coordinate format (general or symmetric, real or
complex; symmetric storage is expanded on load) and blocks in array format.
Values are written with 17 significant digits so a save/load round trip
reproduces every double exactly.
"""

from pathlib import Path

import numpy as np
from scipy import io, sparse

from ..errors import InputError
from ..linalg.sparse import as_block, as_csr

PRECISION = 17


def _read(path):
    path = Path(path)
    if not path.exists():
        raise InputError(f"{path}: file not found")
    try:
        return io.mmread(str(path))
    except (ValueError, IndexError, TypeError, OSError, RuntimeError) as e:
        raise InputError(f"{path}: malformed Matrix Market file: {e}") from e


def load_matrix(path):
    """Square operator as a CSR array"""
    data = _read(path)
    try:
        return as_csr(data)
    except InputError as e:
        raise InputError(f"{path}: {e}") from e


def load_block(path):
    """Dense n x n0 block; coordinate files are densified"""
    data = _read(path)
    if sparse.issparse(data):
        data = data.toarray()
    try:
        return as_block(np.asarray(data))
    except InputError as e:
        raise InputError(f"{path}: {e}") from e


def _prepare(path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def save_matrix(path, A, comment=''):
    path = _prepare(path)
    # a file handle keeps older scipy from appending .mtx to the name
    with open(path, 'wb') as f:
        io.mmwrite(f, sparse.coo_matrix(as_csr(A)), comment=comment,
                   precision=PRECISION, symmetry='general')
    return path


def save_block(path, B, comment=''):
    path = _prepare(path)
    with open(path, 'wb') as f:
        io.mmwrite(f, as_block(B), comment=comment, precision=PRECISION, symmetry='general')
    return path
