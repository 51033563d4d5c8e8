# Sparse operator primitives and norm estimation
from .sparse import (
    MatvecCounter, as_block, as_csr, csr_from_arrays, inf_norm, matmat,
    one_norm, one_norm_block, rmatmat, scale, shift_diagonal, to_dense, trace_mean,
)
from .normest import AlphaSequence, PowerOperator, alpha_sequence, est_one_norm_power, norm_root

__all__ = [
    'MatvecCounter', 'as_block', 'as_csr', 'csr_from_arrays', 'inf_norm', 'matmat',
    'one_norm', 'one_norm_block', 'rmatmat', 'scale', 'shift_diagonal', 'to_dense',
    'trace_mean', 'AlphaSequence', 'PowerOperator', 'alpha_sequence',
    'est_one_norm_power', 'norm_root',
]
