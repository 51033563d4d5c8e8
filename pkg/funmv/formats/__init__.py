# File format modules
from .matrix_market import load_block, load_matrix, save_block, save_matrix
from .stats import STATS_FIELDS, emit_stats, load_spm, report_to_dict, save_spm, validate_stats

__all__ = [
    'load_block', 'load_matrix', 'save_block', 'save_matrix',
    'STATS_FIELDS', 'emit_stats', 'load_spm', 'report_to_dict', 'save_spm', 'validate_stats',
]
