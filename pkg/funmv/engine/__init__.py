from .actions import (
    OPTION_OUTPUTS, OPTION_TABLE, UNDO_MODES, FunmvOption, FunmvReport,
    exp_action, funmv, funmv_multi, taylor_pass,
)

__all__ = [
    'OPTION_OUTPUTS', 'OPTION_TABLE', 'UNDO_MODES', 'FunmvOption', 'FunmvReport',
    'exp_action', 'funmv', 'funmv_multi', 'taylor_pass',
]
