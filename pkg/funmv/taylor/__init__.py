# Truncated Taylor series bounds and parameter selection
from .theta import ThetaTable, builtin_table, rho, solve_theta, theta_table
from .params import (
    PATHS, ParamChoice, SpmMatrix, build_spm, norm_bound_choice, scaled_argument, select_for_t,
    select_parameters,
)

__all__ = [
    'ThetaTable', 'builtin_table', 'rho', 'solve_theta', 'theta_table',
    'PATHS', 'ParamChoice', 'SpmMatrix', 'build_spm', 'norm_bound_choice', 'scaled_argument',
    'select_for_t', 'select_parameters',
]
