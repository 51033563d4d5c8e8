"""
funmv - actions of trigonometric and hyperbolic matrix functions

Computes cos/cosh(tA^σ)B together with sin/sinh/sinc/sinch(tA^σ)B for
σ = 1 or ½ using truncated Taylor series, Chebyshev recurrences and
cost-optimal selection of the scaling parameter. A^½ is never formed.
"""

__version__ = "0.1.0"

from .engine.actions import FunmvOption, FunmvReport, exp_action, funmv, funmv_multi

__all__ = ['FunmvOption', 'FunmvReport', 'exp_action', 'funmv', 'funmv_multi']
