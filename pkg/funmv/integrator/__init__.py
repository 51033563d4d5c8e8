from .trigonometric import (
    FILTER_PRESETS, FilterSpec, IntegratorState, Trajectory, TrigonometricIntegrator,
    initial_state, run, step,
)

__all__ = [
    'FILTER_PRESETS', 'FilterSpec', 'IntegratorState', 'Trajectory', 'TrigonometricIntegrator',
    'initial_state', 'run', 'step',
]
