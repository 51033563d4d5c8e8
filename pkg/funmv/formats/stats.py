"""
JSON serialization of run reports and cached S_pm matrices
"""

import json
from pathlib import Path

import numpy as np

from ..engine.actions import OPTION_OUTPUTS, UNDO_MODES
from ..errors import InputError
from ..taylor.params import PATHS, SpmMatrix

# field name -> accepted JSON types
STATS_FIELDS = {
    'option': (int,),
    'outputs': (list,),
    'n': (int,),
    'n0': (int,),
    'matvecs': (int,),
    'expected_matvecs': (int,),
    'cost_bound': (int,),
    's': (int,),
    'm_star': (int,),
    'm_i': (list,),
    'mu': (float, int, dict),
    'undo': (str,),
    'path': (str,),
    'theta_cost': (int,),
}


def _scalar(value):
    value = complex(value)
    if value.imag == 0:
        return float(value.real)
    return {'re': float(value.real), 'im': float(value.imag)}


def report_to_dict(report):
    """Everything in a FunmvReport except the output blocks"""
    return {
        'option': int(report.option),
        'outputs': list(OPTION_OUTPUTS[report.option]),
        'n': int(report.C.shape[0]),
        'n0': int(report.n0),
        'matvecs': int(report.matvecs),
        'expected_matvecs': int(report.expected_matvecs()),
        'cost_bound': int(report.cost_bound),
        's': int(report.s),
        'm_star': int(report.m_star),
        'm_i': [int(m) for m in report.m_i],
        'mu': _scalar(report.mu),
        'undo': report.undo,
        'path': report.path,
        'theta_cost': int(report.theta_cost),
    }


def validate_stats(data):
    """Check a stats dictionary against STATS_FIELDS"""
    missing = [name for name in STATS_FIELDS if name not in data]
    if missing:
        raise InputError(f"stats missing fields: {', '.join(missing)}")
    for name, types in STATS_FIELDS.items():
        value = data[name]
        if isinstance(value, bool) or not isinstance(value, types):
            raise InputError(f"stats field '{name}' has type {type(value).__name__}")
    if data['undo'] not in UNDO_MODES:
        raise InputError(f"stats field 'undo' has unknown value {data['undo']!r}")
    if data['path'] not in PATHS:
        raise InputError(f"stats field 'path' has unknown value {data['path']!r}")
    if not all(isinstance(m, int) and m >= 0 for m in data['m_i']):
        raise InputError("stats field 'm_i' must hold nonnegative integers")
    return data


def emit_stats(report, path=None, extra=None):
    """JSON text for a report, written to path when given"""
    data = report_to_dict(report)
    if extra:
        data.update(extra)
    text = json.dumps(data, indent=2)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + '\n', encoding='utf-8')
    return text


def save_spm(path, spm):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {
        'sigma': spm.sigma,
        'tol': spm.tol,
        't_ref': spm.t_ref,
        'theta_cost': spm.theta_cost,
        'values': spm.values.tolist(),
    }
    path.write_text(json.dumps(data), encoding='utf-8')
    return path


def load_spm(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
        values = np.array(data['values'], dtype=float)
        spm = SpmMatrix(values=values, sigma=data['sigma'], tol=float(data['tol']),
                        t_ref=float(data['t_ref']), theta_cost=int(data['theta_cost']))
    except FileNotFoundError:
        raise InputError(f"{path}: file not found") from None
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{path}: not a valid S_pm cache: {e}") from e
    if values.ndim != 2 or spm.sigma not in (1, 0.5):
        raise InputError(f"{path}: not a valid S_pm cache")
    return spm
