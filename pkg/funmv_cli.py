#!/usr/bin/env python3
"""
funmv - actions of cos/sin/sinc and cosh/sinh/sinch of sparse matrices

Subcommands:
    compute    C and S for one option at one or several t
    params     the (m*, s) selection for a matrix, as JSON
    theta      the theta_m table for a tolerance, as CSV
    integrate  fixed-step trigonometric integration of y'' + Ay = g(y)
    bench      matvec counts, timing and oracle errors of a test problem
    gen        write a generator matrix or vector to Matrix Market
"""

import csv
import functools
import json
import logging
import sys
import traceback
from pathlib import Path

import click
import numpy as np

from funmv import __version__
from funmv.bench.generators import MATRIX_GENERATORS, VECTOR_GENERATORS, generate_matrix, generate_vector
from funmv.bench.harness import BENCH_CASES, BenchCase, run_bench
from funmv.config import FunmvConfig, STOP_NORMS, resolve_tol
from funmv.engine.actions import OPTION_OUTPUTS, OPTION_TABLE, funmv
from funmv.errors import FunmvError, InputError
from funmv.formats.matrix_market import load_block, load_matrix, save_block, save_matrix
from funmv.formats.stats import emit_stats, load_spm, save_spm
from funmv.integrator.trigonometric import FILTER_PRESETS, run as integrate_run
from funmv.linalg.sparse import as_csr, shift_diagonal, trace_mean
from funmv.oracle.dense import MAX_EIGEN_N, MAX_SERIES_N, dense_func_action, dense_func_action_general
from funmv.taylor.params import build_spm, scaled_argument, select_parameters
from funmv.taylor.theta import theta_table


def progress(ctx, message):
    if ctx.obj['verbose']:
        click.echo(message, err=True)


def guarded(func):
    """Map library errors to exit codes: 2 input, 3 numerical, 1 anything else"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(ctx, *args, **kwargs)
        except FunmvError as e:
            click.echo(f"Error: {e}", err=True)
            if ctx.obj['verbose']:
                traceback.print_exc()
            sys.exit(e.exit_code)
        except Exception as e:
            click.echo(f"Error: {e}", err=True)
            if ctx.obj['verbose']:
                traceback.print_exc()
            sys.exit(1)

    return wrapper


def parse_times(text):
    values = []
    for item in text.split(','):
        item = item.strip().replace('i', 'j')
        try:
            value = complex(item)
        except ValueError:
            raise InputError(f"cannot parse t value '{item}'") from None
        values.append(value.real if value.imag == 0 else value)
    if not values:
        raise InputError("no t values given")
    return values


def indexed_path(path, index, count):
    if path is None or count == 1:
        return path
    path = Path(path)
    return path.with_name(f"{path.stem}_{index}{path.suffix}")


def load_operator(matrix, gen, size, param):
    if matrix and gen:
        raise InputError("Provide only one of --matrix or --gen, not both")
    if matrix:
        return load_matrix(matrix)
    if gen:
        if not size:
            raise InputError("--gen needs --size")
        return generate_matrix(gen, size, param)
    raise InputError("Provide either --matrix (Matrix Market file) or --gen (generator name)")


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Progress lines and debug logging on stderr')
@click.version_option(version=__version__, prog_name='funmv')
@click.pass_context
def main(ctx, verbose):
    """Actions of trigonometric and hyperbolic matrix functions"""
    ctx.ensure_object(dict)
    ctx.obj['verbose'] = verbose
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format='%(levelname)s %(name)s: %(message)s')


@main.command()
@click.option('--matrix', '-m', type=click.Path(dir_okay=False), help='Matrix Market file for A')
@click.option('--gen', type=click.Choice(sorted(MATRIX_GENERATORS)), help='Generate A instead of loading it')
@click.option('--size', type=int, help='Generator size (grid side for poisson)')
@click.option('--param', type=float, help='Generator parameter (off-diagonal value for triw)')
@click.option('--block', '-b', type=click.Path(dir_okay=False), help='Matrix Market file for B')
@click.option('--vector', type=click.Choice(sorted(VECTOR_GENERATORS)), default='ones', show_default=True,
              help='Generated b when --block is not given')
@click.option('--t', 't_text', default='1', show_default=True, help='t, or a comma-separated list of t values')
@click.option('--option', type=click.IntRange(1, 6), default=1, show_default=True)
@click.option('--tol', default='double', show_default=True, help='half, single, double or a number')
@click.option('--no-early-stop', is_flag=True, help='Run every Taylor pass to full degree')
@click.option('--stop-norm', type=click.Choice(STOP_NORMS), default='inf', show_default=True)
@click.option('--no-shift', is_flag=True, help='Force mu = 0 for options 1 and 2')
@click.option('--spm', type=click.Path(dir_okay=False), help='S_pm cache: read if present, written otherwise')
@click.option('--out-c', type=click.Path(dir_okay=False), help='Write C to this Matrix Market file')
@click.option('--out-s', type=click.Path(dir_okay=False), help='Write S to this Matrix Market file')
@click.option('--stats', type=click.Path(dir_okay=False), help='Write the run report as JSON')
@click.option('--oracle', is_flag=True, hidden=True, help='Report the error against a dense oracle')
@guarded
def compute(ctx, matrix, gen, size, param, block, vector, t_text, option, tol, no_early_stop, stop_norm,
            no_shift, spm, out_c, out_s, stats, oracle):
    """C and S for one option"""
    tol = resolve_tol(tol)
    config = FunmvConfig.from_env(early_stop=not no_early_stop, stop_norm=stop_norm, allow_shift=not no_shift)
    times = parse_times(t_text)
    sigma, _, shift = OPTION_TABLE[option]

    progress(ctx, "[1/3] Loading inputs...")
    A = load_operator(matrix, gen, size, param)
    B = load_block(block) if block else generate_vector(vector, A.shape[0])
    progress(ctx, f"      n = {A.shape[0]}, nnz = {A.nnz}, n0 = {1 if np.ndim(B) == 1 else B.shape[1]}")

    precomputed = None
    if spm:
        spm_path = Path(spm)
        if spm_path.exists():
            precomputed = load_spm(spm_path)
            progress(ctx, f"      S_pm loaded from {spm_path}")
        else:
            base = shift_diagonal(A, trace_mean(A)) if shift and not no_shift else A
            t_ref = next((abs(t) for t in times if t != 0), 1.0)
            precomputed = build_spm(base, sigma, tol, mmax=config.mmax, pmax=config.pmax, ell=config.ell,
                                    t=t_ref, config=config)
            save_spm(spm_path, precomputed)
            progress(ctx, f"      S_pm built ({precomputed.theta_cost} matvecs) and saved to {spm_path}")

    progress(ctx, f"[2/3] Computing {' and '.join(OPTION_OUTPUTS[option])}...")
    reports = [funmv(t, A, B, tol=tol, option=option, precomputed=precomputed, config=config) for t in times]

    progress(ctx, "[3/3] Writing results...")
    summaries = []
    for i, (t, report) in enumerate(zip(times, reports), start=1):
        extra = {'t': str(t)}
        if oracle:
            extra['oracle_error'] = oracle_error(A, B, t, option, report)
        if out_c:
            save_block(indexed_path(out_c, i, len(times)), report.C)
        if out_s:
            save_block(indexed_path(out_s, i, len(times)), report.S)
        text = emit_stats(report, indexed_path(stats, i, len(times)), extra=extra)
        summaries.append(json.loads(text))

    click.echo(json.dumps(summaries[0] if len(summaries) == 1 else summaries, indent=2))


def oracle_error(A, B, t, option, report):
    """Relative 1-norm error of C against a dense oracle, or None when infeasible"""
    sigma = OPTION_TABLE[option][0]
    f_c = OPTION_OUTPUTS[option][0]
    dense = A.toarray()
    n = dense.shape[0]
    if np.allclose(dense, dense.conj().T, rtol=0, atol=1e-14 * max(np.abs(dense).max(), 1.0)) and n <= MAX_EIGEN_N:
        reference = dense_func_action(f_c, dense, sigma, t, B)
    elif n <= MAX_SERIES_N:
        reference = dense_func_action_general(f_c, dense, sigma, t, B)
    else:
        return None
    C = report.C.reshape(reference.shape)
    return float(np.abs(C - reference).sum(axis=0).max() / max(np.abs(reference).sum(axis=0).max(), 1e-300))


@main.command()
@click.option('--matrix', '-m', type=click.Path(dir_okay=False), help='Matrix Market file for A')
@click.option('--gen', type=click.Choice(sorted(MATRIX_GENERATORS)), help='Generate A instead of loading it')
@click.option('--size', type=int)
@click.option('--param', type=float)
@click.option('--sigma', type=click.Choice(['1', '0.5']), default='1', show_default=True)
@click.option('--tol', default='double', show_default=True)
@click.option('--n0', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--t', 't_value', type=float, default=1.0, show_default=True)
@guarded
def params(ctx, matrix, gen, size, param, sigma, tol, n0, t_value):
    """Selected degree and scaling as JSON"""
    sigma = 1 if sigma == '1' else 0.5
    config = FunmvConfig.from_env()
    A = load_operator(matrix, gen, size, param)
    choice = select_parameters(scaled_argument(as_csr(A), t_value, sigma), sigma, tol,
                               mmax=config.mmax, pmax=config.pmax, ell=config.ell, n0=n0, config=config)
    click.echo(json.dumps({
        'm_star': choice.m_star,
        's': choice.s,
        'theta_cost': choice.theta_cost,
        'path': choice.path,
        'surrogate': choice.surrogate,
        'cost_bound': choice.cost_bound(sigma, n0),
    }, indent=2))


@main.command()
@click.option('--tol', default='double', show_default=True, help='half, single, double or a number')
@click.option('--mmax', type=click.IntRange(1, 60), default=25, show_default=True)
@guarded
def theta(ctx, tol, mmax):
    """theta_m for m = 1..mmax as CSV"""
    table = theta_table(resolve_tol(tol), mmax)
    writer = csv.writer(sys.stdout, lineterminator='\n')
    writer.writerow(['m', 'theta'])
    for m, value in table.rows():
        writer.writerow([m, f"{value:.17g}"])


@main.command()
@click.option('--matrix', '-m', type=click.Path(dir_okay=False), help='Matrix Market file for A')
@click.option('--gen', type=click.Choice(sorted(MATRIX_GENERATORS)))
@click.option('--size', type=int)
@click.option('--param', type=float)
@click.option('--y0', 'y0_path', type=click.Path(dir_okay=False), help='Initial position (default cos-range)')
@click.option('--yp0', 'yp0_path', type=click.Path(dir_okay=False), help='Initial velocity (default sin-range)')
@click.option('--h', type=float, required=True, help='Step size')
@click.option('--steps', type=click.IntRange(min=0), required=True)
@click.option('--filter', 'filter_name', type=click.Choice(sorted(FILTER_PRESETS)), default='none',
              show_default=True)
@click.option('--forcing', type=float, default=0.0, show_default=True,
              help='Strength c of the pointwise forcing g(y) = c*sin(y); 0 for none')
@click.option('--tol', default='double', show_default=True)
@click.option('--no-spm-cache', is_flag=True, help='Re-estimate alpha_p in every step')
@click.option('--out', type=click.Path(dir_okay=False), help='Trajectory CSV (t, y_1..y_n)')
@guarded
def integrate(ctx, matrix, gen, size, param, y0_path, yp0_path, h, steps, filter_name, forcing, tol,
              no_spm_cache, out):
    """Fixed-step trigonometric integration of y'' + Ay = g(y)"""
    A = load_operator(matrix, gen, size, param)
    n = A.shape[0]
    y0 = load_block(y0_path)[:, 0] if y0_path else generate_vector('cos-range', n)
    yp0 = load_block(yp0_path)[:, 0] if yp0_path else generate_vector('sin-range', n)
    g = (lambda y: forcing * np.sin(y)) if forcing else None

    def report_step(i, state):
        if i % max(steps // 10, 1) == 0:
            progress(ctx, f"      step {i}/{steps}, t = {state.t_now:g}, matvecs = {state.matvecs}")

    progress(ctx, f"[1/2] Integrating {steps} steps of h = {h:g}...")
    trajectory = integrate_run(A, y0, yp0, h, steps, g=g, filter=filter_name, tol=tol,
                               spm_cache=not no_spm_cache, config=FunmvConfig.from_env(),
                               progress=report_step)

    progress(ctx, "[2/2] Writing trajectory...")
    if out:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f)
            writer.writerow(['t'] + [f"y{i + 1}" for i in range(n)])
            for t, y in zip(trajectory.times, trajectory.y):
                writer.writerow([f"{t:.17g}"] + [f"{v:.17g}" for v in np.real(y)])

    click.echo(json.dumps({
        'steps': steps,
        't_final': float(trajectory.times[-1]),
        'matvecs': trajectory.matvecs,
        'theta_cost': trajectory.theta_cost,
    }, indent=2))


@main.command()
@click.option('--case', 'case_name', type=click.Choice(sorted(BENCH_CASES)), help='Built-in test problem')
@click.option('--matrix', '-m', type=click.Path(dir_okay=False), help='Matrix Market file for A')
@click.option('--gen', type=click.Choice(sorted(MATRIX_GENERATORS)))
@click.option('--size', type=int, default=0)
@click.option('--param', type=float)
@click.option('--vector', type=click.Choice(sorted(VECTOR_GENERATORS)), default='cos-range', show_default=True)
@click.option('--t', 't_value', type=float, default=1.0, show_default=True)
@click.option('--option', type=click.IntRange(1, 6), default=1, show_default=True)
@click.option('--tol', default='double', show_default=True)
@click.option('--ode', is_flag=True, help='Option 5 on [b, sin-range], reporting y(t)')
@click.option('--repeats', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--no-error', is_flag=True, help='Skip the oracle comparison')
@click.option('--stop-norm', type=click.Choice(STOP_NORMS), default='inf', show_default=True)
@click.option('--json', 'json_out', type=click.Path(dir_okay=False), help='Write the result as JSON')
@guarded
def bench(ctx, case_name, matrix, gen, size, param, vector, t_value, option, tol, ode, repeats, no_error,
          stop_norm, json_out):
    """Matvec count, wall time and error of one test problem"""
    if case_name:
        case = BENCH_CASES[case_name]
    elif matrix:
        case = BenchCase('file', 'file', path=matrix, t=t_value, tol=tol, option=option, vector=vector, ode=ode)
    elif gen:
        case = BenchCase(gen, gen, size, t=t_value, tol=tol, option=option, vector=vector, param=param, ode=ode)
    else:
        raise InputError("Provide one of --case, --matrix or --gen")

    progress(ctx, f"[1/1] Running {case.name} ({repeats} repeat{'s' if repeats > 1 else ''})...")
    result = run_bench(case, repeats=repeats, config=FunmvConfig.from_env(stop_norm=stop_norm),
                       with_error=not no_error)
    data = result.to_dict()
    if json_out:
        Path(json_out).parent.mkdir(parents=True, exist_ok=True)
        Path(json_out).write_text(json.dumps(data, indent=2) + '\n', encoding='utf-8')
    click.echo(json.dumps(data, indent=2))


@main.command()
@click.option('--name', type=click.Choice(sorted(MATRIX_GENERATORS) + sorted(VECTOR_GENERATORS)),
              required=True)
@click.option('--size', type=int, required=True, help='Grid side for poisson, dimension otherwise')
@click.option('--param', type=float, help='Off-diagonal value for triw')
@click.option('--out', '-o', type=click.Path(dir_okay=False), required=True)
@guarded
def gen(ctx, name, size, param, out):
    """Write a generator matrix or vector as Matrix Market"""
    if name in MATRIX_GENERATORS:
        A = generate_matrix(name, size, param)
        path = save_matrix(out, A, comment=f"funmv gen {name} {size}")
        click.echo(f"Wrote {A.shape[0]}x{A.shape[1]} matrix ({A.nnz} nonzeros) to {path}")
    else:
        b = generate_vector(name, size)
        path = save_block(out, b)
        click.echo(f"Wrote {b.size}x1 block to {path}")


if __name__ == '__main__':
    main()
