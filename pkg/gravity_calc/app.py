#!/usr/bin/env python3
"""
Gravity calculator command-line entry point.

Exit codes: 0 success, 1 a verification found a discrepancy, 2 invalid
input, 3 success with truncation warnings.
"""
import logging
import os
from contextlib import nullcontext
from pathlib import Path

import click
import yaml

from gravity_calc.exceptions import GravityCalcError
from gravity_calc.models.cubes import CubeConfig
from gravity_calc.models.page import BigradedPage
from gravity_calc.utils import serialization
from gravity_calc.utils.cobar_engine import build_cobar_complex, chain_page, homology, verify_d_squared, word_name
from gravity_calc.utils.cube_geometry import deform_G, geometry_report
from gravity_calc.utils.gravity_ss import SphereWedge, build_E1, compare_d1, d1_complex
from gravity_calc.utils.random_configs import gen_random_config

EXIT_OK = 0
EXIT_DISCREPANCY = 1
EXIT_INVALID = 2
EXIT_TRUNCATED = 3

CONFIG_ENV = 'GRAVITY_CALC_CONFIG'


def load_config(config_path=None):
    """Load configuration from YAML file."""
    if config_path is None:
        config_path = os.environ.get(CONFIG_ENV,
                                     Path(__file__).parent.parent / 'config' / 'config.yaml')

    try:
        with open(config_path, 'r') as file:
            return yaml.safe_load(file) or {}
    except Exception as e:
        logging.error(f"Failed to load configuration: {e}")
        return {}


def setup_logging(config):
    """Set up logging based on configuration."""
    log_level = config.get('logging', {}).get('level', 'INFO')
    log_file = config.get('logging', {}).get('file', None)

    logging_config = {
        'level': getattr(logging, log_level),
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    }

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir)
        logging_config['filename'] = log_file

    logging.basicConfig(**logging_config)


def engine_settings(config):
    """Engine section merged over the built-in defaults."""
    settings = {'p': 2, 'max_s': 5, 'max_degree': 20, 'max_weight': 6, 'threads': None}
    settings.update({k: v for k, v in config.get('engine', {}).items() if v is not None})
    return settings


def _read_json(path):
    if path in (None, '-'):
        return serialization.parse_json(click.get_text_stream('stdin').read())
    with open(path, 'r', encoding='utf-8') as file:
        return serialization.parse_json(file.read())


def _archive(config):
    if not config.get('database', {}).get('enabled', False):
        return nullcontext()
    from gravity_calc.utils.database import open_session
    return open_session(config)


def _archived(config, request, matrices, compute):
    """Serve a payload from the archive, computing and storing it on a miss."""
    if matrices:
        return compute()
    with _archive(config) as session:
        if session is None:
            return compute()
        from gravity_calc.utils.database import load_result, store_result
        payload = load_result(session, request)
        if payload is None:
            payload = compute()
            store_result(session, request, payload)
        return payload


def _fail(e):
    logging.error(str(e))
    click.echo(f"error: {e}", err=True)
    return EXIT_INVALID


@click.group()
@click.option('--config', 'config_path', type=click.Path(), default=None,
              help='YAML configuration file (default: $GRAVITY_CALC_CONFIG or config/config.yaml)')
@click.pass_context
def cli(ctx, config_path):
    """Gravity filtration and cobar spectral sequence calculator."""
    config = load_config(config_path)
    setup_logging(config)
    ctx.obj = config


@cli.command()
@click.option('--input', 'input_path', required=True, help='Configuration JSON file')
@click.option('--output', 'output_path', default=None, help='Report file (default: stdout)')
@click.option('--svg', 'svg_path', default=None, help='Also write an SVG picture of the configuration')
@click.option('--deform', type=(int, str), default=None, help='Apply G(cfg, s, t) before reporting')
@click.pass_obj
def geometry(config, input_path, output_path, svg_path, deform):
    """Report gravity and skewer degrees, u_s, sigma_s and decomposability."""
    try:
        cfg = CubeConfig.from_dict(_read_json(input_path))
        max_j = config.get('geometry', {}).get('max_partition_size', 10)
        if cfg.j > max_j:
            raise GravityCalcError(f"{cfg.j} cubes exceeds geometry.max_partition_size={max_j}")
        if deform is not None:
            cfg = deform_G(cfg, deform[0], deform[1])
        report = geometry_report(cfg)
        if deform is not None:
            report['configuration'] = cfg.to_dict()
    except (ValueError, OSError) as e:
        raise SystemExit(_fail(e))
    serialization.write_text(output_path, serialization.dumps(report))
    if svg_path:
        from gravity_calc.utils.svg import write_config_svg
        write_config_svg(cfg, svg_path, config, caption=f"gravity degree {report['gravity_degree']}")
    raise SystemExit(EXIT_OK)


def _page_options(f):
    options = [
        click.option('--input', 'input_path', default=None, help='Request JSON file'),
        click.option('--output', 'output_path', default=None, help='Output file; .csv selects CSV'),
        click.option('--sphere', 'spheres', type=int, multiple=True, help='Sphere dimension (repeatable)'),
        click.option('--p', 'p', type=int, default=None, help='Prime'),
        click.option('--max-s', 'max_s', type=int, default=None),
        click.option('--max-degree', 'max_degree', type=int, default=None),
        click.option('--max-weight', 'max_weight', type=int, default=None),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _request(config, data, spheres, mode, **flags):
    if not isinstance(data, dict):
        raise GravityCalcError("request must be a JSON object")
    data = {serialization.REQUEST_KEYS.get(k, k): v for k, v in data.items()}
    settings = engine_settings(config)
    for name in ('p', 'max_s', 'max_degree', 'max_weight'):
        data.setdefault(name, settings[name])
    return serialization.request_from_json(
        data, X=list(spheres) or None, mode=mode, **flags
    )


@cli.command()
@_page_options
@click.option('--mode', type=click.Choice(serialization.MODES), default=None)
@click.option('--matrices', is_flag=True, help='Include d1 matrices as sparse triplets')
@click.pass_obj
def page(config, input_path, output_path, spheres, p, max_s, max_degree, max_weight, mode, matrices):
    """Compute E1/E2 of the gravity spectral sequence for a wedge of spheres."""
    try:
        data = _read_json(input_path) if input_path else {}
        request = _request(config, data, spheres, mode, p=p, max_s=max_s,
                           max_degree=max_degree, max_weight=max_weight)
        payload = _archived(config, request.to_dict(), matrices,
                            lambda: _run_page(config, request, matrices))
    except (ValueError, OSError) as e:
        raise SystemExit(_fail(e))

    if output_path and output_path.endswith('.csv'):
        pages = {name: _page_from_table(name, request.p, table)
                 for name, table in serialization.pages_from_payload(payload).items()}
        serialization.write_text(output_path, serialization.pages_to_csv(pages))
    else:
        serialization.write_text(output_path, serialization.dumps(payload))

    if payload.get('verdict') == 'unequal':
        raise SystemExit(EXIT_DISCREPANCY)
    raise SystemExit(EXIT_TRUNCATED if payload['truncated'] else EXIT_OK)


def _page_from_table(name, p, table):
    return BigradedPage(name, p, {(0, s, t): dim for (s, t), dim in table.items()})


def _run_page(config, request, matrices):
    if not request.X:
        raise GravityCalcError("X must list at least one sphere")
    threads = engine_settings(config)['threads']
    X = SphereWedge(tuple(request.X))
    E1 = build_E1(X, request.p, request.max_s, request.max_degree, request.max_weight)
    pages = {'E1': E1.page()}
    extra = {}
    method = 'cobar' if request.mode == 'cobar' else 'shuffle'
    complex_ = d1_complex(E1, method)
    if request.mode == 'compare':
        equal, witness = compare_d1(E1)
        extra['verdict'] = 'equal' if equal else 'unequal'
        if witness is not None:
            extra['witness'] = E1.name(witness)
    if request.mode in ('e2', 'compare'):
        ok, witness = verify_d_squared(complex_)
        if not ok:
            raise GravityCalcError(f"d1 ∘ d1 is nonzero on {E1.name(witness)}")
        pages['E2'] = homology(complex_, 'E2', threads)
    if matrices:
        extra['matrices'] = serialization.matrices_payload(complex_)
    return serialization.page_payload(pages, complex_.truncated, E1.box, **extra)


@cli.command()
@click.option('--input', 'input_path', required=True, help='Coalgebra JSON file')
@click.option('--output', 'output_path', default=None)
@click.option('--max-s', 'max_s', type=int, default=None)
@click.option('--max-degree', 'max_degree', type=int, default=None)
@click.option('--matrices', is_flag=True)
@click.pass_obj
def cotor(config, input_path, output_path, max_s, max_degree, matrices):
    """Cotor of a coalgebra given by table (optionally with comodules M, N)."""
    settings = engine_settings(config)
    max_s = max_s or settings['max_s']
    max_degree = max_degree or settings['max_degree']
    try:
        data = _read_json(input_path)
        C, M, N = _coalgebra_input(data)
        request = {'mode': 'cotor', 'input': serialization.to_jsonable(data),
                   'max_s': max_s, 'max_degree': max_degree}
        payload = _archived(config, request, matrices,
                            lambda: _run_cotor(config, C, M, N, max_s, max_degree, matrices))
    except (ValueError, OSError) as e:
        raise SystemExit(_fail(e))
    if output_path and output_path.endswith('.csv'):
        pages = {name: _page_from_table(name, C.p, table)
                 for name, table in serialization.pages_from_payload(payload).items()}
        serialization.write_text(output_path, serialization.pages_to_csv(pages))
    else:
        serialization.write_text(output_path, serialization.dumps(payload))
    raise SystemExit(EXIT_TRUNCATED if payload['truncated'] else EXIT_OK)


def _coalgebra_input(data):
    if not isinstance(data, dict):
        raise GravityCalcError("coalgebra must be a JSON object")
    C = serialization.coalgebra_from_json(data)
    M, N = serialization.comodules_from_json(C, data)
    return C, M, N


def _run_cotor(config, C, M, N, max_s, max_degree, matrices):
    complex_ = build_cobar_complex(C, max_s, max_degree, M, N)
    pages = {'E1': chain_page(complex_), 'E2': homology(complex_, 'Cotor', engine_settings(config)['threads'])}
    extra = {'matrices': serialization.matrices_payload(complex_)} if matrices else {}
    return serialization.page_payload(pages, complex_.truncated, complex_.box, **extra)


@cli.command()
@_page_options
@click.pass_obj
def verify(config, input_path, output_path, spheres, p, max_s, max_degree, max_weight):
    """
    Check d ∘ d = 0 (and, for a sphere wedge, that both d1 constructions agree).

    The input is either a request with "X" or a coalgebra table, optionally
    with comodules "M" and "N".
    """
    try:
        data = _read_json(input_path) if input_path else {}
        if isinstance(data, dict) and 'basis' in data:
            settings = engine_settings(config)
            C, M, N = _coalgebra_input(data)
            complex_ = build_cobar_complex(C, max_s or settings['max_s'], max_degree or settings['max_degree'],
                                           M, N)
            ok, witness = verify_d_squared(complex_)
            result = {'d_squared_zero': ok, 'witness': word_name(witness, C, M, N) if witness else None}
            truncated = complex_.truncated
        else:
            request = _request(config, data, spheres, 'compare', p=p, max_s=max_s,
                               max_degree=max_degree, max_weight=max_weight)
            if not request.X:
                raise GravityCalcError("X must list at least one sphere")
            E1 = build_E1(SphereWedge(tuple(request.X)), request.p, request.max_s,
                          request.max_degree, request.max_weight)
            result = {}
            ok = True
            for method in ('shuffle', 'cobar'):
                complex_ = d1_complex(E1, method)
                zero, witness = verify_d_squared(complex_)
                result[f'{method}_d_squared_zero'] = zero
                if witness is not None:
                    result[f'{method}_witness'] = E1.name(witness)
                ok = ok and zero
            equal, witness = compare_d1(E1)
            result['verdict'] = 'equal' if equal else 'unequal'
            if witness is not None:
                result['witness'] = E1.name(witness)
            ok = ok and equal
            truncated = complex_.truncated
    except (ValueError, OSError) as e:
        raise SystemExit(_fail(e))
    result['truncated'] = truncated
    serialization.write_text(output_path, serialization.dumps(result))
    if not ok:
        raise SystemExit(EXIT_DISCREPANCY)
    raise SystemExit(EXIT_TRUNCATED if truncated else EXIT_OK)


@cli.command()
@click.option('--n', 'n', type=int, default=2, help='Dimension of the cubes')
@click.option('--j', 'j', type=int, required=True, help='Number of cubes')
@click.option('--seed', type=int, default=0)
@click.option('--output', 'output_path', default=None)
@click.option('--svg', 'svg_path', default=None)
@click.pass_obj
def gen(config, n, j, seed, output_path, svg_path):
    """Generate a random valid configuration."""
    geometry_config = config.get('geometry', {})
    try:
        cfg = gen_random_config(
            n, j, seed,
            retries=geometry_config.get('random_retries', 1000),
            denominator=geometry_config.get('denominator', 20),
        )
    except (ValueError, OSError) as e:
        raise SystemExit(_fail(e))
    serialization.write_text(output_path, serialization.dumps_config(cfg))
    if svg_path:
        from gravity_calc.utils.svg import write_config_svg
        write_config_svg(cfg, svg_path, config, caption=f"seed {seed}")
    raise SystemExit(EXIT_OK)


if __name__ == '__main__':
    cli()
