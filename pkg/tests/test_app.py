"""
Tests for the command-line interface.
"""
import json
from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

from gravity_calc.app import EXIT_DISCREPANCY, EXIT_INVALID, EXIT_OK, EXIT_TRUNCATED, cli, engine_settings
from gravity_calc.models.record import PageRecord
from gravity_calc.utils.database import open_session

THREE_CUBES = {
    "n": 2,
    "cubes": [
        {"axes": [{"center": "0", "radius": "1/2"}, {"center": "0", "radius": "1/4"}]},
        {"axes": [{"center": "0", "radius": "1/4"}, {"center": "3/5", "radius": "1/4"}]},
        {"axes": [{"center": "2/5", "radius": "1/2"}, {"center": "-3/5", "radius": "1/4"}]},
    ],
}

PRIMITIVE = {"p": 2, "basis": [{"name": "x", "deg": 2}], "coproduct": {}}


@pytest.fixture
def workdir(tmp_path):
    """A temporary directory with a configuration file and input files."""
    config = {
        'logging': {'level': 'WARNING'},
        'engine': {'threads': 2},
        'database': {'enabled': False, 'path': str(tmp_path / 'archive.db')},
        'svg': {'width': 200, 'height': 200},
    }
    (tmp_path / 'config.yaml').write_text(yaml.safe_dump(config))
    (tmp_path / 'cubes.json').write_text(json.dumps(THREE_CUBES))
    (tmp_path / 'primitive.json').write_text(json.dumps(PRIMITIVE))
    return tmp_path


@pytest.fixture
def run(workdir):
    """Invoke the CLI with the temporary configuration."""
    runner = CliRunner()

    def invoke(*args, config='config.yaml'):
        return runner.invoke(cli, ['--config', str(workdir / config)] + [str(a) for a in args])

    return invoke


def read_json(path):
    return json.loads(path.read_text(encoding='utf-8'))


def test_engine_settings_defaults():
    assert engine_settings({}) == {'p': 2, 'max_s': 5, 'max_degree': 20, 'max_weight': 6, 'threads': None}
    assert engine_settings({'engine': {'p': 3, 'max_s': None}})['p'] == 3


def test_geometry(run, workdir):
    """Test the geometry report of the three-cube configuration."""
    out = workdir / 'report.json'
    result = run('geometry', '--input', workdir / 'cubes.json', '--output', out, '--svg', workdir / 'c.svg')
    assert result.exit_code == EXIT_OK
    report = read_json(out)
    assert report['gravity_degree'] == 2
    assert report['skewer_degree'] == 1
    assert report['sigma']['2'] == '3/5'
    assert report['decomposable'] == {'1': True, '2': False, '3': False}
    assert (workdir / 'c.svg').exists()


def test_geometry_deform(run, workdir):
    """Test that the deformation endpoint is decomposable."""
    out = workdir / 'deformed.json'
    result = run('geometry', '--input', workdir / 'cubes.json', '--output', out, '--deform', 2, 1)
    assert result.exit_code == EXIT_OK
    report = read_json(out)
    assert report['decomposable']['2'] is True
    assert report['configuration']['cubes'][0]['axes'][0]['radius'] == '1/5'


def test_geometry_rejects_bad_input(run, workdir):
    """Test malformed and overlapping configurations."""
    (workdir / 'broken.json').write_text('{"cubes": [')
    assert run('geometry', '--input', workdir / 'broken.json').exit_code == EXIT_INVALID
    overlapping = {"cubes": [THREE_CUBES['cubes'][0], THREE_CUBES['cubes'][0]]}
    (workdir / 'overlap.json').write_text(json.dumps(overlapping))
    assert run('geometry', '--input', workdir / 'overlap.json').exit_code == EXIT_INVALID
    assert run('geometry', '--input', workdir / 'missing.json').exit_code == EXIT_INVALID
    assert run('geometry', '--input', workdir / 'cubes.json', '--deform', 2, 3).exit_code == EXIT_INVALID


def test_geometry_size_guard_precedes_deform(run, workdir):
    """Test that oversized configurations are refused before deforming."""
    small = {
        'logging': {'level': 'WARNING'},
        'database': {'enabled': False},
        'geometry': {'max_partition_size': 2},
    }
    (workdir / 'small.yaml').write_text(yaml.safe_dump(small))
    out = workdir / 'deformed.json'
    result = run('geometry', '--input', workdir / 'cubes.json', '--output', out, '--deform', 2, 1,
                 config='small.yaml')
    assert result.exit_code == EXIT_INVALID
    assert 'max_partition_size=2' in result.output
    assert not out.exists()


def test_page_compare(run, workdir):
    """Test the compare mode on S^1 over F_2 in the default box."""
    out = workdir / 'page.json'
    result = run('page', '--sphere', 1, '--p', 2, '--mode', 'compare', '--output', out)
    assert result.exit_code == EXIT_OK
    payload = read_json(out)
    assert payload['verdict'] == 'equal'
    assert payload['truncated'] is False
    assert payload['box'] == {'max_s': 5, 'max_degree': 20, 'max_weight': 6}
    assert payload['pages']['E2']['0,0'] == 1
    assert payload['pages']['E2']['-1,2'] == 1
    assert payload['pages']['E2']['-2,4'] == 1
    assert payload['pages']['E1']['-2,6'] == 2


def test_page_request_file(run, workdir):
    """Test camelCase request keys."""
    request = {"X": [1], "p": 2, "maxS": 2, "maxDegree": 8, "maxWeight": 3, "mode": "e2"}
    (workdir / 'request.json').write_text(json.dumps(request))
    out = workdir / 'page.json'
    result = run('page', '--input', workdir / 'request.json', '--output', out, '--matrices')
    assert result.exit_code == EXIT_OK
    payload = read_json(out)
    assert payload['box'] == {'max_s': 2, 'max_degree': 8, 'max_weight': 3}
    assert 'matrices' in payload


def test_page_without_spheres_is_invalid(run):
    assert run('page').exit_code == EXIT_INVALID
    assert run('page', '--sphere', 0).exit_code == EXIT_INVALID
    assert run('page', '--sphere', 1, '--p', 4).exit_code == EXIT_INVALID


def test_page_truncated(run, workdir):
    """Test exit code 3 when d1 leaves the box at the top row."""
    out = workdir / 'page.json'
    result = run('page', '--sphere', 1, '--p', 2, '--max-s', 1, '--max-weight', 3, '--output', out)
    assert result.exit_code == EXIT_TRUNCATED
    assert read_json(out)['truncated'] is True


def test_page_csv(run, workdir):
    out = workdir / 'page.csv'
    result = run('page', '--sphere', 1, '--p', 2, '--max-s', 2, '--max-degree', 8, '--max-weight', 3,
                 '--output', out)
    assert result.exit_code == EXIT_OK
    lines = out.read_text(encoding='utf-8').splitlines()
    assert lines[0] == 'page,s,t,total,dim'
    assert 'E2,-1,2,1,1' in lines


def test_page_archive(run, workdir):
    """Test that a repeated request is served from the archive."""
    config = yaml.safe_load((workdir / 'config.yaml').read_text())
    config['database']['enabled'] = True
    (workdir / 'archive.yaml').write_text(yaml.safe_dump(config))
    args = ('page', '--sphere', 1, '--p', 2, '--max-s', 2, '--max-degree', 8, '--max-weight', 3)
    first = workdir / 'first.json'
    second = workdir / 'second.json'
    assert run(*args, '--output', first, config='archive.yaml').exit_code == EXIT_OK
    assert run(*args, '--output', second, config='archive.yaml').exit_code == EXIT_OK
    assert read_json(first) == read_json(second)
    with open_session(config) as session:
        assert session.query(PageRecord).count() == 1


def test_cotor(run, workdir):
    """Test Cotor of one primitive class."""
    out = workdir / 'cotor.json'
    result = run('cotor', '--input', workdir / 'primitive.json', '--max-s', 3, '--max-degree', 6,
                 '--output', out)
    assert result.exit_code == EXIT_OK
    assert read_json(out)['pages']['E2'] == {'0,0': 1, '-1,2': 1, '-2,4': 1, '-3,6': 1}


def test_verify_coalgebra(run, workdir):
    out = workdir / 'verify.json'
    result = run('verify', '--input', workdir / 'primitive.json', '--max-s', 3, '--max-degree', 6,
                 '--output', out)
    assert result.exit_code == EXIT_OK
    assert read_json(out)['d_squared_zero'] is True


def test_verify_spheres(run, workdir):
    """Test both d1 constructions on S^1 ∨ S^2 over F_3; the top row is truncated."""
    out = workdir / 'verify.json'
    result = run('verify', '--sphere', 1, '--sphere', 2, '--p', 3, '--max-s', 3, '--max-degree', 12,
                 '--max-weight', 4, '--output', out)
    assert result.exit_code == EXIT_TRUNCATED
    report = read_json(out)
    assert report['verdict'] == 'equal'
    assert report['shuffle_d_squared_zero'] and report['cobar_d_squared_zero']
    assert result.exit_code != EXIT_DISCREPANCY


def test_gen_is_deterministic(run, workdir):
    """Test that the same seed writes the same configuration."""
    first, second = workdir / 'a.json', workdir / 'b.json'
    assert run('gen', '--j', 4, '--seed', 5, '--output', first).exit_code == EXIT_OK
    assert run('gen', '--j', 4, '--seed', 5, '--output', second, '--svg', workdir / 'g.svg').exit_code == EXIT_OK
    assert first.read_text() == second.read_text()
    assert len(read_json(first)['cubes']) == 4
    assert run('gen', '--j', 0).exit_code == EXIT_INVALID


def test_cotor_documented_example(run, workdir):
    """Test the two-sided example in docs/ with CSV output; x^3 splits, so the top row is truncated."""
    docs = Path(__file__).parent.parent / 'docs'
    out = workdir / 'cotor.csv'
    result = run('cotor', '--input', docs / 'binomial-coalgebra.json', '--max-s', 4, '--max-degree', 16,
                 '--output', out)
    assert result.exit_code == EXIT_TRUNCATED
    lines = out.read_text(encoding='utf-8').splitlines()
    assert lines[0] == 'page,s,t,total,dim'
    assert any(line.startswith('E2,') for line in lines)


def test_cotor_rejects_non_object(run, workdir):
    (workdir / 'list.json').write_text('[1, 2]')
    assert run('cotor', '--input', workdir / 'list.json').exit_code == EXIT_INVALID


GHOST_COMODULE = {"basis": [{"name": "m0", "deg": 0}], "coaction": {"ghost": [["m0", "x", "1"]]}}


@pytest.mark.parametrize('command, document', [
    ('geometry', {"cubes": 5}),
    ('geometry', {"cubes": [{"axes": 3}]}),
    ('cotor', dict(PRIMITIVE, coproduct={"x": 3})),
    ('cotor', dict(PRIMITIVE, coproduct=[["x", "x"]])),
    ('cotor', dict(PRIMITIVE, basis=5)),
    ('cotor', dict(PRIMITIVE, p=2.5)),
    ('cotor', dict(PRIMITIVE, M=GHOST_COMODULE)),
    ('cotor', dict(PRIMITIVE, M=[1])),
    ('verify', 5),
    ('verify', dict(PRIMITIVE, coproduct={"x": [["x"]]})),
    ('page', {"X": [1.5]}),
    ('page', {"X": 1}),
])
def test_malformed_input_is_invalid(run, workdir, command, document):
    """Test that badly shaped documents exit with the validation code."""
    path = workdir / 'malformed.json'
    path.write_text(json.dumps(document))
    result = run(command, '--input', path)
    assert result.exit_code == EXIT_INVALID
    assert isinstance(result.exception, SystemExit)
    assert 'error:' in result.output


def test_verify_coalgebra_checks_comodules(run, workdir):
    """Test that verify reads M and N from a coalgebra file."""
    docs = Path(__file__).parent.parent / 'docs'
    data = json.loads((docs / 'binomial-coalgebra.json').read_text(encoding='utf-8'))
    out = workdir / 'verify.json'
    result = run('verify', '--input', docs / 'binomial-coalgebra.json', '--max-s', 2, '--max-degree', 8,
                 '--output', out)
    assert result.exit_code == EXIT_TRUNCATED
    assert read_json(out)['d_squared_zero'] is True
    # m3 -> m0 ⊗ x^3 fails coassociativity because x^3 is not primitive
    data['M'] = {
        "basis": [{"name": "m0", "deg": 0}, {"name": "m3", "deg": 6}],
        "coaction": {"m3": [["m0", "x^3", "1"]]},
    }
    (workdir / 'bad-comodule.json').write_text(json.dumps(data))
    assert run('verify', '--input', workdir / 'bad-comodule.json').exit_code == EXIT_INVALID
