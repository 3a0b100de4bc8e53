"""
Tests for the configuration pictures.
"""
import importlib.util
from fractions import Fraction as F
from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

from gravity_calc.models.cubes import CubeConfig, LittleCube
from gravity_calc.utils.svg import render_config_svg, write_config_svg


@pytest.fixture
def two_cubes():
    return CubeConfig((
        LittleCube(((F(-1, 2), F(1, 2)), (F(0), F(1, 2)))),
        LittleCube(((F(1, 2), F(1, 4)), (F(1, 2), F(1, 4)))),
    ))


def test_render_config_svg(two_cubes):
    """Test one rectangle, center line and label per cube."""
    svg = render_config_svg(two_cubes, 400, 400)
    assert svg.startswith('<svg width="400" height="400"')
    # background plus one per cube
    assert svg.count('<rect') == 3
    assert svg.count('stroke-dasharray') == 2
    assert 'x="0.0" y="100.0" width="200.0" height="200.0"' in svg
    assert 'x="250.0" y="50.0" width="100.0" height="100.0"' in svg
    assert '>2</text>' in svg


def test_render_one_dimensional():
    """Test that a 1-cube is drawn as a full-height band."""
    cfg = CubeConfig((LittleCube(((F(0), F(1, 4)),)),))
    svg = render_config_svg(cfg, 200, 100)
    assert 'x="75.0" y="0.0" width="50.0" height="100.0"' in svg


def test_caption_is_escaped(two_cubes):
    svg = render_config_svg(two_cubes, caption='σ_2 < 1')
    assert 'σ_2 &lt; 1' in svg


def test_write_config_svg(two_cubes, tmp_path):
    """Test that the svg section of the configuration sets the size."""
    path = write_config_svg(two_cubes, tmp_path / 'pics' / 'c.svg', {'svg': {'width': 300, 'height': 150}})
    text = path.read_text(encoding='utf-8')
    assert 'width="300" height="150"' in text


def load_tool():
    script = Path(__file__).parent.parent / 'tools' / 'render_random_configs.py'
    script_spec = importlib.util.spec_from_file_location('render_random_configs', script)
    module = importlib.util.module_from_spec(script_spec)
    script_spec.loader.exec_module(module)
    return module


def test_render_random_configs_tool(tmp_path):
    """Test the batch rendering script end to end."""
    result = CliRunner().invoke(load_tool().main, ['--count', '3', '--max-j', '3', '--seed', '4',
                                                   '--out', str(tmp_path / 'pics')])
    assert result.exit_code == 0
    assert sorted(p.name for p in (tmp_path / 'pics').iterdir()) == [
        'config_0004.svg', 'config_0005.svg', 'config_0006.svg',
    ]


def test_render_random_configs_tool_gives_up(tmp_path):
    """Test exit status 1 when a configuration cannot be placed."""
    # a 1/1 grid only fits a single cube
    (tmp_path / 'config.yaml').write_text(yaml.safe_dump({'geometry': {'denominator': 1, 'random_retries': 5}}))
    result = CliRunner().invoke(load_tool().main, ['--count', '2', '--max-j', '2', '--out', str(tmp_path / 'pics'),
                                                   '--config', str(tmp_path / 'config.yaml')])
    assert result.exit_code == 1
    assert [p.name for p in (tmp_path / 'pics').iterdir()] == ['config_0000.svg']
