"""
SVG dumps of cube configurations for debugging.
"""
import logging
from pathlib import Path
from typing import Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from gravity_calc.models.cubes import CubeConfig

TEMPLATE_DIR = Path(__file__).parent.parent / 'templates'
PALETTE = ['#4A90E2', '#E2794A', '#5CB85C', '#9B59B6', '#F0AD4E', '#D9534F', '#5BC0DE']

_env = Environment(loader=FileSystemLoader(str(TEMPLATE_DIR)), autoescape=select_autoescape(['j2']))


def _to_px(value, size):
    return float((value + 1) / 2 * size)


def render_config_svg(cfg: CubeConfig, width: int = 400, height: int = 400,
                      caption: Optional[str] = None) -> str:
    """
    Render a configuration as SVG: one rectangle per cube, with a dashed
    vertical line through its first-axis center. One-dimensional
    configurations are drawn as full-height bands.
    """
    cubes = []
    for label in cfg.labels:
        cube = cfg.cube(label)
        c0, r0 = cube.center(0), cube.radius(0)
        if cube.n > 1:
            c1, r1 = cube.center(1), cube.radius(1)
        else:
            c1, r1 = 0, 1
        # SVG y grows downward
        top = _to_px(-(c1 + r1), height)
        cubes.append({
            'label': label,
            'x': _to_px(c0 - r0, width),
            'y': top,
            'w': float(r0 * width),
            'h': float(r1 * height),
            'cx': _to_px(c0, width),
            'cy': _to_px(-c1, height),
            'fill': PALETTE[(label - 1) % len(PALETTE)],
        })
    template = _env.get_template('config.svg.j2')
    return template.render(width=width, height=height, cubes=cubes, caption=caption)


def write_config_svg(cfg: CubeConfig, path, config=None, caption: Optional[str] = None) -> Path:
    """Render and write an SVG dump, sized by the `svg` configuration section."""
    svg_config = (config or {}).get('svg', {})
    width = int(svg_config.get('width', 400))
    height = int(svg_config.get('height', 400))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_config_svg(cfg, width, height, caption), encoding='utf-8')
    logging.info(f"Wrote configuration picture to {path}")
    return path
