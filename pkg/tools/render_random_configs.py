#!/usr/bin/env python3
"""
Script to render a seeded batch of random configurations as SVG pictures.
Each picture is captioned with the gravity and skewer degrees of its configuration.
"""
import sys
from pathlib import Path

import click

# Add parent directory to path to allow importing from parent modules
sys.path.insert(0, str(Path(__file__).parent.parent))

from gravity_calc.app import load_config  # noqa: E402
from gravity_calc.utils.cube_geometry import gravity_degree, skewer_degree  # noqa: E402
from gravity_calc.utils.random_configs import random_corpus  # noqa: E402
from gravity_calc.utils.svg import write_config_svg  # noqa: E402


@click.command(help=__doc__)
@click.option('--count', type=int, default=20, help='Number of configurations')
@click.option('--max-j', 'max_j', type=int, default=5, help='Cube counts cycle through 1..max-j')
@click.option('--seed', type=int, default=0, help='Seed of the first configuration')
@click.option('--out', 'out', type=click.Path(file_okay=False),
              default=str(Path(__file__).parent.parent / 'data' / 'pictures'))
@click.option('--config', 'config_path', type=click.Path(), default=None, help='YAML configuration file')
def main(count, max_j, seed, out, config_path):
    """Main function to render the batch."""
    config = load_config(config_path)
    geometry_config = config.get('geometry', {})
    out_dir = Path(out)

    try:
        corpus = random_corpus(
            count, 2, max_j, seed,
            retries=geometry_config.get('random_retries', 1000),
            denominator=geometry_config.get('denominator', 20),
        )
        for i, cfg in enumerate(corpus):
            caption = f"j={cfg.j} gravity={gravity_degree(cfg)} skewer={skewer_degree(cfg)}"
            write_config_svg(cfg, out_dir / f"config_{seed + i:04d}.svg", config, caption)
        click.echo(f"Successfully rendered {count} configurations to {out_dir}")
    except ValueError as e:
        click.echo(f"Error rendering configurations: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
