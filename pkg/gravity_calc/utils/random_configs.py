"""
Seeded random configurations for property tests and batch tools.
"""
import logging
from fractions import Fraction
from typing import Iterator, List

import numpy as np

from gravity_calc.exceptions import GiveUp
from gravity_calc.models.cubes import CubeConfig, LittleCube, cubes_disjoint

DEFAULT_RETRIES = 1000
DEFAULT_DENOMINATOR = 20


def _random_cube(rng: np.random.Generator, n: int, denominator: int) -> LittleCube:
    axes = []
    for _ in range(n):
        k = int(rng.integers(1, max(1, denominator // 4) + 1))
        m = int(rng.integers(-(denominator - k), denominator - k + 1))
        axes.append((Fraction(m, denominator), Fraction(k, denominator)))
    return LittleCube(tuple(axes))


def gen_random_config(
    n: int,
    j: int,
    seed: int,
    retries: int = DEFAULT_RETRIES,
    denominator: int = DEFAULT_DENOMINATOR,
) -> CubeConfig:
    """
    Place j cubes one at a time by rejection sampling on the grid 1/denominator.

    Args:
        n: dimension
        j: number of cubes
        seed: random seed; the same seed gives the same configuration
        retries: attempts allowed per cube
        denominator: snapping grid for centers and radii

    Returns:
        valid CubeConfig

    Raises:
        GiveUp: if some cube cannot be placed within `retries` attempts
    """
    if j < 1 or n < 1:
        raise ValueError(f"need n >= 1 and j >= 1, got n={n}, j={j}")
    rng = np.random.default_rng(seed)
    placed: List[LittleCube] = []
    for _ in range(j):
        for _attempt in range(retries):
            cube = _random_cube(rng, n, denominator)
            if all(cubes_disjoint(cube, other) for other in placed):
                placed.append(cube)
                break
        else:
            logging.error(f"Gave up placing cube {len(placed) + 1} of {j} (seed {seed})")
            raise GiveUp(j, retries)
    return CubeConfig(tuple(placed))


def random_corpus(count: int, n: int, max_j: int, seed: int, **kwargs) -> Iterator[CubeConfig]:
    """`count` configurations with j cycling through 1..max_j, seeds seed, seed+1, ..."""
    for i in range(count):
        yield gen_random_config(n, i % max_j + 1, seed + i, **kwargs)
