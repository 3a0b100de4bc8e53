"""
Little cube models for the gravity calculator.

A little n-cube is stored per axis as an exact (center, radius) pair.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from gravity_calc.exceptions import (
    BadS,
    EmptySubset,
    NonDisjoint,
    OutOfBounds,
    OutOfRange,
    ParseError,
)

Axis = Tuple[Fraction, Fraction]


def as_rational(value: Any) -> Fraction:
    """
    Convert a configuration value to an exact rational.

    Args:
        value: int, Fraction, a "p/q" string or a decimal string/float literal

    Returns:
        Fraction equal to the written value
    """
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        # the decimal literal, not the binary approximation
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed rational: {value!r}")
    raise ParseError(f"not a rational: {value!r}")


@dataclass(frozen=True)
class LittleCube:
    """
    An axis-aligned little n-cube, one (center, radius) pair per axis.
    """
    axes: Tuple[Axis, ...]

    def __post_init__(self):
        object.__setattr__(
            self, 'axes',
            tuple((as_rational(c), as_rational(r)) for c, r in self.axes)
        )

    @property
    def n(self) -> int:
        return len(self.axes)

    @property
    def first(self) -> Axis:
        """The first coordinate, the only one the filtrations look at."""
        return self.axes[0]

    def center(self, axis: int = 0) -> Fraction:
        return self.axes[axis][0]

    def radius(self, axis: int = 0) -> Fraction:
        return self.axes[axis][1]

    def with_first_radius(self, radius: Fraction) -> 'LittleCube':
        return LittleCube(((self.axes[0][0], radius),) + self.axes[1:])

    def __repr__(self):
        axes = ", ".join(f"({c}, {r})" for c, r in self.axes)
        return f"<LittleCube {axes}>"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LittleCube':
        """
        Create a cube from its JSON form.

        Args:
            data: {"axes": [{"center": "p/q", "radius": "p/q"}, ...]}

        Returns:
            LittleCube instance
        """
        if not isinstance(data, dict) or not isinstance(data.get('axes'), list):
            raise ParseError(f"cube entry needs an axes list: {data!r}")
        try:
            return cls(tuple((a['center'], a['radius']) for a in data['axes']))
        except (KeyError, TypeError):
            raise ParseError(f"cube entry needs axes with center and radius: {data!r}")

    def to_dict(self) -> Dict[str, Any]:
        return {'axes': [{'center': str(c), 'radius': str(r)} for c, r in self.axes]}


def cubes_disjoint(a: LittleCube, b: LittleCube) -> bool:
    return any(
        abs(ca - cb) >= ra + rb
        for (ca, ra), (cb, rb) in zip(a.axes, b.axes)
    )


@dataclass(frozen=True)
class CubeConfig:
    """
    A configuration of j little n-cubes with pairwise disjoint open images.

    Cubes are labelled 1..j in list order.
    """
    cubes: Tuple[LittleCube, ...]

    def __post_init__(self):
        cubes = tuple(self.cubes)
        object.__setattr__(self, 'cubes', cubes)
        if not cubes:
            raise ParseError("a configuration needs at least one cube")
        n = cubes[0].n
        if n < 1:
            raise ParseError("cubes need at least one axis")
        for i, cube in enumerate(cubes, start=1):
            if cube.n != n:
                raise ParseError(f"cube {i} has {cube.n} axes, expected {n}")
            for axis, (c, r) in enumerate(cube.axes, start=1):
                if r <= 0 or abs(c) + r > 1:
                    raise OutOfBounds(i, axis)
        for i in range(len(cubes)):
            for k in range(i + 1, len(cubes)):
                if not cubes_disjoint(cubes[i], cubes[k]):
                    raise NonDisjoint(i + 1, k + 1)

    @property
    def j(self) -> int:
        return len(self.cubes)

    @property
    def n(self) -> int:
        return self.cubes[0].n

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(range(1, self.j + 1))

    def cube(self, label: int) -> LittleCube:
        return self.cubes[label - 1]

    def first_axes(self) -> List[Axis]:
        return [c.first for c in self.cubes]

    def distinct_centers(self) -> int:
        return len({c.center(0) for c in self.cubes})

    def __len__(self):
        return len(self.cubes)

    def __repr__(self):
        return f"<CubeConfig n={self.n} j={self.j}>"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CubeConfig':
        """
        Create a configuration from its JSON form.

        Args:
            data: {"n": int, "cubes": [...]}

        Returns:
            validated CubeConfig
        """
        if not isinstance(data, dict) or not isinstance(data.get('cubes'), list):
            raise ParseError("configuration needs a 'cubes' list")
        cubes = tuple(LittleCube.from_dict(c) for c in data['cubes'])
        n = data.get('n')
        if n is not None and cubes and any(c.n != n for c in cubes):
            raise ParseError(f"declared n={n} does not match the cube axes")
        return cls(cubes)

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.n, 'cubes': [c.to_dict() for c in self.cubes]}


@dataclass(frozen=True)
class SubsetPartition:
    """A partition S_1 ⨿ ... ⨿ S_s of the labels {1, ..., j}."""
    parts: Tuple[FrozenSet[int], ...]
    j: int = field(default=0)

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, 'parts', parts)
        if any(not p for p in parts):
            raise EmptySubset()
        j = self.j or sum(len(p) for p in parts)
        object.__setattr__(self, 'j', j)
        seen = set()
        for part in parts:
            if seen & part:
                raise ParseError(f"parts overlap: {sorted(seen & part)}")
            seen |= part
        if seen != set(range(1, j + 1)):
            raise ParseError(f"parts do not cover 1..{j}")

    @property
    def s(self) -> int:
        return len(self.parts)

    def canonical(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(sorted(tuple(sorted(p)) for p in self.parts))

    def __repr__(self):
        body = " | ".join("{" + ",".join(map(str, p)) + "}" for p in self.canonical())
        return f"<SubsetPartition {body}>"

    @classmethod
    def of(cls, parts: Iterable[Sequence[int]], j: int = 0) -> 'SubsetPartition':
        return cls(tuple(frozenset(p) for p in parts), j)


@dataclass(frozen=True)
class DeformParams:
    """Parameters (s, t) of the combined shrinking homotopy."""
    s: int
    t: Fraction

    def __post_init__(self):
        t = as_rational(self.t)
        object.__setattr__(self, 't', t)
        if not 0 <= t <= 1:
            raise OutOfRange(t)
        if self.s < 1:
            raise BadS(self.s, 0)
