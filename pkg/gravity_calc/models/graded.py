"""
Graded vector spaces over F_p.

Basis elements are identified by a hashable key (a name, or a tuple of
letters for tensor words) and carry a display name, a degree and a weight.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from gravity_calc.exceptions import ParseError, PrimeMismatch


class Chain:
    """
    A finite F_p-linear combination of hashable keys.
    """

    __slots__ = ('p', 'terms')

    def __init__(self, p: int, terms: Optional[Dict[Hashable, int]] = None):
        self.p = p
        self.terms: Dict[Hashable, int] = {}
        if terms:
            for key, coef in terms.items():
                self.add(key, coef)

    def add(self, key: Hashable, coef: int = 1) -> 'Chain':
        value = (self.terms.get(key, 0) + coef) % self.p
        if value:
            self.terms[key] = value
        else:
            self.terms.pop(key, None)
        return self

    def add_chain(self, other: 'Chain', coef: int = 1) -> 'Chain':
        if other.p != self.p:
            raise PrimeMismatch(self.p, other.p)
        for key, value in other.terms.items():
            self.add(key, coef * value)
        return self

    def scaled(self, coef: int) -> 'Chain':
        return Chain(self.p, {k: coef * v for k, v in self.terms.items()})

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> 'Chain':
        out = Chain(self.p)
        for key, value in self.terms.items():
            out.add(f(key), value)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.terms)

    def __getitem__(self, key: Hashable) -> int:
        return self.terms.get(key, 0)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self.p == other.p and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: 'Chain') -> 'Chain':
        return Chain(self.p, dict(self.terms)).add_chain(other)

    def __sub__(self, other: 'Chain') -> 'Chain':
        return Chain(self.p, dict(self.terms)).add_chain(other, -1)

    def __repr__(self):
        body = " + ".join(f"{v}*{k!r}" for k, v in sorted(self.terms.items(), key=repr))
        return f"Chain[F_{self.p}]({body or '0'})"


@dataclass(frozen=True)
class BasisElement:
    """A named basis element with its degree and weight tag."""
    key: Hashable
    name: str
    degree: int
    weight: int = 0


@dataclass(frozen=True)
class GradedSpace:
    """
    A finite-dimensional graded vector space over F_p with a named basis.
    """
    p: int
    basis: Tuple[BasisElement, ...]
    _index: Dict[Hashable, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'basis', tuple(self.basis))
        names = set()
        for i, element in enumerate(self.basis):
            if element.name in names or element.key in self._index:
                raise ParseError(f"duplicate basis element {element.name}")
            names.add(element.name)
            self._index[element.key] = i

    def __len__(self):
        return len(self.basis)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._index

    def index(self, key: Hashable) -> int:
        return self._index[key]

    def element(self, key: Hashable) -> BasisElement:
        return self.basis[self._index[key]]

    def degree(self, key: Hashable) -> int:
        return self.basis[self._index[key]].degree

    def in_degree(self, degree: int) -> List[BasisElement]:
        return [e for e in self.basis if e.degree == degree]

    def dims(self) -> Dict[int, int]:
        """Dimension table: degree -> dimension."""
        table: Dict[int, int] = defaultdict(int)
        for element in self.basis:
            table[element.degree] += 1
        return dict(sorted(table.items()))

    def degrees(self) -> List[int]:
        return sorted({e.degree for e in self.basis})


@dataclass
class GradedMap:
    """
    A degree-d linear map between graded spaces, stored as one matrix per
    source degree q mapping degree q to degree q + d.
    """
    source: GradedSpace
    target: GradedSpace
    degree: int
    blocks: Dict[int, np.ndarray]

    @classmethod
    def from_function(
        cls,
        source: GradedSpace,
        target: GradedSpace,
        degree: int,
        f: Callable[[Hashable], Chain],
    ) -> 'GradedMap':
        """
        Build the matrices of the map sending each source basis key to f(key).

        Args:
            source: domain
            target: codomain
            degree: degree shift
            f: images of basis keys as chains of target keys

        Returns:
            GradedMap with blocks for every source degree
        """
        if source.p != target.p:
            raise PrimeMismatch(source.p, target.p)
        blocks = {}
        for q in source.degrees():
            cols = source.in_degree(q)
            rows = target.in_degree(q + degree)
            row_index = {e.key: i for i, e in enumerate(rows)}
            matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
            for c, element in enumerate(cols):
                for key, coef in f(element.key).items():
                    if key not in row_index:
                        raise ParseError(f"image of {element.name} leaves degree {q + degree}")
                    matrix[row_index[key], c] = (matrix[row_index[key], c] + coef) % source.p
            blocks[q] = matrix
        return cls(source, target, degree, blocks)

    def apply(self, key: Hashable) -> Chain:
        q = self.source.degree(key)
        cols = self.source.in_degree(q)
        rows = self.target.in_degree(q + self.degree)
        column = [e.key for e in cols].index(key)
        out = Chain(self.source.p)
        for r, value in enumerate(self.blocks[q][:, column]):
            if value:
                out.add(rows[r].key, int(value))
        return out
