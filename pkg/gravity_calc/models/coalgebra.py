"""
Coalgebra and comodule models.

Structure maps are stored in reduced form: a coalgebra keeps only the
reduced coproduct on the coaugmentation coideal, a comodule only the part
of its coaction landing in C-bar.
"""
from dataclasses import dataclass, field
from typing import Dict, Hashable, List

from gravity_calc.models.graded import BasisElement, Chain, GradedSpace

LEFT = 'left'
RIGHT = 'right'


@dataclass
class Coalgebra:
    """
    A coaugmented graded coalgebra over F_p.

    Attributes:
        space: underlying graded space, including the counit element
        counit: key of the degree-0 element spanning the coaugmentation
        reduced: reduced coproduct, key -> chain of (left key, right key);
            keys missing from the table are primitive
        truncated: True when terms outside a computation box were dropped
    """
    space: GradedSpace
    counit: Hashable
    reduced: Dict[Hashable, Chain] = field(default_factory=dict)
    truncated: bool = False

    @property
    def p(self) -> int:
        return self.space.p

    def reduced_basis(self) -> List[BasisElement]:
        """Basis of C-bar, in the order of the underlying space."""
        return [e for e in self.space.basis if e.key != self.counit]

    def degree(self, key: Hashable) -> int:
        return self.space.degree(key)

    def coproduct(self, key: Hashable) -> Chain:
        """Reduced coproduct of a basis element."""
        return self.reduced.get(key, Chain(self.p))

    def name(self, key: Hashable) -> str:
        return self.space.element(key).name

    def __repr__(self):
        return f"<Coalgebra F_{self.p} dim={len(self.space)}>"


@dataclass
class Comodule:
    """
    A graded comodule over a coalgebra.

    For a right comodule the reduced coaction sends m to a chain of
    (m', c) pairs (M -> M ⊗ C-bar); for a left comodule to (c, m') pairs.
    """
    space: GradedSpace
    side: str
    coaction: Dict[Hashable, Chain] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.space.p

    def degree(self, key: Hashable) -> int:
        return self.space.degree(key)

    def coact(self, key: Hashable) -> Chain:
        return self.coaction.get(key, Chain(self.p))

    def is_trivial(self) -> bool:
        return not any(not chain.is_zero() for chain in self.coaction.values())

    def __repr__(self):
        return f"<Comodule {self.side} F_{self.p} dim={len(self.space)}>"


