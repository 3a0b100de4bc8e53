"""
Cobar words, complexes and bigraded pages.

Words and pages are indexed by (weight, s, t): the Snaith weight (sum of the
weight tags of the blocks, 0 for untagged coalgebras), the number of blocks s
and the internal degree t. Differentials preserve weight and t and raise s by
one, so a complex is a family of matrices (weight, s, t) -> (weight, s + 1, t).
"""
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Tuple

import numpy as np

Index = Tuple[int, int, int]


@dataclass(frozen=True)
class CobarWord:
    """
    m ⊗ [a_1 | ... | a_s] ⊗ n.

    Attributes:
        blocks: keys of reduced coalgebra basis elements
        left: key of a right-comodule element in front, or None
        right: key of a left-comodule element at the end, or None
        t: internal degree (undesuspended); not part of equality
        weight: sum of block weight tags; not part of equality
    """
    blocks: Tuple[Hashable, ...]
    left: Optional[Hashable] = None
    right: Optional[Hashable] = None
    t: int = field(default=0, compare=False)
    weight: int = field(default=0, compare=False)

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (-self.s, self.t)

    @property
    def total_degree(self) -> int:
        return self.t - self.s


@dataclass
class CobarComplexSlice:
    """
    A cobar-type complex restricted to a box.

    Attributes:
        p: prime
        bases: (weight, s, t) -> ordered words
        matrices: (weight, s, t) -> matrix of d into (weight, s + 1, t), for
            s < max_s; columns follow bases[(weight, s, t)]
        truncated: True when some differential out of s = max_s is nonzero
        box: the bounds the complex was built with
    """
    p: int
    bases: Dict[Index, List[CobarWord]]
    matrices: Dict[Index, np.ndarray] = field(default_factory=dict)
    truncated: bool = False
    box: Dict[str, int] = field(default_factory=dict)

    @property
    def max_s(self) -> int:
        return self.box.get('max_s', max((s for _, s, _ in self.bases), default=0))

    def dims(self) -> Dict[Index, int]:
        return {index: len(words) for index, words in self.bases.items()}

    def words(self) -> List[CobarWord]:
        return [w for index in sorted(self.bases) for w in self.bases[index]]

    def __repr__(self):
        return f"<CobarComplexSlice F_{self.p} words={len(self.words())} box={self.box}>"


@dataclass
class BigradedPage:
    """
    Dimension table of a spectral-sequence page.

    `by_index` keeps the (weight, s, t) refinement; `dims` sums out weight.
    Entries at s = max_s are only trusted when the page is not truncated.
    """
    name: str
    p: int
    by_index: Dict[Index, int]
    truncated: bool = False
    box: Dict[str, int] = field(default_factory=dict)

    @property
    def dims(self) -> Dict[Tuple[int, int], int]:
        table: Dict[Tuple[int, int], int] = defaultdict(int)
        for (_, s, t), dim in self.by_index.items():
            table[(s, t)] += dim
        return {key: value for key, value in sorted(table.items()) if value}

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def weights(self) -> List[int]:
        return sorted({w for w, _, _ in self.by_index})

    def by_weight(self) -> Dict[int, Dict[Tuple[int, int], int]]:
        table: Dict[int, Dict[Tuple[int, int], int]] = defaultdict(dict)
        for (w, s, t), dim in sorted(self.by_index.items()):
            if dim:
                table[w][(s, t)] = dim
        return dict(table)

    def trusted(self, s: int) -> bool:
        return not self.truncated or s < self.box.get('max_s', s + 1)

    def total_degree_dims(self) -> Dict[int, int]:
        """Trusted dims summed by total degree t - s."""
        table: Dict[int, int] = defaultdict(int)
        for (s, t), dim in self.dims.items():
            if self.trusted(s):
                table[t - s] += dim
        return dict(sorted(table.items()))

    def euler(self) -> Dict[Tuple[int, int], int]:
        """(weight, t) -> sum over s of (-1)^s dim."""
        table: Dict[Tuple[int, int], int] = defaultdict(int)
        for (w, s, t), dim in self.by_index.items():
            table[(w, t)] += -dim if s % 2 else dim
        return dict(sorted(table.items()))

    def poincare_series(self, max_total: int) -> List[int]:
        totals = self.total_degree_dims()
        return [totals.get(k, 0) for k in range(max_total + 1)]

    def restrict_weight(self, weight: int) -> 'BigradedPage':
        return BigradedPage(
            f"{self.name}[w={weight}]",
            self.p,
            {index: dim for index, dim in self.by_index.items() if index[0] == weight},
            self.truncated,
            dict(self.box),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {f"{-s},{t}": dim for (s, t), dim in self.dims.items()}

    def __repr__(self):
        return f"<BigradedPage {self.name} F_{self.p} entries={len(self.dims)}>"
