"""
The gravity spectral sequence for n = 2 and X a wedge of spheres.

E¹_{-s} is spanned by words of s blocks, each block a nonempty word in the
generators of H̃(ΣX) (one per sphere, in degree d_i + 1). d¹ is computed
twice: once from the shuffle formula, cutting each block and applying the
signed shuffle sum, and once as the cobar differential of the tensor
coalgebra T(H̃(ΣX)). Both read their signs from the same DesuspensionSigns.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from gravity_calc.exceptions import ParseError, Truncated
from gravity_calc.models.coalgebra import Coalgebra
from gravity_calc.models.graded import BasisElement, Chain, GradedSpace
from gravity_calc.models.page import BigradedPage, CobarComplexSlice, CobarWord
from gravity_calc.utils.cobar_engine import (
    chain_page,
    cobar_differential,
    differential_matrices,
    enumerate_words,
    homology,
    verify_d_squared,
)
from gravity_calc.utils.coalgebra_core import DEFAULT_SIGNS, DesuspensionSigns, shuffle_sum, tensor_algebra
from gravity_calc.utils.linalg import first_nonzero_column


@dataclass(frozen=True)
class SphereWedge:
    """X = S^{d_1} ∨ ... ∨ S^{d_k}."""
    dims: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'dims', tuple(int(d) for d in self.dims))
        if not self.dims:
            raise ParseError("X must list at least one sphere")
        for d in self.dims:
            if d < 1:
                raise ParseError(f"sphere dimension must be at least 1, got {d}")

    def generators(self, p: int) -> GradedSpace:
        """H̃(ΣX): one class x{i} in degree d_i + 1, weight 1."""
        basis = tuple(
            BasisElement(f"x{i}", f"x{i}", d + 1, 1) for i, d in enumerate(self.dims, start=1)
        )
        return GradedSpace(p, basis)

    def __str__(self):
        return " ∨ ".join(f"S^{d}" for d in self.dims)


@dataclass
class GravityE1:
    """
    The E¹ page inside a box, with the tensor coalgebra it is the cobar
    construction of.

    Attributes:
        X: the sphere wedge
        generators: H̃(ΣX)
        coalgebra: T(H̃(ΣX)) with the unshuffle coproduct
        bases: (weight, s, t) -> words; blocks are tuples of generator keys
    """
    X: SphereWedge
    p: int
    generators: GradedSpace
    coalgebra: Coalgebra
    bases: Dict[Tuple[int, int, int], List[CobarWord]]
    box: Dict[str, int] = field(default_factory=dict)

    @property
    def max_s(self) -> int:
        return self.box['max_s']

    def words(self) -> List[CobarWord]:
        return [w for index in sorted(self.bases) for w in self.bases[index]]

    def page(self) -> BigradedPage:
        return chain_page(CobarComplexSlice(self.p, self.bases, box=dict(self.box)), 'E1')

    def name(self, word: CobarWord) -> str:
        return "[" + "|".join(self.coalgebra.name(b) for b in word.blocks) + "]"


def profile_of(word: CobarWord) -> Tuple[int, ...]:
    """Block-length profile (j_1, ..., j_s)."""
    return tuple(len(block) for block in word.blocks)


def weight_of(word: CobarWord) -> int:
    return sum(profile_of(word))


def build_E1(X: SphereWedge, p: int, max_s: int, max_degree: int, max_weight: int) -> GravityE1:
    """
    Enumerate E¹ inside the box s <= max_s, t <= max_degree, weight <= max_weight.
    """
    generators = X.generators(p)
    coalgebra = tensor_algebra(generators, max_weight, max_degree)
    bases = enumerate_words(coalgebra, max_s, max_degree, max_weight)
    box = {'max_s': max_s, 'max_degree': max_degree, 'max_weight': max_weight}
    E1 = GravityE1(X, p, generators, coalgebra, bases, box)
    logging.info(f"Built E1 for X = {X} over F_{p}: {len(E1.words())} words in box {box}")
    return E1


def d1_shuffle(
    E1: GravityE1,
    word: CobarWord,
    signs: DesuspensionSigns = DEFAULT_SIGNS,
    max_s: Optional[int] = None,
) -> Chain:
    """
    d¹ from the shuffle formula: for each block m and each cut ℓ, apply
    s_{ℓ, j_m - ℓ} to the letters of block m and split the result after ℓ
    letters.
    """
    p = E1.p
    degree = E1.generators.degree
    block_degrees = [sum(degree(x) for x in block) for block in word.blocks]
    out = Chain(p)
    for m, block in enumerate(word.blocks):
        letter_degrees = [degree(x) for x in block]
        for cut in range(1, len(block)):
            shuffled = shuffle_sum(cut, len(block) - cut, letter_degrees, p).apply(block, p)
            for letters, coef in shuffled.items():
                head, tail = letters[:cut], letters[cut:]
                sign = signs.split_sign(0, block_degrees[:m], sum(degree(x) for x in head))
                blocks = word.blocks[:m] + (head, tail) + word.blocks[m + 1:]
                out.add(CobarWord(blocks, t=word.t, weight=word.weight), coef * sign)
    if max_s is not None and word.s >= max_s and not out.is_zero():
        raise Truncated(word)
    return out


def d1_cobar(
    E1: GravityE1,
    word: CobarWord,
    signs: DesuspensionSigns = DEFAULT_SIGNS,
    max_s: Optional[int] = None,
) -> Chain:
    """d¹ as the cobar differential of T(H̃(ΣX)) with its unshuffle coproduct."""
    return cobar_differential(E1.coalgebra, word, signs, max_s)


def d1_complex(
    E1: GravityE1,
    method: str = 'shuffle',
    signs: DesuspensionSigns = DEFAULT_SIGNS,
) -> CobarComplexSlice:
    """Assemble the d¹ matrices of E1 with the 'shuffle' or 'cobar' construction."""
    if method == 'shuffle':
        differential = lambda word: d1_shuffle(E1, word, signs)
    elif method == 'cobar':
        differential = lambda word: d1_cobar(E1, word, signs)
    else:
        raise ValueError(f"unknown d1 method {method!r}")
    matrices, truncated = differential_matrices(E1.bases, differential, E1.p, E1.max_s)
    if truncated:
        logging.warning(f"d1 leaves the box above s={E1.max_s}; top row is not trusted")
    return CobarComplexSlice(E1.p, E1.bases, matrices, truncated, dict(E1.box))


def compare_d1(
    E1: GravityE1,
    shuffle_signs: DesuspensionSigns = DEFAULT_SIGNS,
    cobar_signs: DesuspensionSigns = DEFAULT_SIGNS,
) -> Tuple[bool, Optional[CobarWord]]:
    """
    Compare the two d¹ constructions matrix by matrix.

    Returns:
        (True, None) when they agree at every bidegree, otherwise (False,
        first word whose images differ)
    """
    shuffle = d1_complex(E1, 'shuffle', shuffle_signs)
    cobar = d1_complex(E1, 'cobar', cobar_signs)
    for index in sorted(shuffle.matrices):
        a, b = shuffle.matrices[index], cobar.matrices[index]
        if np.array_equal(a % E1.p, b % E1.p):
            continue
        column = first_nonzero_column((a - b) % E1.p)
        witness = E1.bases[index][column]
        logging.error(f"d1 constructions differ on {E1.name(witness)}")
        return False, witness
    logging.info("d1 shuffle and cobar constructions agree on the whole box")
    return True, None


def compute_E2(
    E1: GravityE1,
    signs: DesuspensionSigns = DEFAULT_SIGNS,
    threads: Optional[int] = None,
) -> BigradedPage:
    """
    Homology of (E¹, d¹) per (weight, s, t).

    Raises:
        ValueError: if d¹ ∘ d¹ is nonzero somewhere in the box
    """
    complex_ = d1_complex(E1, 'shuffle', signs)
    ok, witness = verify_d_squared(complex_)
    if not ok:
        raise ValueError(f"d1 ∘ d1 is nonzero on {E1.name(witness)}")
    return homology(complex_, 'E2', threads)


def weight_split(page: BigradedPage) -> Dict[int, BigradedPage]:
    """Split a page into its per-weight summands."""
    return {weight: page.restrict_weight(weight) for weight in page.weights()}


def euler_matches(first: BigradedPage, second: BigradedPage) -> bool:
    """True when the (weight, t) Euler characteristics agree."""
    a = {k: v for k, v in first.euler().items() if v}
    b = {k: v for k, v in second.euler().items() if v}
    return a == b


def relabel(X: SphereWedge, order: Sequence[int]) -> SphereWedge:
    """The same wedge with its spheres listed in another order."""
    return SphereWedge(tuple(X.dims[i] for i in order))
