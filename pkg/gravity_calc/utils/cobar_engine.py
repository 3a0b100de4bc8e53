"""
One-sided and two-sided cobar complexes and their homology (Cotor).

Only the normalized complex is built: every block is a reduced basis
element, so degenerate words never appear.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Hashable, List, Optional, Tuple

import numpy as np

from gravity_calc.exceptions import PrimeMismatch, Truncated
from gravity_calc.models.coalgebra import LEFT, RIGHT, Coalgebra, Comodule
from gravity_calc.models.graded import BasisElement, Chain
from gravity_calc.models.page import BigradedPage, CobarComplexSlice, CobarWord, Index
from gravity_calc.utils.coalgebra_core import DEFAULT_SIGNS, DesuspensionSigns
from gravity_calc.utils.linalg import first_nonzero_column, matmul_mod_p, rank_mod_p

THREADS_ENV = 'GRAVITY_SS_THREADS'

Differential = Callable[[CobarWord], Chain]


def resolve_threads(threads: Optional[int] = None) -> int:
    """
    Worker count: the given value (else the CPU count), capped by
    GRAVITY_SS_THREADS when that is set.
    """
    workers = max(1, int(threads)) if threads else (os.cpu_count() or 1)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, min(workers, int(env)))
        except ValueError:
            logging.warning(f"Ignoring {THREADS_ENV}={env!r}: not an integer")
    return workers


def two_sided_differential(
    M: Optional[Comodule],
    C: Coalgebra,
    N: Optional[Comodule],
    word: CobarWord,
    signs: DesuspensionSigns = DEFAULT_SIGNS,
    max_s: Optional[int] = None,
) -> Chain:
    """
    Differential of m ⊗ [a_1|...|a_s] ⊗ n in the two-sided cobar complex.

    Sum of three kinds of coface: the right coaction of M pushed into a new
    first block, the reduced coproduct applied to each block, and the left
    coaction of N pushed into a new last block.

    Args:
        M: right comodule for the left end, or None for the trivial one
        C: the coalgebra
        N: left comodule for the right end, or None for the trivial one
        word: the word to differentiate
        signs: sign convention
        max_s: when given, a nonzero differential of a word with s >= max_s
            raises Truncated

    Returns:
        chain of CobarWords with s + 1 blocks
    """
    p = C.p
    blocks = word.blocks
    left_degree = M.degree(word.left) if M is not None and word.left is not None else 0
    degs = [C.degree(b) for b in blocks]
    out = Chain(p)

    def emit(new_blocks, left, right, coef):
        out.add(CobarWord(tuple(new_blocks), left, right, word.t, word.weight), coef)

    if M is not None and word.left is not None:
        for (m2, c), coef in M.coact(word.left).items():
            emit((c,) + blocks, m2, word.right, coef * signs.left_coaction_sign(M.degree(m2)))

    for i, block in enumerate(blocks):
        for (a1, a2), coef in C.coproduct(block).items():
            sign = signs.split_sign(left_degree, degs[:i], C.degree(a1))
            emit(blocks[:i] + (a1, a2) + blocks[i + 1:], word.left, word.right, coef * sign)

    if N is not None and word.right is not None:
        for (c, n2), coef in N.coact(word.right).items():
            sign = signs.right_coaction_sign(left_degree, degs, C.degree(c))
            emit(blocks + (c,), word.left, n2, coef * sign)

    if max_s is not None and word.s >= max_s and not out.is_zero():
        raise Truncated(word)
    return out


def cobar_differential(
    C: Coalgebra,
    word: CobarWord,
    signs: DesuspensionSigns = DEFAULT_SIGNS,
    max_s: Optional[int] = None,
) -> Chain:
    """Differential of [a_1|...|a_s] in the one-sided cobar complex."""
    return two_sided_differential(None, C, None, word, signs, max_s)


def enumerate_words(
    C: Coalgebra,
    max_s: int,
    max_degree: int,
    max_weight: Optional[int] = None,
    M: Optional[Comodule] = None,
    N: Optional[Comodule] = None,
) -> Dict[Index, List[CobarWord]]:
    """
    All normalized words with s <= max_s, internal degree <= max_degree and
    (optionally) weight <= max_weight, grouped by (weight, s, t).
    """
    letters = [e for e in C.reduced_basis() if e.degree <= max_degree]
    lefts: List[Optional[BasisElement]] = list(M.space.basis) if M is not None else [None]
    rights: List[Optional[BasisElement]] = list(N.space.basis) if N is not None else [None]

    def fits(t: int, w: int) -> bool:
        return t <= max_degree and (max_weight is None or w <= max_weight)

    bases: Dict[Index, List[CobarWord]] = {}
    for m in lefts:
        for n in rights:
            t0 = (m.degree if m else 0) + (n.degree if n else 0)
            w0 = (m.weight if m else 0) + (n.weight if n else 0)
            if not fits(t0, w0):
                continue
            layer: List[Tuple[Tuple[Hashable, ...], int, int]] = [((), t0, w0)]
            for s in range(max_s + 1):
                for blocks, t, w in layer:
                    word = CobarWord(blocks, m.key if m else None, n.key if n else None, t, w)
                    bases.setdefault((w, s, t), []).append(word)
                if s == max_s:
                    break
                layer = [
                    (blocks + (e.key,), t + e.degree, w + e.weight)
                    for blocks, t, w in layer for e in letters
                    if fits(t + e.degree, w + e.weight)
                ]
                if not layer:
                    break
    return dict(sorted(bases.items()))


def differential_matrices(
    bases: Dict[Index, List[CobarWord]],
    differential: Differential,
    p: int,
    max_s: int,
) -> Tuple[Dict[Index, np.ndarray], bool]:
    """
    Assemble the matrices of a differential on a boxed basis.

    Returns:
        (matrices keyed by source index for s < max_s, truncated flag set
        when some word at s = max_s has a nonzero differential)

    Raises:
        Truncated: if a term lands outside the basis below max_s
    """
    matrices: Dict[Index, np.ndarray] = {}
    truncated = False
    for (w, s, t), words in bases.items():
        if s >= max_s:
            if not truncated and any(not differential(word).is_zero() for word in words):
                truncated = True
            continue
        targets = bases.get((w, s + 1, t), [])
        rows = {word: r for r, word in enumerate(targets)}
        matrix = np.zeros((len(targets), len(words)), dtype=np.int64)
        for c, word in enumerate(words):
            for image, coef in differential(word).items():
                if image not in rows:
                    raise Truncated(image)
                matrix[rows[image], c] = coef % p
        matrices[(w, s, t)] = matrix
    return matrices, truncated


def build_cobar_complex(
    C: Coalgebra,
    max_s: int,
    max_degree: int,
    M: Optional[Comodule] = None,
    N: Optional[Comodule] = None,
    max_weight: Optional[int] = None,
    signs: DesuspensionSigns = DEFAULT_SIGNS,
) -> CobarComplexSlice:
    """
    Build the (two-sided if M or N is given) cobar complex inside the box
    s <= max_s, t <= max_degree.

    Raises:
        PrimeMismatch: if a comodule is over another prime
        ValueError: if a comodule is on the wrong side
    """
    for module, side in ((M, RIGHT), (N, LEFT)):
        if module is None:
            continue
        if module.p != C.p:
            raise PrimeMismatch(module.p, C.p)
        if module.side != side:
            raise ValueError(f"expected a {side} comodule, got a {module.side} one")

    bases = enumerate_words(C, max_s, max_degree, max_weight, M, N)
    matrices, truncated = differential_matrices(
        bases, lambda word: two_sided_differential(M, C, N, word, signs), C.p, max_s
    )
    box = {'max_s': max_s, 'max_degree': max_degree}
    if max_weight is not None:
        box['max_weight'] = max_weight
    truncated = truncated or C.truncated
    complex_ = CobarComplexSlice(C.p, bases, matrices, truncated, box)
    if truncated:
        logging.warning(f"Cobar complex truncated at s={max_s}; top row is not trusted")
    logging.info(f"Built cobar complex over F_{C.p}: {sum(len(b) for b in bases.values())} words")
    return complex_


def homology(complex_: CobarComplexSlice, name: str = 'E2', threads: Optional[int] = None) -> BigradedPage:
    """
    Homology dimensions per (weight, s, t): dim ker d_s - rank d_{s-1}.

    Ranks are computed concurrently; results are assembled in index order.
    """
    p = complex_.p
    keys = sorted(complex_.matrices)
    workers = resolve_threads(threads)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        ranks = dict(zip(keys, executor.map(lambda k: rank_mod_p(complex_.matrices[k], p), keys)))
    logging.debug(f"Computed {len(ranks)} ranks on {workers} workers")

    dims: Dict[Index, int] = {}
    for (w, s, t), words in complex_.bases.items():
        outgoing = ranks.get((w, s, t), 0)
        incoming = ranks.get((w, s - 1, t), 0)
        dims[(w, s, t)] = len(words) - outgoing - incoming
    return BigradedPage(name, p, dims, complex_.truncated, dict(complex_.box))


def chain_page(complex_: CobarComplexSlice, name: str = 'E1') -> BigradedPage:
    """The chain groups of a complex as a page."""
    return BigradedPage(name, complex_.p, complex_.dims(), False, dict(complex_.box))


def cotor(
    C: Coalgebra,
    max_s: int,
    max_degree: int,
    M: Optional[Comodule] = None,
    N: Optional[Comodule] = None,
    threads: Optional[int] = None,
) -> BigradedPage:
    """
    Cotor^C(M, N) dimensions per bidegree (-s, t); M and N default to F_p.

    Entries are trusted strictly inside the box.
    """
    complex_ = build_cobar_complex(C, max_s, max_degree, M, N)
    page = homology(complex_, 'Cotor', threads)
    logging.info(f"Cotor over F_{C.p}: {len(page.dims)} nonzero bidegrees")
    return page


def verify_d_squared(complex_: CobarComplexSlice) -> Tuple[bool, Optional[CobarWord]]:
    """
    Check d ∘ d = 0 on every pair of consecutive matrices.

    Returns:
        (True, None), or (False, first word whose image under d ∘ d is nonzero)
    """
    p = complex_.p
    for (w, s, t), first in sorted(complex_.matrices.items()):
        second = complex_.matrices.get((w, s + 1, t))
        if second is None:
            continue
        product = matmul_mod_p(second, first, p)
        column = first_nonzero_column(product)
        if column is not None:
            witness = complex_.bases[(w, s, t)][column]
            logging.error(f"d∘d is nonzero at (w={w}, s={s}, t={t}) on {witness}")
            return False, witness
    return True, None


def word_name(
    word: CobarWord,
    C: Coalgebra,
    M: Optional[Comodule] = None,
    N: Optional[Comodule] = None,
) -> str:
    """Readable form m⊗[a|b]⊗n of a word."""
    body = "[" + "|".join(C.name(b) for b in word.blocks) + "]"
    if M is not None and word.left is not None:
        body = f"{M.space.element(word.left).name}⊗{body}"
    if N is not None and word.right is not None:
        body = f"{body}⊗{N.space.element(word.right).name}"
    return body
