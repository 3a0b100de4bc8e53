"""
Graded linear algebra over F_p: suspensions, tensor products, Koszul signs,
shuffles, tensor coalgebras and user-supplied coalgebras.

Sign convention
---------------
Cobar words are tensors of desuspended classes s^{-1}a of degree |a| - 1,
preceded by an optional comodule element m (degree |m|, not desuspended).
Every piece of a differential acts on one tensor factor and picks up the
Koszul sign (-1)^{e}, where e is the total degree of the factors to its
left. On top of that:

- splitting a block a into a' ⊗ a'' contributes (-1)^{|a'| + 1};
- the right coaction term c ⊗ n' contributes (-1)^{|c| + 1};
- the left coaction term m' ⊗ c contributes (-1)^{|m'|}.

For classes of even degree this is the alternating sum of cofaces.
Both d1 constructions of the gravity page and the cobar engine read their
signs from one DesuspensionSigns instance.
"""
import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from gravity_calc.exceptions import (
    BadComodule,
    BadCounit,
    DegreeMismatch,
    NegativeDegree,
    NotCoassociative,
    ParseError,
    PrimeMismatch,
    TruncationTooSmall,
)
from gravity_calc.models.coalgebra import LEFT, RIGHT, Coalgebra, Comodule
from gravity_calc.models.graded import BasisElement, Chain, GradedMap, GradedSpace

UNIT_NAME = '1'


def suspend(V: GradedSpace, k: int) -> GradedSpace:
    """
    Shift every degree of V by k.

    Raises:
        NegativeDegree: if some element would land below degree 0
    """
    if k == 0:
        return V
    basis = []
    for element in V.basis:
        degree = element.degree + k
        if degree < 0:
            raise NegativeDegree(element.name, degree)
        basis.append(BasisElement(
            ('s', k, element.key), f"s^{k}({element.name})", degree, element.weight
        ))
    return GradedSpace(V.p, tuple(basis))


def tensor(V: GradedSpace, W: GradedSpace) -> GradedSpace:
    """V ⊗ W with basis the ordered pairs and additive degrees."""
    if V.p != W.p:
        raise PrimeMismatch(V.p, W.p)
    basis = tuple(
        BasisElement((v.key, w.key), f"{v.name}⊗{w.name}", v.degree + w.degree, v.weight + w.weight)
        for v, w in product(V.basis, W.basis)
    )
    return GradedSpace(V.p, basis)


def tensor_power(V: GradedSpace, k: int) -> GradedSpace:
    """V^{⊗k} with flat tuple keys (v_1, ..., v_k)."""
    basis = tuple(
        BasisElement(
            tuple(e.key for e in letters),
            "⊗".join(e.name for e in letters),
            sum(e.degree for e in letters),
            sum(e.weight for e in letters),
        )
        for letters in product(V.basis, repeat=k)
    )
    return GradedSpace(V.p, basis)


def koszul_sign(perm: Sequence[int], degs: Sequence[int], p: Optional[int] = None) -> int:
    """
    Koszul sign of rearranging graded items.

    The output position i receives input item perm[i]; each pair of items
    whose order is reversed contributes (-1)^{deg_a deg_b}.

    Args:
        perm: a permutation of range(k)
        degs: degrees of the input items
        p: when 2, the sign is always +1

    Returns:
        +1 or -1
    """
    if p == 2:
        return 1
    if sorted(perm) != list(range(len(perm))) or len(perm) != len(degs):
        raise ValueError(f"not a permutation of {len(degs)} items: {perm}")
    exponent = 0
    for a in range(len(perm)):
        da = degs[perm[a]]
        if da % 2 == 0:
            continue
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                exponent += da * degs[perm[b]]
    return -1 if exponent % 2 else 1


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    """The rearrangement 'first tau, then sigma'."""
    return tuple(tau[sigma[i]] for i in range(len(sigma)))


def rearrange(perm: Sequence[int], items: Sequence[Any]) -> Tuple[Any, ...]:
    return tuple(items[i] for i in perm)


@dataclass(frozen=True)
class ShuffleSum:
    """
    The signed sum s_{i,j} of all (i, j)-shuffles for fixed letter degrees.

    A shuffle sigma keeps sigma(1) < ... < sigma(i) and
    sigma(i+1) < ... < sigma(i+j); it acts on letters by putting letter
    sigma(q) in position q.
    """
    i: int
    j: int
    terms: Tuple[Tuple[Tuple[int, ...], int], ...]

    def __len__(self):
        return len(self.terms)

    def apply(self, letters: Sequence[Hashable], p: int) -> Chain:
        out = Chain(p)
        for perm, sign in self.terms:
            out.add(rearrange(perm, letters), sign)
        return out


def shuffles(i: int, j: int) -> List[Tuple[int, ...]]:
    """All (i, j)-shuffles, ordered by the image of the first i letters."""
    n = i + j
    result = []
    for head in combinations(range(n), i):
        taken = set(head)
        result.append(tuple(head) + tuple(q for q in range(n) if q not in taken))
    return result


def shuffle_sum(i: int, j: int, degs: Sequence[int], p: Optional[int] = None) -> ShuffleSum:
    """
    s_{i,j} acting on i + j letters of the given degrees, with Koszul signs.
    """
    if i < 1 or j < 1:
        raise ValueError(f"shuffle sizes must be positive, got ({i}, {j})")
    if len(degs) != i + j:
        raise ValueError(f"need {i + j} degrees, got {len(degs)}")
    terms = tuple((perm, koszul_sign(perm, degs, p)) for perm in shuffles(i, j))
    return ShuffleSum(i, j, terms)


def shuffle_map(V: GradedSpace, i: int, j: int) -> GradedMap:
    """s_{i,j} as a degree-0 endomorphism of V^{⊗(i+j)}."""
    power = tensor_power(V, i + j)

    def image(key):
        degs = [V.degree(letter) for letter in key]
        return shuffle_sum(i, j, degs, V.p).apply(key, V.p)

    return GradedMap.from_function(power, power, 0, image)


class DesuspensionSigns:
    """
    The fixed sign convention shared by every cobar-type differential.

    See the module docstring for the rule.
    """

    @staticmethod
    def sign(exponent: int) -> int:
        return -1 if exponent % 2 else 1

    def prefix(self, left_degree: int, block_degrees: Iterable[int]) -> int:
        """Koszul exponent of the factors in front of a block."""
        return left_degree + sum(d - 1 for d in block_degrees)

    def split_sign(self, left_degree: int, preceding: Iterable[int], first_degree: int) -> int:
        """Sign of replacing a block by a' ⊗ a'' with |a'| = first_degree."""
        return self.sign(self.prefix(left_degree, preceding) + first_degree + 1)

    def left_coaction_sign(self, new_left_degree: int) -> int:
        return self.sign(new_left_degree)

    def right_coaction_sign(self, left_degree: int, blocks: Iterable[int], c_degree: int) -> int:
        return self.sign(self.prefix(left_degree, blocks) + c_degree + 1)


DEFAULT_SIGNS = DesuspensionSigns()


def _word_name(names: Sequence[str]) -> str:
    return "·".join(names) if names else UNIT_NAME


def tensor_algebra(V: GradedSpace, max_weight: int, max_degree: int) -> Coalgebra:
    """
    The tensor coalgebra T(V) with the unshuffle coproduct, truncated to
    words of length <= max_weight and degree <= max_degree.

    The reduced coproduct of v_1...v_k sums, over all splittings of the
    positions into complementary nonempty subsequences A and B, the term
    (word A) ⊗ (word B) with the Koszul sign of moving A in front of B.

    Raises:
        TruncationTooSmall: if max_weight or max_degree is below 1
    """
    if max_weight < 1 or max_degree < 1:
        raise TruncationTooSmall(max_weight, max_degree)
    p = V.p
    letters = [e for e in V.basis if e.degree <= max_degree]
    words: List[Tuple[BasisElement, ...]] = [()]
    frontier: List[Tuple[BasisElement, ...]] = [()]
    for _ in range(max_weight):
        frontier = [
            w + (letter,) for w in frontier for letter in letters
            if sum(e.degree for e in w) + letter.degree <= max_degree
        ]
        words.extend(frontier)

    basis = tuple(
        BasisElement(
            tuple(e.key for e in w), _word_name([e.name for e in w]),
            sum(e.degree for e in w), len(w),
        )
        for w in words
    )
    space = GradedSpace(p, basis)
    reduced: Dict[Hashable, Chain] = {}
    truncated = False
    for element in basis:
        word = element.key
        k = len(word)
        if k < 2:
            continue
        degs = [V.degree(letter) for letter in word]
        chain = Chain(p)
        for size in range(1, k):
            for head in combinations(range(k), size):
                taken = set(head)
                tail = tuple(q for q in range(k) if q not in taken)
                sign = koszul_sign(head + tail, degs, p)
                left = tuple(word[q] for q in head)
                right = tuple(word[q] for q in tail)
                if left not in space or right not in space:
                    truncated = True
                    continue
                chain.add((left, right), sign)
        if not chain.is_zero():
            reduced[word] = chain
    if truncated:
        logging.warning("Tensor coalgebra coproduct left the truncation box; terms dropped")
    logging.debug(f"Built tensor coalgebra on {len(V)} generators: {len(space)} words")
    return Coalgebra(space, (), reduced, truncated)


def _apply_left(C: Coalgebra, chain: Chain) -> Chain:
    """(Δ̄ ⊗ 1) on a chain of pairs, giving triples."""
    out = Chain(C.p)
    for (a, b), coef in chain.items():
        for (a1, a2), c2 in C.coproduct(a).items():
            out.add((a1, a2, b), coef * c2)
    return out


def _apply_right(C: Coalgebra, chain: Chain) -> Chain:
    """(1 ⊗ Δ̄) on a chain of pairs, giving triples."""
    out = Chain(C.p)
    for (a, b), coef in chain.items():
        for (b1, b2), c2 in C.coproduct(b).items():
            out.add((a, b1, b2), coef * c2)
    return out


def check_coalgebra(C: Coalgebra) -> None:
    """
    Verify the counit, degree additivity and coassociativity exhaustively.

    Raises:
        BadCounit: if the counit is not a degree-0 basis element outside every
            reduced term
        DegreeMismatch: if a reduced term does not add up to the degree
        NotCoassociative: if (Δ̄⊗1)Δ̄ and (1⊗Δ̄)Δ̄ differ on some element
    """
    if C.counit not in C.space or C.space.degree(C.counit) != 0:
        raise BadCounit(f"counit {C.counit!r} is not a degree-0 basis element")
    if not C.coproduct(C.counit).is_zero():
        raise BadCounit(f"counit {C.counit!r} has a nonzero reduced coproduct")
    for key, chain in C.reduced.items():
        if key not in C.space:
            raise ParseError(f"coproduct given for unknown element {key!r}")
        for a, b in chain:
            if a == C.counit or b == C.counit:
                raise BadCounit(f"reduced coproduct of {C.name(key)} contains the counit")
            if a not in C.space or b not in C.space:
                raise ParseError(f"coproduct of {C.name(key)} names an unknown element")
            if C.degree(a) + C.degree(b) != C.degree(key):
                raise DegreeMismatch(C.name(key), (C.name(a), C.name(b)))
    for element in C.reduced_basis():
        delta = C.coproduct(element.key)
        difference = _apply_left(C, delta) - _apply_right(C, delta)
        if not difference.is_zero():
            witness = next(iter(difference))
            raise NotCoassociative(element.name, witness)


def coalgebra_from_table(
    space: GradedSpace,
    table: Mapping[str, Iterable[Sequence[Any]]],
    counit: str = UNIT_NAME,
) -> Coalgebra:
    """
    Build and validate a coalgebra from a reduced-coproduct table.

    Args:
        space: underlying space, keyed by element names and containing the
            counit
        table: name -> list of (left name, right name, coefficient)
        counit: name of the counit element

    Returns:
        the validated Coalgebra

    Raises:
        NotCoassociative, BadCounit, DegreeMismatch
    """
    p = space.p
    reduced: Dict[Hashable, Chain] = {}
    for name, terms in table.items():
        chain = Chain(p)
        for term in terms:
            if len(term) == 2:
                left, right, coef = term[0], term[1], 1
            else:
                left, right, coef = term
            chain.add((left, right), int(coef))
        if not chain.is_zero():
            reduced[name] = chain
    coalgebra = Coalgebra(space, counit, reduced)
    check_coalgebra(coalgebra)
    logging.info(f"Validated coalgebra with {len(space)} basis elements over F_{p}")
    return coalgebra


def trivial_comodule(p: int, side: str) -> Comodule:
    """F_p concentrated in degree 0 with zero reduced coaction."""
    return Comodule(GradedSpace(p, (BasisElement(UNIT_NAME, UNIT_NAME, 0),)), side)


def regular_comodule(C: Coalgebra, side: str) -> Comodule:
    """
    C as a comodule over itself; its Cotor with the trivial comodule is F_p
    in degree 0.
    """
    coaction: Dict[Hashable, Chain] = {}
    for element in C.reduced_basis():
        chain = Chain(C.p)
        if side == RIGHT:
            chain.add((C.counit, element.key))
        else:
            chain.add((element.key, C.counit))
        chain.add_chain(C.coproduct(element.key))
        coaction[element.key] = chain
    return Comodule(C.space, side, coaction)


def check_comodule(C: Coalgebra, M: Comodule) -> None:
    """
    Verify degree additivity and coassociativity of a reduced coaction.

    Right: (ψ̄⊗1)ψ̄ = (1⊗Δ̄)ψ̄.  Left: (Δ̄⊗1)ψ̄ = (1⊗ψ̄)ψ̄.
    """
    if M.p != C.p:
        raise PrimeMismatch(M.p, C.p)
    if M.side not in (LEFT, RIGHT):
        raise ParseError(f"comodule side must be '{LEFT}' or '{RIGHT}', got {M.side!r}")
    for key, chain in M.coaction.items():
        if key not in M.space:
            raise ParseError(f"coaction given for unknown element {key!r}")
        name = M.space.element(key).name
        for pair in chain:
            m, c = pair if M.side == RIGHT else (pair[1], pair[0])
            if c == C.counit or c not in C.space or m not in M.space:
                raise BadComodule(name, pair)
            if M.degree(m) + C.degree(c) != M.degree(key):
                raise DegreeMismatch(name, pair)
    for element in M.space.basis:
        psi = M.coact(element.key)
        lhs, rhs = Chain(M.p), Chain(M.p)
        for pair, coef in psi.items():
            if M.side == RIGHT:
                m, c = pair
                for (m2, c2), coef2 in M.coact(m).items():
                    lhs.add((m2, c2, c), coef * coef2)
                for (c1, c3), coef2 in C.coproduct(c).items():
                    rhs.add((m, c1, c3), coef * coef2)
            else:
                c, m = pair
                for (c1, c3), coef2 in C.coproduct(c).items():
                    lhs.add((c1, c3, m), coef * coef2)
                for (c2, m2), coef2 in M.coact(m).items():
                    rhs.add((c, c2, m2), coef * coef2)
        difference = lhs - rhs
        if not difference.is_zero():
            raise BadComodule(element.name, next(iter(difference)))


def comodule_from_table(
    C: Coalgebra,
    space: GradedSpace,
    side: str,
    table: Mapping[str, Iterable[Sequence[Any]]],
) -> Comodule:
    """
    Build and validate a comodule from a reduced-coaction table.

    Args:
        C: the coalgebra
        space: the comodule's graded space, keyed by names
        side: 'left' or 'right'
        table: name -> list of (first, second, coefficient) in the order of
            the tensor product (m', c) for right, (c, m') for left
    """
    coaction: Dict[Hashable, Chain] = {}
    for name, terms in table.items():
        chain = Chain(space.p)
        for first, second, *rest in terms:
            chain.add((first, second), int(rest[0]) if rest else 1)
        if not chain.is_zero():
            coaction[name] = chain
    M = Comodule(space, side, coaction)
    check_comodule(C, M)
    return M
