"""
Tests for graded spaces, signs, shuffles and coalgebras over F_p.
"""
from itertools import combinations, permutations, product

import numpy as np
import pytest

from gravity_calc.exceptions import (
    BadComodule,
    BadCounit,
    DegreeMismatch,
    NegativeDegree,
    NotCoassociative,
    PrimeMismatch,
    TruncationTooSmall,
)
from gravity_calc.models.coalgebra import LEFT, RIGHT
from gravity_calc.models.graded import BasisElement, Chain, GradedMap, GradedSpace
from gravity_calc.utils.coalgebra_core import (
    check_coalgebra,
    check_comodule,
    coalgebra_from_table,
    comodule_from_table,
    compose,
    koszul_sign,
    regular_comodule,
    shuffle_map,
    shuffle_sum,
    suspend,
    tensor,
    tensor_algebra,
    tensor_power,
    trivial_comodule,
)
from gravity_calc.utils.linalg import rank_mod_p, row_echelon_mod_p


def space(p, *elements):
    return GradedSpace(p, tuple(BasisElement(name, name, degree) for name, degree in elements))


@pytest.fixture
def ab3():
    """Generators a (degree 2) and b (degree 3) over F_3."""
    return space(3, ('a', 2), ('b', 3))


def test_chain_arithmetic():
    """Test that chains reduce coefficients mod p and drop zeros."""
    c = Chain(3).add('x', 2).add('x', 1)
    assert c.is_zero()
    assert c == 0
    d = Chain(3, {'x': 4, 'y': -1})
    assert d['x'] == 1 and d['y'] == 2
    assert (d - d) == 0
    with pytest.raises(PrimeMismatch):
        d.add_chain(Chain(2, {'x': 1}))


def test_rank_mod_p():
    """Test exact ranks over F_2 and F_3."""
    m = np.array([[1, 1], [1, 1]])
    assert rank_mod_p(m, 2) == 1
    assert rank_mod_p(np.array([[1, 2], [2, 1]]), 3) == 1
    assert rank_mod_p(np.array([[1, 2], [2, 1]]), 2) == 2
    assert rank_mod_p(np.zeros((0, 3), dtype=np.int64), 2) == 0
    _, pivots = row_echelon_mod_p(np.array([[0, 1, 1], [0, 0, 1]]), 5)
    assert pivots == [1, 2]


def test_suspend():
    """Test degree shifts and the negative-degree guard."""
    V = space(2, ('x', 2))
    assert suspend(V, 0) is V
    assert suspend(V, -1).basis[0].degree == 1
    with pytest.raises(NegativeDegree):
        suspend(space(2, ('u', 0)), -1)


def test_tensor():
    """Test tensor products of graded spaces."""
    V = space(2, ('a', 1), ('b', 2))
    W = space(2, ('c', 0), ('d', 1), ('e', 1))
    VW = tensor(V, W)
    assert len(VW) == 6
    assert VW.dims() == {1: 1, 2: 3, 3: 2}
    unit = space(2, ('1', 0))
    assert tensor(V, unit).dims() == V.dims()
    with pytest.raises(PrimeMismatch):
        tensor(V, space(3, ('z', 1)))
    assert len(tensor_power(V, 3)) == 8


def test_koszul_sign_examples():
    """Test the Koszul rule on transpositions."""
    assert koszul_sign((0, 1, 2), (1, 1, 1)) == 1
    assert koszul_sign((1, 0), (1, 3)) == -1
    assert koszul_sign((1, 0), (1, 2)) == 1
    assert koszul_sign((1, 0), (1, 3), p=2) == 1


def test_koszul_sign_is_a_cocycle():
    """Test sign(sigma after tau) = sign(tau) * sign(sigma on the permuted degrees)."""
    for k in range(1, 5):
        for degs in product((0, 1, 2, 3), repeat=k):
            for tau in permutations(range(k)):
                moved = [degs[i] for i in tau]
                for sigma in permutations(range(k)):
                    assert koszul_sign(compose(sigma, tau), degs) == (
                        koszul_sign(tau, degs) * koszul_sign(sigma, moved)
                    )


def test_shuffle_sum_examples():
    """Test small shuffle sums."""
    assert shuffle_sum(1, 1, (2, 2), 2).apply(('a', 'b'), 2) == Chain(2, {('a', 'b'): 1, ('b', 'a'): 1})
    odd = shuffle_sum(1, 1, (1, 3), 3).apply(('a', 'b'), 3)
    assert odd == Chain(3, {('a', 'b'): 1, ('b', 'a'): -1})
    assert len(shuffle_sum(2, 1, (1, 1, 1))) == 3
    with pytest.raises(ValueError):
        shuffle_sum(0, 2, (1, 1))


def _act(i, j, chain, degree, p):
    """Apply s_{i,j} to the first i + j letters of every word in chain."""
    out = Chain(p)
    for word, coef in chain.items():
        head, rest = word[:i + j], word[i + j:]
        for shuffled, c in shuffle_sum(i, j, [degree[x] for x in head], p).apply(head, p).items():
            out.add(shuffled + rest, coef * c)
    return out


@pytest.mark.parametrize('p', [2, 3])
def test_shuffles_refine_to_trishuffles(p):
    """Test that s_{i,j} after s_{i+j,k} is the (i,j,k)-trishuffle sum."""
    letters = ('a', 'b', 'c', 'd', 'e')
    for n in range(3, 6):
        for degs in product((1, 2), repeat=n):
            word = letters[:n]
            degree = dict(zip(word, degs))
            for i in range(1, n - 1):
                for j in range(1, n - i):
                    k = n - i - j
                    start = Chain(p, {word: 1})
                    composite = _act(i, j, _act(i + j, k, start, degree, p), degree, p)
                    expected = Chain(p)
                    for A in combinations(range(n), i):
                        rest = [q for q in range(n) if q not in A]
                        for B in combinations(rest, j):
                            C = tuple(q for q in rest if q not in B)
                            perm = A + B + C
                            expected.add(tuple(word[q] for q in perm), koszul_sign(perm, degs, p))
                    assert composite == expected


def test_shuffle_map_matrix():
    """Test s_{1,1} as a matrix on V⊗V."""
    V = space(3, ('a', 1), ('b', 1))
    s = shuffle_map(V, 1, 1)
    assert isinstance(s, GradedMap)
    assert s.apply(('a', 'b')) == Chain(3, {('a', 'b'): 1, ('b', 'a'): -1})
    assert s.apply(('a', 'a')) == 0


def test_tensor_algebra_coproduct(ab3):
    """Test the unshuffle coproduct on short words."""
    T = tensor_algebra(ab3, 3, 9)
    assert T.coproduct(('a',)) == 0
    assert T.coproduct(('a', 'b')) == Chain(3, {(('a',), ('b',)): 1, (('b',), ('a',)): 1})
    # b is odd, so the two unshuffles of bb cancel
    assert T.coproduct(('b', 'b')) == 0
    assert T.space.element(()).name == '1'
    assert T.space.element(('a', 'b')).weight == 2
    check_coalgebra(T)


def test_tensor_algebra_binomial_mod_2():
    """Test that x^3 splits as x⊗x^2 + x^2⊗x over F_2."""
    T = tensor_algebra(space(2, ('x', 2)), 4, 8)
    x, xx = ('x',), ('x', 'x')
    assert T.coproduct(('x', 'x', 'x')) == Chain(2, {(x, xx): 1, (xx, x): 1})
    assert T.coproduct(xx) == 0
    assert len(T.space) == 5


def test_tensor_algebra_bounds(ab3):
    """Test truncation bounds."""
    with pytest.raises(TruncationTooSmall):
        tensor_algebra(ab3, 0, 5)
    T = tensor_algebra(ab3, 6, 5)
    assert max(e.degree for e in T.space.basis) <= 5
    assert not T.truncated


def test_coalgebra_from_table_accepts():
    """Test valid tables, including the primitive coalgebra."""
    C = coalgebra_from_table(space(2, ('1', 0), ('x', 2)), {})
    assert C.coproduct('x') == 0
    D = coalgebra_from_table(
        space(2, ('1', 0), ('x', 2), ('x^2', 4)),
        {'x^2': [('x', 'x', 1)]},
    )
    assert D.coproduct('x^2') == Chain(2, {('x', 'x'): 1})


def test_coalgebra_from_table_rejects():
    """Test degree, counit and coassociativity failures."""
    base = space(2, ('1', 0), ('x', 1), ('y', 1), ('z', 2), ('w', 3))
    with pytest.raises(DegreeMismatch):
        coalgebra_from_table(base, {'z': [('x', 'z', 1)]})
    with pytest.raises(BadCounit):
        coalgebra_from_table(base, {'z': [('1', 'z', 1)]})
    with pytest.raises(NotCoassociative) as exc:
        coalgebra_from_table(base, {'z': [('x', 'y', 1)], 'w': [('x', 'z', 1)]})
    assert exc.value.witness == ('x', 'x', 'y')
    with pytest.raises(BadCounit):
        coalgebra_from_table(space(2, ('u', 1)), {}, counit='u')


def test_comodules(ab3):
    """Test comodule validation and the regular comodules."""
    C = coalgebra_from_table(space(3, ('1', 0), ('x', 2)), {})
    M = comodule_from_table(C, space(3, ('m0', 0), ('m', 2)), RIGHT, {'m': [('m0', 'x', 1)]})
    assert M.coact('m') == Chain(3, {('m0', 'x'): 1})
    with pytest.raises(DegreeMismatch):
        comodule_from_table(C, space(3, ('m0', 0), ('m', 3)), RIGHT, {'m': [('m0', 'x', 1)]})
    with pytest.raises(BadComodule):
        comodule_from_table(C, space(3, ('m0', 0), ('m', 2)), RIGHT, {'m': [('m0', '1', 1)]})

    T = tensor_algebra(ab3, 3, 9)
    for side in (LEFT, RIGHT):
        check_comodule(T, regular_comodule(T, side))
        assert trivial_comodule(3, side).is_trivial()
