"""
Tests for the clique cover searches.
"""
from fractions import Fraction as F
from itertools import combinations

from hypothesis import given, settings, strategies as st

from gravity_calc.utils.clique_cover import (
    brute_force_cover,
    greedy_clique_cover,
    interval_stabbing_cover,
    min_clique_cover,
    set_partitions,
)

BELL = [1, 1, 2, 5, 15, 52, 203]


def graph(n, edges):
    adjacent = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        adjacent[a].add(b)
        adjacent[b].add(a)
    return adjacent


def is_clique(adjacent):
    return lambda part: all(b in adjacent[a] for a, b in combinations(part, 2))


def test_set_partitions_counts():
    """Test that every set partition appears exactly once."""
    for n, bell in enumerate(BELL):
        partitions = list(set_partitions(list(range(1, n + 1))))
        assert len(partitions) == bell
        assert len({tuple(tuple(b) for b in p) for p in partitions}) == bell


def test_set_partitions_fixed_block_count():
    """Test the restriction to exactly k blocks (Stirling numbers)."""
    items = [1, 2, 3, 4, 5]
    assert len(list(set_partitions(items, k=1))) == 1
    assert len(list(set_partitions(items, k=2))) == 15
    assert len(list(set_partitions(items, k=3))) == 25
    assert len(list(set_partitions(items, k=5))) == 1
    assert list(set_partitions(items, k=6)) == []


def test_min_clique_cover_cycle():
    """Test a 5-cycle, which needs three cliques."""
    adjacent = graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    cover = min_clique_cover(range(1, 6), adjacent)
    assert len(cover) == 3
    assert sorted(v for c in cover for v in c) == [1, 2, 3, 4, 5]
    assert all(is_clique(adjacent)(c) for c in cover)


def test_greedy_can_be_beaten():
    """Test that branch-and-bound improves on first fit."""
    # path 1-2-3-4 listed so first fit pairs 2 with 3
    adjacent = graph(4, [(1, 2), (2, 3), (3, 4)])
    order = [2, 3, 1, 4]
    assert len(greedy_clique_cover(order, adjacent)) == 3
    assert len(min_clique_cover(order, adjacent)) == 2


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(1, n), st.integers(1, n))))
))
def test_min_clique_cover_matches_brute_force(data):
    """Test branch-and-bound against exhaustive search on random graphs."""
    n, pairs = data
    adjacent = graph(n, [(a, b) for a, b in pairs if a != b])
    assert len(min_clique_cover(range(1, n + 1), adjacent)) == brute_force_cover(
        list(range(1, n + 1)), is_clique(adjacent)
    )


def test_interval_stabbing_cover():
    """Test the greedy sweep on open intervals."""
    intervals = {
        1: (F(0), F(2)),
        2: (F(1), F(3)),
        3: (F(2), F(4)),
        4: (F(5), F(6)),
    }
    # 3 starts where 1 ends, so the open intervals share no point
    assert interval_stabbing_cover(intervals) == [[1, 2], [3], [4]]
    assert interval_stabbing_cover({1: (F(0), F(1))}) == [[1]]
