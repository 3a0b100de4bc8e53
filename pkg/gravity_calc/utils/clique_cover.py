"""
Minimum clique cover search.

Gravity stability and skewering are both "every pair in the part is
compatible" conditions, so both degrees are minimum clique covers of a
compatibility graph. The general graph is solved by branch-and-bound; the
interval graph of the skewer filtration by the greedy sweep.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

Adjacency = Dict[int, Set[int]]


def set_partitions(items: Sequence[int], k: Optional[int] = None) -> Iterator[List[List[int]]]:
    """
    Enumerate all set partitions of items, each exactly once.

    Blocks are listed in order of their smallest element (restricted growth
    order), so the enumeration is deterministic.

    Args:
        items: the elements to partition
        k: if given, only partitions into exactly k blocks are produced

    Yields:
        list of blocks, each block a list in input order
    """
    items = list(items)
    n = len(items)
    if n == 0:
        if not k:
            yield []
        return

    blocks: List[List[int]] = []

    def place(index: int) -> Iterator[List[List[int]]]:
        if index == n:
            if k is None or len(blocks) == k:
                yield [list(b) for b in blocks]
            return
        # not enough elements left to open the missing blocks
        if k is not None and len(blocks) + (n - index) < k:
            return
        item = items[index]
        for block in blocks:
            block.append(item)
            yield from place(index + 1)
            block.pop()
        if k is None or len(blocks) < k:
            blocks.append([item])
            yield from place(index + 1)
            blocks.pop()

    yield from place(0)


def greedy_clique_cover(vertices: Sequence[int], adjacent: Adjacency) -> List[List[int]]:
    """First-fit cover in vertex order; an upper bound for the search."""
    cliques: List[List[int]] = []
    for v in vertices:
        for clique in cliques:
            if all(u in adjacent[v] for u in clique):
                clique.append(v)
                break
        else:
            cliques.append([v])
    return cliques


def min_clique_cover(vertices: Sequence[int], adjacent: Adjacency) -> List[List[int]]:
    """
    Exact minimum clique cover by branch-and-bound.

    Vertices are assigned in the given order, each either to an existing
    clique it is fully adjacent to (lowest clique first) or to a new one.
    A branch is cut as soon as it cannot beat the best cover found.

    Args:
        vertices: vertex labels, in branching order
        adjacent: symmetric adjacency sets

    Returns:
        a minimum cover as a list of cliques
    """
    vertices = list(vertices)
    best = greedy_clique_cover(vertices, adjacent)
    best_size = len(best)
    cliques: List[List[int]] = []
    explored = 0

    def search(index: int):
        nonlocal best, best_size, explored
        explored += 1
        if len(cliques) >= best_size:
            return
        if index == len(vertices):
            best = [list(c) for c in cliques]
            best_size = len(best)
            return
        v = vertices[index]
        for clique in cliques:
            if all(u in adjacent[v] for u in clique):
                clique.append(v)
                search(index + 1)
                clique.pop()
        if len(cliques) + 1 < best_size:
            cliques.append([v])
            search(index + 1)
            cliques.pop()

    search(0)
    logging.debug(f"Clique cover search explored {explored} nodes, best size {best_size}")
    return best


def brute_force_cover(vertices: Sequence[int], is_clique: Callable[[List[int]], bool]) -> int:
    """
    Oracle: the smallest number of parts over all set partitions whose parts
    all satisfy is_clique.
    """
    best = len(vertices)
    for partition in set_partitions(vertices):
        if len(partition) < best and all(is_clique(part) for part in partition):
            best = len(partition)
    return best


def interval_stabbing_cover(intervals: Dict[int, Tuple[Fraction, Fraction]]) -> List[List[int]]:
    """
    Minimum cover of open intervals by groups with a common point.

    Sweep over right endpoints: the interval ending first opens a group, and
    every interval starting strictly before that endpoint joins it.

    Args:
        intervals: label -> (left, right) with left < right, open

    Returns:
        groups of labels, left to right
    """
    order = sorted(intervals, key=lambda k: (intervals[k][1], intervals[k][0], k))
    groups: List[List[int]] = []
    remaining = list(order)
    while remaining:
        anchor = intervals[remaining[0]][1]
        group = [k for k in remaining if intervals[k][0] < anchor]
        groups.append(sorted(group))
        taken = set(group)
        remaining = [k for k in remaining if k not in taken]
    return groups
