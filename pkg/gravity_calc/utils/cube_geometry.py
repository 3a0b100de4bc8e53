"""
Gravity and skewer filtrations on configurations of little cubes.

Everything here is exact: coordinates are Fractions and every predicate
is decided without floating point. Only the first axis of each cube
enters the filtrations.
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from gravity_calc.exceptions import BadS, EmptySubset, OutOfRange, Unreachable
from gravity_calc.models.cubes import (
    Axis,
    CubeConfig,
    LittleCube,
    SubsetPartition,
    as_rational,
)
from gravity_calc.utils.clique_cover import (
    brute_force_cover,
    interval_stabbing_cover,
    min_clique_cover,
    set_partitions,
)
from gravity_calc.utils.serialization import dumps_config

ONE = Fraction(1)
ZERO = Fraction(0)


def validate_config(raw: Iterable[Any]) -> CubeConfig:
    """
    Build a validated configuration from raw cube data.

    Args:
        raw: cubes given as LittleCube instances, JSON dicts or sequences of
            (center, radius) pairs

    Returns:
        CubeConfig with pairwise disjoint open images

    Raises:
        NonDisjoint: if two open images intersect
        OutOfBounds: if a cube leaves [-1, 1]
    """
    cubes = []
    for item in raw:
        if isinstance(item, LittleCube):
            cubes.append(item)
        elif isinstance(item, dict):
            cubes.append(LittleCube.from_dict(item))
        else:
            cubes.append(LittleCube(tuple(tuple(axis) for axis in item)))
    return CubeConfig(tuple(cubes))


def overlap_d(x: Any, b: Axis) -> Fraction:
    """
    Overlap of the point x with the 1-cube b = (C, R).

    d(x, b) = (2R - ||C+R-x| - |C-R-x||) / 2R, which is 1 at the center,
    0 outside the open image and linear in between.
    """
    x = as_rational(x)
    center, radius = b
    return (2 * radius - abs(abs(center + radius - x) - abs(center - radius - x))) / (2 * radius)


def dis(c1: LittleCube, c2: LittleCube) -> Fraction:
    """Symmetric overlap of the first coordinates of two cubes."""
    return min(overlap_d(c1.center(0), c2.first), overlap_d(c2.center(0), c1.first))


def _check_subset(cfg: CubeConfig, subset: Iterable[int]) -> List[int]:
    labels = sorted(set(subset))
    if not labels:
        raise EmptySubset()
    for label in labels:
        if not 1 <= label <= cfg.j:
            raise ValueError(f"label {label} is not in 1..{cfg.j}")
    return labels


def OL(cfg: CubeConfig, subset: Iterable[int]) -> Fraction:
    """
    Overlap of a subset: the minimum of dis over its pairs.

    A singleton has OL = 1, the value of dis(c, c).
    """
    labels = _check_subset(cfg, subset)
    value = ONE
    for k, l in combinations(labels, 2):
        value = min(value, dis(cfg.cube(k), cfg.cube(l)))
        if value == 0:
            break
    return value


def MOL(cfg: CubeConfig, partition: SubsetPartition) -> Fraction:
    """Minimum of OL over the parts of a partition."""
    return min(OL(cfg, part) for part in partition.parts)


def is_stable(cfg: CubeConfig, subset: Iterable[int]) -> bool:
    """True iff every first-axis center of the subset lies in every other open image."""
    return OL(cfg, subset) > 0


def _stability_graph(cfg: CubeConfig) -> Dict[int, set]:
    adjacent: Dict[int, set] = {label: set() for label in cfg.labels}
    for k, l in combinations(cfg.labels, 2):
        if dis(cfg.cube(k), cfg.cube(l)) > 0:
            adjacent[k].add(l)
            adjacent[l].add(k)
    return adjacent


def gravity_degree(cfg: CubeConfig) -> int:
    """
    Smallest number of gravity-stable parts the cubes split into.

    cfg lies in F_{-s} exactly when s <= gravity_degree(cfg).
    """
    return len(min_clique_cover(cfg.labels, _stability_graph(cfg)))


def gravity_degree_brute(cfg: CubeConfig) -> int:
    """Exhaustive set-partition oracle for gravity_degree."""
    return brute_force_cover(cfg.labels, lambda part: is_stable(cfg, part))


def in_gravity_filtration(cfg: CubeConfig, s: int) -> bool:
    """Membership in F_{-s}; F_0 = F_{-1} is the whole space."""
    return s <= 1 or gravity_degree(cfg) >= s


def stable_partitions(cfg: CubeConfig, s: int) -> List[SubsetPartition]:
    """All partitions into exactly s gravity-stable parts, in canonical order."""
    if not 1 <= s <= cfg.j:
        raise BadS(s, cfg.j)
    adjacent = _stability_graph(cfg)
    found = []
    for blocks in set_partitions(cfg.labels, k=s):
        if all(all(l in adjacent[k] for k, l in combinations(b, 2)) for b in blocks):
            found.append(SubsetPartition.of(blocks, cfg.j))
    return sorted(found, key=lambda p: p.canonical())


def u_value(cfg: CubeConfig, s: int) -> Fraction:
    """
    u_s(c): the best MOL over all partitions into exactly s parts.

    u_s vanishes exactly on F_{-s-1} and equals 1 exactly when the cubes
    form at most s vertical piles.

    Raises:
        BadS: if s < 1 or s > j
    """
    if not 1 <= s <= cfg.j:
        raise BadS(s, cfg.j)
    pair_dis = {
        (k, l): dis(cfg.cube(k), cfg.cube(l))
        for k, l in combinations(cfg.labels, 2)
    }

    def part_ol(block: Sequence[int]) -> Fraction:
        return min((pair_dis[k, l] for k, l in combinations(sorted(block), 2)), default=ONE)

    best = ZERO
    for blocks in set_partitions(cfg.labels, k=s):
        value = ONE
        for block in blocks:
            value = min(value, part_ol(block))
            if value <= best:
                break
        if value > best:
            best = value
            if best == ONE:
                break
    return best


def m_clamp(t: Any) -> Fraction:
    """m(t) = min(2t, 1) on [0, 1]."""
    t = as_rational(t)
    if not 0 <= t <= 1:
        raise OutOfRange(t)
    return min(2 * t, ONE)


def ndr_function(cfg: CubeConfig, s: int) -> Fraction:
    """The NDR function m(u_s(c)) of the pair (F_{-s}, F_{-s-1})."""
    return m_clamp(u_value(cfg, s))


def shrink_H(cfg: CubeConfig, t: Any) -> CubeConfig:
    """
    Shrink every first-axis radius to (1 - t)R, centers fixed.

    Raises:
        OutOfRange: unless 0 <= t < 1
    """
    t = as_rational(t)
    if not 0 <= t < 1:
        raise OutOfRange(t)
    if t == 0:
        return cfg
    return CubeConfig(tuple(c.with_first_radius((1 - t) * c.radius(0)) for c in cfg.cubes))


def fix_first_radius(cfg: CubeConfig, eps: Any) -> CubeConfig:
    """Move cfg into C_n^eps: every first-axis radius becomes eps."""
    eps = as_rational(eps)
    return CubeConfig(tuple(c.with_first_radius(eps) for c in cfg.cubes))


def _shrunk_intervals(cfg: CubeConfig, t: Fraction) -> List[Tuple[Fraction, Fraction, int]]:
    scale = 1 - t
    return sorted(
        (c - scale * r, c + scale * r, label)
        for label, (c, r) in zip(cfg.labels, cfg.first_axes())
    )


def slab_groups(cfg: CubeConfig, t: Any = 0) -> List[List[int]]:
    """
    Groups of cubes separated by vertical hyperplanes after shrinking by t.

    Closed first-axis images that only touch at an endpoint land in
    different groups. Groups are ordered left to right.
    """
    t = as_rational(t)
    if not 0 <= t < 1:
        raise OutOfRange(t)
    groups: List[List[int]] = []
    reach: Optional[Fraction] = None
    for left, right, label in _shrunk_intervals(cfg, t):
        if reach is not None and left < reach:
            groups[-1].append(label)
            reach = max(reach, right)
        else:
            groups.append([label])
            reach = right
    return [sorted(g) for g in groups]


def is_decomposable(cfg: CubeConfig, s: int) -> bool:
    """Membership in D_n^s: at least s groups separated by vertical slabs."""
    if not 1 <= s <= cfg.j:
        raise BadS(s, cfg.j)
    return len(slab_groups(cfg)) >= s


def _separation_events(cfg: CubeConfig) -> List[Fraction]:
    events = {ZERO}
    for (ca, ra), (cb, rb) in combinations(cfg.first_axes(), 2):
        if ca != cb:
            t = 1 - abs(ca - cb) / (ra + rb)
            if t > 0:
                events.add(t)
    return sorted(events)


def sigma(cfg: CubeConfig, s: int) -> Fraction:
    """
    sigma_s(c): the least shrinking parameter putting cfg into D_n^s.

    The group count only changes when two shrunk intervals start to touch,
    so the minimum is attained at one of those events.

    Raises:
        BadS: if s < 1 or s > j
        Unreachable: if s exceeds the number of distinct first-axis centers
    """
    if not 1 <= s <= cfg.j:
        raise BadS(s, cfg.j)
    distinct = cfg.distinct_centers()
    if s > distinct:
        raise Unreachable(s, distinct)
    for t in _separation_events(cfg):
        if len(slab_groups(cfg, t)) >= s:
            return t
    # every distinct pair separates strictly before t = 1
    raise Unreachable(s, distinct)


def shrink_parameter(cfg: CubeConfig, s: int) -> Fraction:
    """u_s sigma_s + (1 - u_s) sigma_{s+1}, the endpoint of the combined homotopy."""
    u = u_value(cfg, s)
    sigma_s = sigma(cfg, s)
    if u == ONE:
        return sigma_s
    try:
        sigma_next = sigma(cfg, s + 1)
    except (Unreachable, BadS):
        logging.warning(f"sigma_{s + 1} undefined off the pile locus (u_{s}={u}) for {dumps_config(cfg)}")
        raise Unreachable(s + 1, cfg.distinct_centers())
    return u * sigma_s + (1 - u) * sigma_next


def deform_G(cfg: CubeConfig, s: int, t: Any) -> CubeConfig:
    """
    Evaluate G(c, t) = H(c, t(u_s sigma_s + (1 - u_s) sigma_{s+1})).

    At t = 1 the result is horizontally decomposable into s groups
    whenever cfg is in F_{-s}.
    """
    t = as_rational(t)
    if not 0 <= t <= 1:
        raise OutOfRange(t)
    if t == 0:
        return cfg
    return shrink_H(cfg, t * shrink_parameter(cfg, s))


def _open_intervals(cfg: CubeConfig) -> Dict[int, Tuple[Fraction, Fraction]]:
    return {label: (c - r, c + r) for label, (c, r) in zip(cfg.labels, cfg.first_axes())}


def skewer_degree(cfg: CubeConfig) -> int:
    """Smallest number of parts that can each be skewered by one vertical line."""
    return len(interval_stabbing_cover(_open_intervals(cfg)))


def skewer_degree_brute(cfg: CubeConfig) -> int:
    """Exhaustive set-partition oracle for skewer_degree."""
    intervals = _open_intervals(cfg)

    def skewered(part: List[int]) -> bool:
        return max(intervals[k][0] for k in part) < min(intervals[k][1] for k in part)

    return brute_force_cover(cfg.labels, skewered)


def in_skewer_filtration(cfg: CubeConfig, s: int) -> bool:
    """Membership in G_{-s}."""
    return s <= 1 or skewer_degree(cfg) >= s


def geometry_report(cfg: CubeConfig) -> Dict[str, Any]:
    """
    Collect every filtration quantity of a configuration.

    Returns:
        {"gravity_degree", "skewer_degree", "u", "sigma", "decomposable",
         "stable_partitions"}, with rationals as Fractions and keys of the
        per-s tables as strings
    """
    g = gravity_degree(cfg)
    report: Dict[str, Any] = {
        'gravity_degree': g,
        'skewer_degree': skewer_degree(cfg),
        'u': {},
        'sigma': {},
        'decomposable': {},
    }
    for s in range(1, cfg.j + 1):
        report['u'][str(s)] = u_value(cfg, s)
        report['decomposable'][str(s)] = is_decomposable(cfg, s)
        try:
            report['sigma'][str(s)] = sigma(cfg, s)
        except Unreachable:
            pass
    report['stable_partitions'] = [
        [sorted(part) for part in p.canonical()] for p in stable_partitions(cfg, g)
    ]
    logging.info(f"Geometry of {cfg!r}: gravity degree {g}, skewer degree {report['skewer_degree']}")
    return report
