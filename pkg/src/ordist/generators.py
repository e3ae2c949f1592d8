"""Seeded random instances for tests, demos and the benchmark.

Every function takes a `random.Random` so callers control reproducibility;
nothing here touches the global RNG state.
"""

from __future__ import annotations

import random
from itertools import combinations

from .circular import CircularOrdering, maximum_circular_splits
from .core import DistanceMatrix, GroundSet, Split, WeightedSplitSystem
from .flatlab import AllowablePair, allowable_splits

__all__ = [
    "index_ground",
    "random_binary_tree_system",
    "random_maximum_circular_system",
    "random_allowable_pair",
    "random_maximum_flat_system",
    "random_distance_matrix",
    "random_two_valued_matrix",
]


def index_ground(n: int, prefix: str = "x") -> GroundSet:
    """Ground set with generated labels prefix0 .. prefix{n-1}."""
    return GroundSet(f"{prefix}{i}" for i in range(n))


def random_binary_tree_system(
    n: int, rng: random.Random, max_weight: int = 20
) -> WeightedSplitSystem:
    """Splits of a uniformly grown unrooted binary tree with n labeled
    leaves, each split carrying a random weight in 1..max_weight.

    Built by attaching one leaf at a time to a random existing edge, so the
    result always has 2n-3 edges and as many distinct splits (n >= 2).
    """
    if n < 2:
        raise ValueError("a tree system needs at least 2 leaves")
    ground = index_ground(n)
    # leaves are 0..n-1, internal vertices get ids from n upward
    edges: list[tuple[int, int]] = [(0, 1)]
    next_vertex = n
    for leaf in range(2, n):
        u, v = edges.pop(rng.randrange(len(edges)))
        mid = next_vertex
        next_vertex += 1
        edges.extend([(u, mid), (mid, v), (mid, leaf)])
    adjacency: dict[int, list[int]] = {}
    for u, v in edges:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)

    def leaves_beyond(start: int, blocked: int) -> list[int]:
        seen = {blocked, start}
        stack = [start]
        found = []
        while stack:
            w = stack.pop()
            if w < n:
                found.append(w)
            for nb in adjacency[w]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return found

    weighted = []
    for u, v in edges:
        side = leaves_beyond(v, u)
        weighted.append((Split(ground, side), rng.randint(1, max_weight)))
    return WeightedSplitSystem(ground, weighted)


def random_maximum_circular_system(
    n: int, rng: random.Random, max_weight: int = 20, positive: bool = True
) -> tuple[CircularOrdering, WeightedSplitSystem]:
    """A random circular ordering of n elements together with all its C(n,2)
    interval splits, weighted in 1..max_weight (0..max_weight when zero
    weights are allowed)."""
    if n < 2:
        raise ValueError("need at least 2 elements")
    ground = index_ground(n)
    perm = list(range(n))
    rng.shuffle(perm)
    theta = CircularOrdering(ground, perm)
    low = 1 if positive else 0
    weighted = [
        (s, rng.randint(low, max_weight)) for s in maximum_circular_splits(theta)
    ]
    return theta, WeightedSplitSystem(ground, weighted)


def random_allowable_pair(n: int, rng: random.Random) -> AllowablePair:
    """A random allowable pair: random start ordering, then at each step a
    uniformly chosen adjacent swap among those whose element pair has not
    swapped yet.  Some admissible swap always exists until the ordering is
    fully reversed, so the walk never gets stuck."""
    if n < 2:
        raise ValueError("need at least 2 elements")
    ground = index_ground(n)
    pi = list(range(n))
    rng.shuffle(pi)
    cur = list(pi)
    swapped: set[frozenset[int]] = set()
    kappa = []
    for _ in range(n * (n - 1) // 2):
        admissible = [
            k
            for k in range(n - 1)
            if frozenset((cur[k], cur[k + 1])) not in swapped
        ]
        k = rng.choice(admissible)
        swapped.add(frozenset((cur[k], cur[k + 1])))
        cur[k], cur[k + 1] = cur[k + 1], cur[k]
        kappa.append(k)
    return AllowablePair(ground, tuple(pi), tuple(kappa))


def random_maximum_flat_system(n: int, rng: random.Random) -> WeightedSplitSystem:
    """Unit weighting of the split system of a random allowable pair."""
    pair = random_allowable_pair(n, rng)
    return WeightedSplitSystem.unit(pair.ground, allowable_splits(pair))


def random_distance_matrix(
    n: int, rng: random.Random, tie_rich: bool = False
) -> DistanceMatrix:
    """A random symmetric positive matrix with zero diagonal.

    tie_rich draws entries from {1, 2, 3} so equidistance and repeated
    comparisons are common; otherwise all off-diagonal values are distinct.
    """
    if n < 1:
        raise ValueError("need at least 1 element")
    ground = index_ground(n)
    m = n * (n - 1) // 2
    if tie_rich:
        values = [rng.randint(1, 3) for _ in range(m)]
    else:
        values = rng.sample(range(1, 10 * m + 2), m)
    rows = [[0] * n for _ in range(n)]
    for (i, j), v in zip(combinations(range(n), 2), values):
        rows[i][j] = rows[j][i] = v
    return DistanceMatrix(ground, rows)


def random_two_valued_matrix(n: int, rng: random.Random) -> DistanceMatrix:
    """Off-diagonal entries drawn uniformly from {1, 2}."""
    if n < 1:
        raise ValueError("need at least 1 element")
    ground = index_ground(n)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = rng.randint(1, 2)
    return DistanceMatrix(ground, rows)
