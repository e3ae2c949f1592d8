"""Shared fixtures and slow reference implementations.

The reference functions here deliberately avoid the library's aggregation
and scaling tricks: they work pairwise on Fraction entries, straight from
the definitions, so the fast engines have something independent to match.
"""

from fractions import Fraction
from itertools import permutations

from ordist import (
    CircularOrdering,
    DistanceMatrix,
    GroundSet,
    Split,
    WeightedSplitSystem,
)


def naive_order_distance(matrix: DistanceMatrix, p, q) -> DistanceMatrix:
    """Order distance straight from the defining sums: for every ordered
    pair the strict-comparison side, for every unordered pair the
    equidistant set, each contributing to all pairs it separates."""
    p, q = Fraction(p), Fraction(q)
    n = matrix.n
    acc = [[Fraction(0)] * n for _ in range(n)]

    def add(side: set, amount: Fraction) -> None:
        if not side or len(side) == n:
            return
        for x in range(n):
            for y in range(x + 1, n):
                if (x in side) != (y in side):
                    acc[x][y] += amount

    for u in range(n):
        for v in range(n):
            if u != v:
                add({z for z in range(n) if matrix[u, z] < matrix[v, z]}, p / 2)
    for u in range(n):
        for v in range(u + 1, n):
            add({z for z in range(n) if matrix[u, z] == matrix[v, z]}, q - p / 2)
    rows = [
        [acc[min(i, j)][max(i, j)] if i != j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    return DistanceMatrix(matrix.ground, rows)


def compatible_pair_brute(s1: Split, s2: Split) -> bool:
    a1, b1 = (set(part) for part in s1.parts())
    a2, b2 = (set(part) for part in s2.parts())
    return any(
        not (p1 & p2) for p1 in (a1, b1) for p2 in (a2, b2)
    )


def quadruple_condition_holds(matrix: DistanceMatrix, seq) -> bool:
    """Direct Fraction evaluation of the circular quadruple condition on
    one ordering, no rescaling."""
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(k + 1, n):
                    a, b, c, d = seq[i], seq[j], seq[k], seq[l]
                    rhs = matrix[a, c] + matrix[b, d]
                    if matrix[a, b] + matrix[c, d] > rhs:
                        return False
                    if matrix[a, d] + matrix[b, c] > rhs:
                        return False
    return True


def circular_orderings_brute(matrix: DistanceMatrix) -> list[CircularOrdering]:
    """Every canonical ordering passing the quadruple condition, found by
    trying all (n-1)!; the oracle for the recovery search."""
    n = matrix.n
    if n <= 3:
        return [CircularOrdering(matrix.ground, range(n))]
    found = []
    for perm in permutations(range(1, n)):
        theta = CircularOrdering(matrix.ground, (0,) + perm)
        if theta not in found and quadruple_condition_holds(matrix, theta.sequence):
            found.append(theta)
    return found


def ultrametric_fixture() -> WeightedSplitSystem:
    """The weighted compatible 5-point system whose order distance follows
    the 4p+3q / 4p+5q / p+4q / 2p+4q patterns."""
    g = GroundSet("abcde")
    return WeightedSplitSystem(
        g,
        {
            Split(g, "a"): 4,
            Split(g, "b"): 2,
            Split(g, "e"): 2,
            Split(g, "c"): 1,
            Split(g, "d"): 1,
            Split(g, "cd"): 1,
        },
    )


def quartet_fixture() -> WeightedSplitSystem:
    """Unit-weighted non-maximum circular system on four elements whose
    order distance needs a strictly larger circular system."""
    g = GroundSet("abcd")
    return WeightedSplitSystem.unit(g, [Split(g, "b"), Split(g, "ab"), Split(g, "ad")])


SIX_POINT_LABELS = ("a", "b", "s", "t", "x", "y")
SIX_POINT_ROWS = (
    (0, 6, 5, 4, 13, 14),
    (6, 0, 2, 3, 12, 11),
    (5, 2, 0, 1, 8, 9),
    (4, 3, 1, 0, 10, 7),
    (13, 12, 8, 10, 0, 15),
    (14, 11, 9, 7, 15, 0),
)


def six_point_table() -> DistanceMatrix:
    """Six-element distance whose midpath system is incompatible although
    every five-element restriction has a compatible one."""
    return DistanceMatrix(GroundSet(SIX_POINT_LABELS), SIX_POINT_ROWS)


def system_from_sides(labels: str, sides: list[str], weights=None) -> WeightedSplitSystem:
    g = GroundSet(labels)
    splits = [Split(g, list(side)) for side in sides]
    if weights is None:
        return WeightedSplitSystem.unit(g, splits)
    return WeightedSplitSystem(g, dict(zip(splits, weights)))
