"""
Order distances from scratch
============================

Every element of a finite distance matrix ranks the whole ground set by
closeness to itself, ties allowed.  The order distance between x and y
compares those two rankings: each element pair they order oppositely
costs p, each pair tied in exactly one of them costs q.  This script
walks through the pieces on a five-point example.
"""

from fractions import Fraction

from ordist import (
    DistanceMatrix,
    GroundSet,
    OrderParams,
    order_distance_eq1,
    order_distance_kendall,
    ranking_from_distance,
)

ground = GroundSet(["a", "b", "c", "d", "e"])
d = DistanceMatrix(
    ground,
    [
        [0, 4, 7, 7, 4],
        [4, 0, 7, 7, 2],
        [7, 7, 0, 3, 7],
        [7, 7, 3, 0, 7],
        [4, 2, 7, 7, 0],
    ],
)

# how each element sorts the others, nearest first (ties grouped)
for x in range(ground.n):
    print(f"ranking from {ground.labels[x]}: {ranking_from_distance(d, x)}")
print()

# the parameters: p per disagreement, q per half-tie, with q >= p/2
params = OrderParams(2, 1)
o = order_distance_eq1(d, params)
print(f"order distance at (p,q) = (2,1):")
for x in range(ground.n):
    print(
        " ",
        ground.labels[x],
        " ".join(str(o[x, y]) for y in range(ground.n)),
    )
print()

# the ranking route gives the same matrix, pair of rankings at a time
assert o == order_distance_kendall(d, params)
print("direct pair counting agrees with the split aggregation route")

# scaling both parameters scales the result; fractions stay exact
double = order_distance_eq1(d, OrderParams(4, 2))
assert all(
    double[x, y] == 2 * o[x, y]
    for x in range(ground.n)
    for y in range(ground.n)
)
half = order_distance_eq1(d, OrderParams(1, Fraction(1, 2)))
print(f"O(a,c) at (2,1) = {o.by_label('a', 'c')}, at (1,1/2) = {half.by_label('a', 'c')}")

# q < p/2 is rejected: such weights would break the triangle inequality
try:
    OrderParams(2, Fraction(1, 2))
except ValueError as exc:
    print(f"rejected parameters: {exc}")
