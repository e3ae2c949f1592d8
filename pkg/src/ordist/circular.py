"""Circular distances and circular split systems.

A weighted split system is circular when all its splits cut a common
circular ordering of the elements into two arcs; a distance is circular
when some non-negative weighting of such a system generates it.  The
quadruple condition checked here characterizes the orderings that work:
for positions i < j < k < l along the ordering,

    max(D(xi,xj) + D(xk,xl), D(xi,xl) + D(xj,xk)) <= D(xi,xk) + D(xj,xl).

The condition is invariant under rotating and reversing the ordering, so
orderings are canonicalized (element 0 first, smaller second element) and
recovery can fix element 0 in place.

For circular input and q = p/2 the order distance can be computed without
touching all pairs-of-pairs: every strict-comparison side is an arc, located
by binary search, and the resulting weighted arc system is evaluated by an
O(n^2) recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import (
    DistanceMatrix,
    GroundSet,
    Split,
    WeightedSplitSystem,
    as_rational,
    generate_distance,
)

__all__ = [
    "NotCircularError",
    "CircularOrdering",
    "IntervalSplit",
    "all_interval_splits",
    "maximum_circular_splits",
    "interval_weight_map",
    "kalmanson_check",
    "fits_on_ordering",
    "recover_circular_ordering",
    "is_circular_split_system",
    "evaluate_circular_distance",
    "order_distance_circular",
]


class NotCircularError(ValueError):
    """Raised when an operation requires circular input and recovery of a
    valid ordering failed."""


class CircularOrdering:
    """A circular arrangement of all elements, canonicalized so that
    rotations and reversals of the same circle compare equal."""

    __slots__ = ("ground", "sequence", "_pos")

    def __init__(self, ground: GroundSet, sequence: Iterable[int]):
        seq = list(sequence)
        n = ground.n
        if sorted(seq) != list(range(n)):
            raise ValueError("sequence must be a permutation of all elements")
        start = seq.index(0)
        seq = seq[start:] + seq[:start]
        if n >= 3 and seq[1] > seq[-1]:
            seq = [0] + seq[:0:-1]
        self.ground = ground
        self.sequence = tuple(seq)
        self._pos = {e: i for i, e in enumerate(seq)}

    @property
    def n(self) -> int:
        return self.ground.n

    def position(self, element: int) -> int:
        return self._pos[element]

    def arc(self, i: int, j: int) -> tuple[int, ...]:
        """Elements at positions i..j inclusive, moving forward circularly."""
        n = self.n
        length = (j - i) % n + 1
        return tuple(self.sequence[(i + k) % n] for k in range(length))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CircularOrdering)
            and self.ground == other.ground
            and self.sequence == other.sequence
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.sequence))

    def __str__(self) -> str:
        labels = self.ground.labels
        return ",".join(labels[e] for e in self.sequence)

    def __repr__(self) -> str:
        return f"CircularOrdering({self})"


@dataclass(frozen=True)
class IntervalSplit:
    """One split of a circular ordering, keyed by the arc positions i..j
    (0-based, 0 <= i <= j <= n-2) of the side avoiding the last element."""

    ordering: CircularOrdering
    i: int
    j: int

    def __post_init__(self) -> None:
        if not 0 <= self.i <= self.j <= self.ordering.n - 2:
            raise ValueError(f"bad interval ({self.i},{self.j})")

    def to_split(self) -> Split:
        seq = self.ordering.sequence
        return Split(self.ordering.ground, seq[self.i : self.j + 1])


def all_interval_splits(theta: CircularOrdering) -> list[IntervalSplit]:
    """All C(n,2) interval splits of an ordering, lexicographic by (i, j)."""
    n = theta.n
    return [
        IntervalSplit(theta, i, j)
        for i in range(n - 1)
        for j in range(i, n - 1)
    ]


def maximum_circular_splits(theta: CircularOrdering) -> list[Split]:
    """The maximum circular split system fitting an ordering, as splits."""
    return [iv.to_split() for iv in all_interval_splits(theta)]


def fits_on_ordering(splits: Iterable[Split], theta: CircularOrdering) -> bool:
    """True when every split cuts the ordering into two arcs."""
    n = theta.n
    seq = theta.sequence
    for split in splits:
        if split.ground != theta.ground:
            raise ValueError("ground set mismatch")
        bits = split.bits
        transitions = 0
        prev = (bits >> seq[-1]) & 1
        for e in seq:
            cur = (bits >> e) & 1
            if cur != prev:
                transitions += 1
                prev = cur
        if transitions != 2:
            return False
    return True


def interval_weight_map(
    theta: CircularOrdering, system: WeightedSplitSystem
) -> dict[IntervalSplit, Fraction]:
    """Re-key a fitting weighted system by arc positions on the ordering."""
    if system.ground != theta.ground:
        raise ValueError("ground set mismatch")
    n = theta.n
    out: dict[IntervalSplit, Fraction] = {}
    for split, weight in system.items():
        side = [theta.position(e) for e in range(n) if split.separates(e, theta.sequence[-1])]
        side.sort()
        if not side or side[-1] - side[0] != len(side) - 1:
            raise ValueError(f"split {split} does not fit on the ordering")
        out[IntervalSplit(theta, side[0], side[-1])] = weight
    return out


def kalmanson_check(
    matrix: DistanceMatrix, theta: CircularOrdering
) -> tuple[int, int, int, int] | None:
    """First position quadruple of the ordering violating the circular
    quadruple condition, returned as elements, or None if all pass."""
    if matrix.ground != theta.ground:
        raise ValueError("ground set mismatch")
    rows = matrix.comparison_rows()
    seq = theta.sequence
    n = len(seq)
    for i in range(n):
        ei = seq[i]
        row_i = rows[ei]
        for j in range(i + 1, n):
            ej = seq[j]
            row_j = rows[ej]
            d_ij = row_i[ej]
            for k in range(j + 1, n):
                ek = seq[k]
                row_k = rows[ek]
                d_ik = row_i[ek]
                d_jk = row_j[ek]
                for l in range(k + 1, n):
                    el = seq[l]
                    rhs = d_ik + row_j[el]
                    if d_ij + row_k[el] > rhs or row_i[el] + d_jk > rhs:
                        return (ei, ej, ek, el)
    return None


def _quadruples_ok(rows: list[list[int]], seq: list[int]) -> bool:
    """Full quadruple-condition verification of one ordering.

    Only the instances over two disjoint edges of the circle are tested:
    for edges (a, a+1) and (b, b+1) the inequality

        D(e_a, e_b) + D(e_a+1, e_b+1) >= D(e_a, e_b+1) + D(e_a+1, e_b).

    Summing these along the two paths between a general quadruple's four
    positions telescopes into both of its inequalities, so the O(n^2)
    family is equivalent to checking every quadruple directly.
    """
    n = len(seq)
    for a in range(n):
        ea = seq[a]
        ea1 = seq[(a + 1) % n]
        row_a, row_a1 = rows[ea], rows[ea1]
        top = n if a else n - 1
        for b in range(a + 2, top):
            eb = seq[b]
            eb1 = seq[(b + 1) % n]
            if row_a[eb] + row_a1[eb1] < row_a[eb1] + row_a1[eb]:
                return False
    return True


def _new_edges_ok(rows: list[list[int]], seq: list[int], pz: int) -> bool:
    """Check the two circle edges created by inserting the element at
    position pz against every disjoint edge; used to prune the recovery
    search.  Edge-pair instances not involving the new edges are untouched
    by the insertion, so the partial circle keeps satisfying all of them."""
    k = len(seq)
    for first in (pz - 1, pz):
        x = seq[first]
        xn = seq[(first + 1) % k]
        row_x, row_xn = rows[x], rows[xn]
        for a in range(k):
            y = seq[a]
            yn = seq[(a + 1) % k]
            if y == x or y == xn or yn == x or yn == xn:
                continue
            if row_x[y] + row_xn[yn] < row_x[yn] + row_xn[y]:
                return False
    return True


def _insertion_positions(rows: list[list[int]], seq: list[int], z: int) -> list[int]:
    """Candidate insertion positions 1..len(seq), cheapest detour first."""
    length = len(seq)
    scored = []
    for pos in range(1, length + 1):
        prev_el = seq[pos - 1]
        next_el = seq[pos % length]
        detour = rows[prev_el][z] + rows[z][next_el] - rows[prev_el][next_el]
        scored.append((detour, pos))
    scored.sort()
    return [pos for _, pos in scored]


def _dfs_insert(rows: list[list[int]], seq: list[int], z: int, n: int) -> list[int] | None:
    if z == n:
        return list(seq)
    for pos in _insertion_positions(rows, seq, z):
        seq.insert(pos, z)
        if _new_edges_ok(rows, seq, pos):
            found = _dfs_insert(rows, seq, z + 1, n)
            if found is not None:
                return found
        seq.pop(pos)
    return None


def recover_circular_ordering(matrix: DistanceMatrix) -> CircularOrdering | None:
    """An ordering on which the matrix passes the quadruple condition, or
    None when no ordering works.

    Strategy: greedy cheapest insertion first, then a complete backtracking
    search over insertion positions (element 0 pinned first, which is safe
    because the condition is rotation and reversal invariant).  Whatever the
    search produces is verified in full before being returned, so the result
    never depends on the heuristics.  With zero weights the ordering need
    not be unique; any valid one may be returned.
    """
    n = matrix.n
    if n <= 3:
        return CircularOrdering(matrix.ground, range(n))
    rows = matrix.comparison_rows()
    seq = [0, 1, 2]
    for z in range(3, n):
        seq.insert(_insertion_positions(rows, seq, z)[0], z)
    if _quadruples_ok(rows, seq):
        return CircularOrdering(matrix.ground, seq)
    found = _dfs_insert(rows, [0, 1, 2], 3, n)
    if found is not None and _quadruples_ok(rows, found):
        return CircularOrdering(matrix.ground, found)
    return None


def is_circular_split_system(
    splits: WeightedSplitSystem | Iterable[Split],
) -> CircularOrdering | None:
    """An ordering all splits fit on, or None.

    Works through distances: the unit weighting of a circular system
    generates a circular distance whose valid orderings are exactly the
    orderings the system fits on, and the fit is re-checked explicitly.
    """
    if isinstance(splits, WeightedSplitSystem):
        ground = splits.ground
        split_list = list(splits.splits)
    else:
        split_list = sorted(set(splits), key=lambda s: s.bits)
        if not split_list:
            raise ValueError("cannot infer the ground set of an empty collection")
        ground = split_list[0].ground
    if not split_list:
        return CircularOrdering(ground, range(ground.n))
    system = WeightedSplitSystem.unit(ground, split_list)
    theta = recover_circular_ordering(generate_distance(system))
    if theta is not None and fits_on_ordering(split_list, theta):
        return theta
    return None


def _evaluate_table(table: list[list], n: int) -> list[list]:
    """Pairwise distances by arc position from a table of interval weights
    (table[i][j] covers positions i..j, 0 <= i <= j <= n-2).  Returns the
    upper triangle; runs on ints or Fractions alike."""
    # ending_at[a]: total weight of intervals [i..a]; starting_at[a]: of [a..j]
    ending_at = [0] * (n - 1)
    starting_at = [0] * (n - 1)
    for a in range(n - 1):
        acc = 0
        for i in range(a + 1):
            acc += table[i][a]
        ending_at[a] = acc
        acc = 0
        for j in range(a, n - 1):
            acc += table[a][j]
        starting_at[a] = acc
    dist = [[0] * n for _ in range(n)]
    for a in range(n - 1):
        value = ending_at[a]
        if a + 1 <= n - 2:
            value = value + starting_at[a + 1]
        dist[a][a + 1] = value
    for gap in range(2, n):
        for a in range(n - gap):
            b = a + gap
            dist[a][b] = (
                dist[a + 1][b]
                + dist[a][b - 1]
                - dist[a + 1][b - 1]
                - 2 * table[a + 1][b - 1]
            )
    return dist


def evaluate_circular_distance(
    theta: CircularOrdering, weights: Mapping[IntervalSplit, object]
) -> DistanceMatrix:
    """Distance generated by weighted interval splits of one ordering,
    computed in O(n^2) by a boundary recurrence instead of touching every
    split for every pair."""
    n = theta.n
    table = [[0] * max(n - 1, 1) for _ in range(max(n - 1, 1))]
    for iv, raw in weights.items():
        if iv.ordering != theta:
            raise ValueError("interval split belongs to a different ordering")
        w = as_rational(raw)
        if w < 0:
            raise ValueError("negative weight")
        table[iv.i][iv.j] += w
    if n == 1:
        return DistanceMatrix(theta.ground, [[0]])
    dist = _evaluate_table(table, n)
    seq = theta.sequence
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        ea = seq[a]
        for b in range(a + 1, n):
            eb = seq[b]
            out[ea][eb] = out[eb][ea] = dist[a][b]
    return DistanceMatrix(theta.ground, out)


_USE_BINARY_SEARCH = True


def _locate_true_arc(
    rows: list[list[int]], seq: tuple[int, ...], pos: dict[int, int], u: int, v: int
) -> tuple[int, int]:
    """Positions (start, end) of the circular arc {z : D(u,z) < D(v,z)},
    which contains u and not v.  Binary search along both u-to-v paths; a
    full scan takes over when the boundary probes look inconsistent."""
    n = len(seq)
    row_u, row_v = rows[u], rows[v]
    pu, pv = pos[u], pos[v]

    if _USE_BINARY_SEARCH:
        cw_len = (pv - pu) % n
        lo, hi = 0, cw_len
        while hi - lo > 1:
            mid = (lo + hi) // 2
            e = seq[(pu + mid) % n]
            if row_u[e] < row_v[e]:
                lo = mid
            else:
                hi = mid
        cw_last = lo
        ccw_len = (pu - pv) % n
        lo, hi = 0, ccw_len
        while hi - lo > 1:
            mid = (lo + hi) // 2
            e = seq[(pu - mid) % n]
            if row_u[e] < row_v[e]:
                lo = mid
            else:
                hi = mid
        ccw_last = lo
        start = (pu - ccw_last) % n
        end = (pu + cw_last) % n
        e_start, e_end = seq[start], seq[end]
        e_before, e_after = seq[(start - 1) % n], seq[(end + 1) % n]
        if (
            row_u[e_start] < row_v[e_start]
            and row_u[e_end] < row_v[e_end]
            and not row_u[e_before] < row_v[e_before]
            and not row_u[e_after] < row_v[e_after]
        ):
            return start, end

    members = [p for p in range(n) if row_u[seq[p]] < row_v[seq[p]]]
    breaks = [
        p for p in members if (p - 1) % n not in members
    ]
    if len(breaks) != 1:
        raise NotCircularError(
            "strict-comparison side is not an arc; input is not circular"
        )
    start = breaks[0]
    return start, (start + len(members) - 1) % n


def order_distance_circular(matrix: DistanceMatrix, p: object = 2) -> DistanceMatrix:
    """Order distance at parameters (p, p/2) for a circular input distance.

    Recovers and verifies an ordering, locates every strict-comparison arc
    by binary search, and evaluates the weighted arc system with the O(n^2)
    recurrence.  Raises NotCircularError when no ordering passes
    verification or when a zero-distance pair shows the input cannot come
    from non-negative arc weights.
    """
    p = as_rational(p)
    if p <= 0:
        raise ValueError(f"p must be positive, got {p}")
    theta = recover_circular_ordering(matrix)
    if theta is None:
        raise NotCircularError("no circular ordering fits this distance")
    n = matrix.n
    seq = theta.sequence
    pos = {e: i for i, e in enumerate(seq)}
    rows = matrix.comparison_rows()
    counts: dict[tuple[int, int], int] = {}
    for u in range(n):
        row_u = rows[u]
        for v in range(n):
            if u == v:
                continue
            if row_u[v] == 0:
                # at distance zero the two comparison rows must agree, else
                # no non-negative arc weighting can generate this input
                if u < v and rows[v] != row_u:
                    raise NotCircularError(
                        "elements at distance zero compare differently"
                    )
                continue
            start, end = _locate_true_arc(rows, seq, pos, u, v)
            if start <= end and end <= n - 2:
                key = (start, end)
            else:
                key = ((end + 1) % n, (start - 1) % n)
            counts[key] = counts.get(key, 0) + 1
    table = [[0] * (n - 1) for _ in range(n - 1)]
    for (i, j), c in counts.items():
        table[i][j] = c
    dist = _evaluate_table(table, n)
    half_p = p / 2
    out = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        ea = seq[a]
        for b in range(a + 1, n):
            eb = seq[b]
            out[ea][eb] = out[eb][ea] = half_p * dist[a][b]
    return DistanceMatrix(theta.ground, out)
