"""Linearly independent, flat and orderly split systems.

Each split A|B has an incidence vector over unordered element pairs (1 when
the split separates the pair), which is also the vector of its split metric.
All linear algebra here runs over exact rationals: split_rank and
express_in_basis answer span questions with no tolerance knobs, which the
orderliness probe below depends on.

A split system is orderly (at p = 2, q = 1) if the order distance of every
distance it generates is again generated by the system with non-negative
weights.  orderly_test searches for a violating weighting: first the
two-split weightings supported on incompatible pairs, whose order distances
have known closed form, then seeded random weightings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Union

from .compat import is_compatible_pair
from .core import (
    DistanceMatrix,
    GroundSet,
    OrderParams,
    Split,
    WeightedSplitSystem,
    generate_distance,
    restrict_split_system,
)
from .order import order_distance_eq1

__all__ = [
    "DependentBasisError",
    "split_rank",
    "is_linearly_independent",
    "express_in_basis",
    "is_closed",
    "pairwise_separation_check",
    "is_maximum_flat",
    "AllowablePair",
    "allowable_splits",
    "CounterexampleFound",
    "NoCounterexampleFound",
    "OrderlyVerdict",
    "orderly_test",
    "flat_fixture",
    "FLAT_FIXTURE_NAMES",
]


class DependentBasisError(ValueError):
    """Raised when an operation needs linearly independent splits but the
    given ones are dependent."""


def _split_list(splits: WeightedSplitSystem | Iterable[Split]) -> tuple[GroundSet, list[Split]]:
    if isinstance(splits, WeightedSplitSystem):
        return splits.ground, list(splits.splits)
    out = sorted(set(splits), key=lambda s: s.bits)
    if not out:
        raise ValueError("cannot infer the ground set of an empty collection")
    ground = out[0].ground
    for s in out:
        if s.ground != ground:
            raise ValueError("splits live on different ground sets")
    return ground, out


class _ExactSolver:
    """Reduced row echelon form of the incidence rows of a fixed split
    sequence, with multipliers, so many targets can be expressed against
    the same splits without re-eliminating."""

    def __init__(self, ground: GroundSet, splits: list[Split]):
        self.ground = ground
        self.splits = list(splits)
        self.pairs = list(combinations(range(ground.n), 2))
        k = len(self.splits)
        one, zero = Fraction(1), Fraction(0)
        rows: list[list[Fraction]] = []
        mults: list[list[Fraction]] = []
        for idx, split in enumerate(self.splits):
            if split.ground != ground:
                raise ValueError("splits live on different ground sets")
            rows.append([one if split.separates(i, j) else zero for i, j in self.pairs])
            mults.append([one if t == idx else zero for t in range(k)])
        self.pivot_cols: list[int] = []
        rank = 0
        for col in range(len(self.pairs)):
            pivot = next((r for r in range(rank, k) if rows[r][col] != 0), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            mults[rank], mults[pivot] = mults[pivot], mults[rank]
            inv = 1 / rows[rank][col]
            if inv != 1:
                rows[rank] = [x * inv for x in rows[rank]]
                mults[rank] = [x * inv for x in mults[rank]]
            for r in range(k):
                if r != rank and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
                    mults[r] = [a - f * b for a, b in zip(mults[r], mults[rank])]
            self.pivot_cols.append(col)
            rank += 1
            if rank == k:
                break
        self.rank = rank
        self._rows = rows
        self._mults = mults

    @property
    def is_independent(self) -> bool:
        return self.rank == len(self.splits)

    def vectorize(self, matrix: DistanceMatrix) -> list[Fraction]:
        if matrix.ground != self.ground:
            raise ValueError("ground set mismatch")
        return [matrix[i, j] for i, j in self.pairs]

    def express(self, values: list[Fraction]) -> dict[Split, Fraction] | None:
        """Coefficients writing the pair vector as a combination of the
        split rows, or None when it leaves their span.  Unique because the
        rows are required to be independent."""
        if not self.is_independent:
            raise DependentBasisError("splits are linearly dependent")
        coeffs = [values[c] for c in self.pivot_cols]
        for col in range(len(self.pairs)):
            total = sum((c * row[col] for c, row in zip(coeffs, self._rows)), Fraction(0))
            if total != values[col]:
                return None
        k = len(self.splits)
        alpha = [
            sum((c * m[t] for c, m in zip(coeffs, self._mults)), Fraction(0))
            for t in range(k)
        ]
        return dict(zip(self.splits, alpha))


def split_rank(splits: WeightedSplitSystem | Iterable[Split]) -> int:
    """Rank over the rationals of the split incidence vectors."""
    ground, split_list = _split_list(splits)
    return _ExactSolver(ground, split_list).rank


def is_linearly_independent(splits: WeightedSplitSystem | Iterable[Split]) -> bool:
    ground, split_list = _split_list(splits)
    return _ExactSolver(ground, split_list).is_independent


def express_in_basis(
    matrix: DistanceMatrix, splits: WeightedSplitSystem | Iterable[Split]
) -> dict[Split, Fraction] | None:
    """The unique weights combining the split metrics into the given
    distance, or None when the distance is outside their span.

    Raises DependentBasisError when the splits are dependent, because the
    weights would not be unique.  Weights may be negative; callers that
    need a non-negative weighting must check.
    """
    ground, split_list = _split_list(splits)
    solver = _ExactSolver(ground, split_list)
    if not solver.is_independent:
        raise DependentBasisError("splits are linearly dependent")
    return solver.express(solver.vectorize(matrix))


def _corner_masks(ground: GroundSet, s1: Split, s2: Split) -> tuple[int, int, int, int]:
    full = (1 << ground.n) - 1
    a1, b1 = s1.bits, full ^ s1.bits
    a2, b2 = s2.bits, full ^ s2.bits
    return a1 & a2, b1 & a2, a1 & b2, b1 & b2


def is_closed(splits: WeightedSplitSystem | Iterable[Split]) -> tuple[Split, Split] | None:
    """First incompatible pair violating closedness, or None.

    For incompatible A1|B1 and A2|B2 the four corner sets A1&A2, B1&A2,
    A1&B2, B1&B2 are all non-empty.  The pair is fine when at least one
    of these holds, writing ni for the corner sizes (n1, n4 diagonal):
      (a) all four corner splits (corner vs rest) belong to the system;
      (b) n1*n4 == n2*n3 and the middle split (diagonal corners vs
          anti-diagonal corners) belongs to it;
      (c) n1*n4 > n2*n3 and the middle split plus both diagonal corner
          splits belong to it;
      (d) n1*n4 < n2*n3 and the middle split plus both anti-diagonal
          corner splits belong to it.
    A system without incompatible pairs is closed by default.
    """
    ground, split_list = _split_list(splits)
    have = set(split_list)

    def _in(mask: int) -> bool:
        return Split.from_bits(ground, mask) in have

    for s1, s2 in combinations(split_list, 2):
        if is_compatible_pair(s1, s2):
            continue
        m11, m21, m12, m22 = _corner_masks(ground, s1, s2)
        n1, n2, n3, n4 = m11.bit_count(), m21.bit_count(), m12.bit_count(), m22.bit_count()
        if _in(m11) and _in(m21) and _in(m12) and _in(m22):
            continue
        diag, anti = n1 * n4, n2 * n3
        if not _in(m11 | m22):
            return (s1, s2)
        if diag == anti:
            continue
        if diag > anti and _in(m11) and _in(m22):
            continue
        if diag < anti and _in(m21) and _in(m12):
            continue
        return (s1, s2)
    return None


def _pairsep_ok_for(
    ground: GroundSet, have: set[Split], x: int, y: int, a_mask: int
) -> bool:
    """Check one candidate disjoint pair (A, B) partitioning everything
    but x and y; a_mask is A, the rest (minus x, y) is B."""
    full = (1 << ground.n) - 1
    bx, by = 1 << x, 1 << y
    b_mask = full ^ a_mask ^ bx ^ by
    required = [a_mask | bx, a_mask | by]
    if b_mask:
        required.append(a_mask | bx | by)
    if a_mask:
        required.append(a_mask)
    for mask in required:
        if Split.from_bits(ground, mask) not in have:
            return False
    return True


def pairwise_separation_check(
    splits: WeightedSplitSystem | Iterable[Split], exhaustive: bool = False
) -> tuple[int, int] | None:
    """First element pair with no separating frame in the system, or None.

    A pair x, y is separated when some disjoint pair (A, B) covering the
    remaining elements puts all four of A+x+y|B, A+x|B+y, A+y|B+x and
    A|B+x+y into the system, skipping the two with an empty side.  Only
    candidates read off the system itself need checking: a working (A, B)
    makes A+x|B+y a split of the system, which pins (A, B) down.  The
    exhaustive flag re-checks with every subset of the other elements
    instead (small ground sets only) and exists as a cross-check.
    """
    ground, split_list = _split_list(splits)
    n = ground.n
    if exhaustive and n > 16:
        raise ValueError("exhaustive search is limited to 16 elements")
    have = set(split_list)
    for x in range(n):
        bx = 1 << x
        for y in range(x + 1, n):
            by = 1 << y
            found = False
            if exhaustive:
                others = [e for e in range(n) if e != x and e != y]
                for picks in range(1 << len(others)):
                    a_mask = 0
                    for t, e in enumerate(others):
                        if picks >> t & 1:
                            a_mask |= 1 << e
                    if _pairsep_ok_for(ground, have, x, y, a_mask):
                        found = True
                        break
            else:
                for s in split_list:
                    if not s.separates(x, y):
                        continue
                    x_side = s.bits if s.bits >> x & 1 else ((1 << n) - 1) ^ s.bits
                    a_mask = x_side ^ bx
                    if _pairsep_ok_for(ground, have, x, y, a_mask):
                        found = True
                        break
            if not found:
                return (x, y)
    return None


def is_maximum_flat(splits: WeightedSplitSystem | Iterable[Split]) -> bool:
    """Whether the splits form a maximum flat split system.

    Requires maximum size C(n,2) with independent incidence vectors, then
    decides flatness twice: every 4-element restriction must have exactly
    6 splits, and the pairwise separation property must hold.  The two
    routes are equivalent for maximum independent systems and both are
    computed; disagreement would mean a bug and raises.
    """
    ground, split_list = _split_list(splits)
    n = ground.n
    m = n * (n - 1) // 2
    if len(split_list) != m:
        return False
    solver = _ExactSolver(ground, split_list)
    if not solver.is_independent:
        return False
    by_restriction = all(
        len(restrict_split_system(split_list, quad)) == 6
        for quad in combinations(range(n), 4)
    )
    by_separation = pairwise_separation_check(split_list) is None
    if by_restriction != by_separation:
        raise AssertionError(
            "flatness routes disagree: "
            f"restrictions say {by_restriction}, separation says {by_separation}"
        )
    return by_restriction


@dataclass(frozen=True)
class AllowablePair:
    """An ordering together with a sequence of C(n,2) adjacent swaps, given
    as 0-based positions, under which every element pair swaps exactly
    once (so the final ordering is the reversal)."""

    ground: GroundSet
    pi: tuple[int, ...]
    kappa: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.ground.n
        object.__setattr__(self, "pi", tuple(self.pi))
        object.__setattr__(self, "kappa", tuple(self.kappa))
        if sorted(self.pi) != list(range(n)):
            raise ValueError("pi must be a permutation of all elements")
        if len(self.kappa) != n * (n - 1) // 2:
            raise ValueError("kappa must contain one swap per element pair")
        cur = list(self.pi)
        swapped: set[frozenset[int]] = set()
        for k in self.kappa:
            if not 0 <= k <= n - 2:
                raise ValueError(f"swap position {k} out of range")
            pair = frozenset((cur[k], cur[k + 1]))
            if pair in swapped:
                u, v = sorted(pair)
                raise ValueError(f"elements {u} and {v} swap twice")
            swapped.add(pair)
            cur[k], cur[k + 1] = cur[k + 1], cur[k]

    def orderings(self) -> list[tuple[int, ...]]:
        """The orderings visited, from pi to its reversal."""
        cur = list(self.pi)
        out = [tuple(cur)]
        for k in self.kappa:
            cur[k], cur[k + 1] = cur[k + 1], cur[k]
            out.append(tuple(cur))
        return out

    def splits(self) -> frozenset[Split]:
        cur = list(self.pi)
        out = set()
        for k in self.kappa:
            out.add(Split(self.ground, cur[: k + 1]))
            cur[k], cur[k + 1] = cur[k + 1], cur[k]
        assert len(out) == len(self.kappa), "swap splits must be distinct"
        return frozenset(out)


def allowable_splits(pair: AllowablePair) -> frozenset[Split]:
    """The maximum flat split system generated by an allowable pair: the
    prefix split taken just before each swap."""
    return pair.splits()


@dataclass(frozen=True)
class CounterexampleFound:
    """A weighting whose order distance the system cannot re-generate with
    non-negative weights.  expression is None when the order distance
    leaves the span; otherwise negative_split names a forced negative."""

    weighting: dict
    expression: dict | None
    negative_split: Split | None
    phase: int
    trial: int | None = None

    @property
    def is_counterexample(self) -> bool:
        return True


@dataclass(frozen=True)
class NoCounterexampleFound:
    pair_probes: int
    trials: int

    @property
    def is_counterexample(self) -> bool:
        return False


OrderlyVerdict = Union[CounterexampleFound, NoCounterexampleFound]


def orderly_test(
    splits: WeightedSplitSystem | Iterable[Split],
    trials: int = 200,
    seed: int = 0,
) -> OrderlyVerdict:
    """Search for a weighting violating orderliness at p = 2, q = 1.

    Phase 1 tries weight 2 on each incompatible pair of splits (zero
    elsewhere); a closedness violation always shows up here.  Phase 2
    tries `trials` seeded random integer weightings.  Requires linear
    independence so that expressions are unique; a verdict of
    NoCounterexampleFound is evidence, not proof.
    """
    ground, split_list = _split_list(splits)
    solver = _ExactSolver(ground, split_list)
    if not solver.is_independent:
        raise DependentBasisError("orderly test requires linearly independent splits")
    params = OrderParams(2, 1)
    zero = Fraction(0)

    def probe(weights: dict[Split, Fraction], phase: int, trial: int | None) -> CounterexampleFound | None:
        system = WeightedSplitSystem(ground, weights)
        order_values = order_distance_eq1(generate_distance(system), params)
        expr = solver.express(solver.vectorize(order_values))
        if expr is None:
            return CounterexampleFound(dict(weights), None, None, phase, trial)
        for s in split_list:
            if expr[s] < 0:
                return CounterexampleFound(dict(weights), expr, s, phase, trial)
        return None

    pair_probes = 0
    for s1, s2 in combinations(split_list, 2):
        if is_compatible_pair(s1, s2):
            continue
        pair_probes += 1
        weights = {s: zero for s in split_list}
        weights[s1] = weights[s2] = Fraction(2)
        hit = probe(weights, 1, None)
        if hit is not None:
            return hit
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        weights = {s: Fraction(rng.randint(0, 20)) for s in split_list}
        hit = probe(weights, 2, trial)
        if hit is not None:
            return hit
    return NoCounterexampleFound(pair_probes, trials)


def _fixture(side_lists: list[str]) -> WeightedSplitSystem:
    ground = GroundSet(("a", "b", "c", "d", "e"))
    return WeightedSplitSystem.unit(
        ground, [Split(ground, list(sides)) for sides in side_lists]
    )


FLAT_FIXTURE_NAMES = ("S1_5", "S2_5")


def flat_fixture(name: str) -> WeightedSplitSystem:
    """The two non-circular maximum flat split systems on five elements
    (every other one is isomorphic to one of them), unit weighted."""
    if name == "S1_5":
        return _fixture(["a", "b", "c", "d", "ab", "bc", "cd", "ad", "ae", "be"])
    if name == "S2_5":
        return _fixture(["a", "b", "c", "ab", "bc", "cd", "ad", "ac", "ae", "be"])
    raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FLAT_FIXTURE_NAMES)}")
