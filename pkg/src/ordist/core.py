"""Core types for finite distance matrices and weighted split systems.

All arithmetic is exact: values are `fractions.Fraction` throughout, floats
are rejected at the boundary.  Splits are stored canonically (the side not
containing element 0, as an int bitmask), so `A|B` and `B|A` compare equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "GroundSet",
    "Split",
    "DistanceMatrix",
    "WeightedSplitSystem",
    "OrderParams",
    "split_metric",
    "generate_distance",
    "restrict_split_system",
]

_LABEL_FORBIDDEN = set(",|:#")


def as_rational(value: int | str | Fraction) -> Fraction:
    """Coerce an exact value to Fraction.  Floats are refused on purpose:
    they would silently contaminate exact computations."""
    if isinstance(value, float):
        raise ValueError(f"refusing float {value!r}; pass int, str or Fraction")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ValueError(f"cannot interpret {value!r} as an exact rational")


class GroundSet:
    """An ordered set of distinct element labels.

    Elements are addressed by index 0..n-1 in all computations; labels exist
    for I/O.  Labels must be non-empty, contain no whitespace and none of the
    format separator characters , | : #.
    """

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not labels:
            raise ValueError("ground set needs at least one element")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"bad label {lab!r}")
            if any(ch.isspace() for ch in lab) or set(lab) & _LABEL_FORBIDDEN:
                raise ValueError(f"label {lab!r} contains a separator character")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown label {label!r}") from None

    def restricted(self, keep: Iterable[int]) -> "GroundSet":
        """Sub ground set on the given element indices, in ground order."""
        keep = sorted(set(keep))
        if not keep or keep[0] < 0 or keep[-1] >= self.n:
            raise ValueError("restriction indices out of range or empty")
        return GroundSet(self.labels[i] for i in keep)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({','.join(self.labels)})"


def _check_same_ground(a: GroundSet, b: GroundSet) -> None:
    if a != b:
        raise ValueError("ground set mismatch")


class Split:
    """A bipartition A|B of a ground set with both sides non-empty.

    Canonical storage: the side that does not contain element 0, as a
    bitmask.  Constructing from either side yields the same object key, so
    splits can be dict keys and set members safely.
    """

    __slots__ = ("ground", "bits")

    def __init__(self, ground: GroundSet, side: Iterable[int | str]):
        n = ground.n
        if n < 2:
            raise ValueError("splits need a ground set with at least 2 elements")
        mask = 0
        for item in side:
            i = ground.index(item) if isinstance(item, str) else item
            if not 0 <= i < n:
                raise ValueError(f"element index {i} out of range")
            mask |= 1 << i
        full = (1 << n) - 1
        if mask == 0 or mask == full:
            raise ValueError("both sides of a split must be non-empty")
        self.ground = ground
        self.bits = (full ^ mask) if (mask & 1) else mask

    @classmethod
    def from_bits(cls, ground: GroundSet, bits: int) -> "Split":
        split = object.__new__(cls)
        n = ground.n
        full = (1 << n) - 1
        if n < 2 or bits <= 0 or bits >= full:
            raise ValueError("invalid split bitmask")
        split.ground = ground
        split.bits = (full ^ bits) if (bits & 1) else bits
        return split

    def separates(self, x: int, y: int) -> bool:
        return bool(((self.bits >> x) ^ (self.bits >> y)) & 1)

    def side_of(self, x: int) -> frozenset[int]:
        """The part containing element x, as a set of indices."""
        with0, without0 = self.parts()
        return without0 if (self.bits >> x) & 1 else with0

    def parts(self) -> tuple[frozenset[int], frozenset[int]]:
        """Both parts as index sets: (part containing element 0, the other)."""
        n = self.ground.n
        without0 = frozenset(i for i in range(n) if (self.bits >> i) & 1)
        with0 = frozenset(range(n)) - without0
        return with0, without0

    def index_lists(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Both parts as sorted index tuples, cheap form for inner loops."""
        n = self.ground.n
        a = tuple(i for i in range(n) if not (self.bits >> i) & 1)
        b = tuple(i for i in range(n) if (self.bits >> i) & 1)
        return a, b

    @property
    def min_side_size(self) -> int:
        k = self.bits.bit_count()
        return min(k, self.ground.n - k)

    def restricted(self, keep: Iterable[int]) -> "Split | None":
        """The induced split on a sub ground set, or None if a side empties."""
        keep = sorted(set(keep))
        sub = self.ground.restricted(keep)
        mask = 0
        for new_i, old_i in enumerate(keep):
            if (self.bits >> old_i) & 1:
                mask |= 1 << new_i
        if mask == 0 or mask == (1 << len(keep)) - 1:
            return None
        return Split.from_bits(sub, mask)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Split)
            and self.bits == other.bits
            and self.ground == other.ground
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.bits))

    def __str__(self) -> str:
        with0, without0 = self.parts()
        labels = self.ground.labels
        left = ",".join(labels[i] for i in sorted(with0))
        right = ",".join(labels[i] for i in sorted(without0))
        return f"{left} | {right}"

    def __repr__(self) -> str:
        return f"Split({self})"


class DistanceMatrix:
    """A symmetric matrix of exact non-negative values with zero diagonal.

    No triangle inequality is assumed; any symmetric dissimilarity matrix
    fits.  Entries are Fractions and the object is immutable by convention.
    """

    __slots__ = ("ground", "entries", "_cmp_rows")

    def __init__(self, ground: GroundSet, entries: Iterable[Iterable[object]]):
        n = ground.n
        rows = tuple(tuple(as_rational(v) for v in row) for row in entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected a {n}x{n} matrix")
        for i in range(n):
            if rows[i][i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) must be 0")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
                if rows[i][j] < 0:
                    raise ValueError(f"negative entry at ({i},{j})")
        self.ground = ground
        self.entries = rows
        self._cmp_rows = None

    @property
    def n(self) -> int:
        return self.ground.n

    def __getitem__(self, pair: tuple[int, int]) -> Fraction:
        i, j = pair
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def by_label(self, a: str, b: str) -> Fraction:
        return self.entries[self.ground.index(a)][self.ground.index(b)]

    def comparison_rows(self) -> list[list[int]]:
        """Rows rescaled to integers by the common denominator.

        Positive rescaling preserves every <, =, > relation between entries,
        so these rows are safe for comparison-only loops and much faster
        than Fraction comparisons.
        """
        if self._cmp_rows is None:
            scale = lcm(*(v.denominator for row in self.entries for v in row))
            self._cmp_rows = [
                [int(v * scale) for v in row] for row in self.entries
            ]
        return self._cmp_rows

    def restricted(self, keep: Iterable[int]) -> "DistanceMatrix":
        keep = sorted(set(keep))
        sub = self.ground.restricted(keep)
        rows = [[self.entries[i][j] for j in keep] for i in keep]
        return DistanceMatrix(sub, rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DistanceMatrix)
            and self.ground == other.ground
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n})"


class WeightedSplitSystem:
    """A set of distinct splits with non-negative rational weights.

    Iteration order over `.splits` is deterministic (sorted by the canonical
    bitmask), which keeps every downstream report and random weighting
    reproducible.
    """

    __slots__ = ("ground", "_weights", "_sorted")

    def __init__(
        self,
        ground: GroundSet,
        weights: Mapping[Split, object] | Iterable[tuple[Split, object]],
    ):
        items = weights.items() if isinstance(weights, Mapping) else weights
        table: dict[Split, Fraction] = {}
        for split, w in items:
            _check_same_ground(ground, split.ground)
            w = as_rational(w)
            if w < 0:
                raise ValueError(f"negative weight {w} on {split}")
            if split in table:
                raise ValueError(f"duplicate split {split}")
            table[split] = w
        self.ground = ground
        self._weights = table
        self._sorted = tuple(sorted(table, key=lambda s: s.bits))

    @classmethod
    def unit(cls, ground: GroundSet, splits: Iterable[Split]) -> "WeightedSplitSystem":
        return cls(ground, [(s, 1) for s in splits])

    @property
    def splits(self) -> tuple[Split, ...]:
        return self._sorted

    def weight(self, split: Split) -> Fraction:
        return self._weights[split]

    def items(self) -> Iterator[tuple[Split, Fraction]]:
        for s in self._sorted:
            yield s, self._weights[s]

    def split_set(self) -> frozenset[Split]:
        return frozenset(self._weights)

    def reweighted(self, weights: Mapping[Split, object]) -> "WeightedSplitSystem":
        """Same splits, new weights (missing splits get weight 0)."""
        return WeightedSplitSystem(
            self.ground, [(s, weights.get(s, 0)) for s in self._sorted]
        )

    def __len__(self) -> int:
        return len(self._weights)

    def __contains__(self, split: Split) -> bool:
        return split in self._weights

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightedSplitSystem)
            and self.ground == other.ground
            and self._weights == other._weights
        )

    def __repr__(self) -> str:
        return f"WeightedSplitSystem({len(self)} splits on n={self.ground.n})"


class OrderParams:
    """Order distance parameters: p > 0 and q >= p/2, both rational."""

    __slots__ = ("p", "q")

    def __init__(self, p: int | str | Fraction, q: int | str | Fraction):
        p = as_rational(p)
        q = as_rational(q)
        if p <= 0:
            raise ValueError(f"p must be positive, got {p}")
        if q < p / 2:
            raise ValueError(f"q must be at least p/2, got p={p}, q={q}")
        self.p = p
        self.q = q

    @property
    def half_p(self) -> Fraction:
        return self.p / 2

    @property
    def e_coeff(self) -> Fraction:
        """Coefficient of the equidistance terms, q - p/2 (0 when q = p/2)."""
        return self.q - self.p / 2

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, OrderParams)
            and self.p == other.p
            and self.q == other.q
        )

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __repr__(self) -> str:
        return f"OrderParams(p={self.p}, q={self.q})"


def split_metric(split: Split) -> DistanceMatrix:
    """The 0/1 distance matrix of one split: 1 exactly for separated pairs."""
    n = split.ground.n
    one = Fraction(1)
    zero = Fraction(0)
    rows = [
        [one if split.separates(i, j) else zero for j in range(n)]
        for i in range(n)
    ]
    return DistanceMatrix(split.ground, rows)


def generate_distance(system: WeightedSplitSystem) -> DistanceMatrix:
    """The distance generated by a weighted split system:
    D(x, y) = sum of weights of the splits separating x and y.
    """
    n = system.ground.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for split, w in system.items():
        if w == 0:
            continue
        a_side, b_side = split.index_lists()
        for i in a_side:
            row = rows[i]
            for j in b_side:
                row[j] += w
    for i in range(n):
        for j in range(i + 1, n):
            rows[j][i] = rows[i][j] = rows[i][j] + rows[j][i]
    return DistanceMatrix(system.ground, rows)


def restrict_split_system(
    splits: Iterable[Split], keep: Iterable[int]
) -> frozenset[Split]:
    """Induced splits on a subset of elements.

    Splits whose side empties vanish and coinciding restrictions merge, so
    the result can be smaller than the input; it can even be empty.
    """
    keep = sorted(set(keep))
    out = set()
    for s in splits:
        r = s.restricted(keep)
        if r is not None:
            out.add(r)
    return frozenset(out)
