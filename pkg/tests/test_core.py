from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordist import (
    DistanceMatrix,
    GroundSet,
    OrderParams,
    Split,
    WeightedSplitSystem,
    as_rational,
    generate_distance,
    index_ground,
    restrict_split_system,
    split_metric,
)
from strategies import distance_matrices, rationals, split_systems


def test_as_rational_accepts_exact_forms():
    assert as_rational(3) == 3
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational(Fraction(1, 2)) == Fraction(1, 2)


def test_as_rational_refuses_floats():
    with pytest.raises(ValueError):
        as_rational(0.5)


def test_ground_set_rejects_bad_labels():
    for labels in [(), ("a", "a"), ("a", "b c"), ("a", "x|y"), ("a", "")]:
        with pytest.raises(ValueError):
            GroundSet(labels)


def test_ground_set_lookup_and_restriction():
    g = GroundSet("abcd")
    assert g.index("c") == 2
    assert g.restricted([1, 3]).labels == ("b", "d")
    with pytest.raises(ValueError):
        g.index("z")
    with pytest.raises(ValueError):
        g.restricted([5])


def test_split_same_object_from_either_side():
    g = GroundSet("abcde")
    assert Split(g, "ab") == Split(g, "cde")
    assert hash(Split(g, "ab")) == hash(Split(g, "cde"))
    assert str(Split(g, "cde")) == "a,b | c,d,e"


def test_split_rejects_degenerate_sides():
    g = GroundSet("abc")
    with pytest.raises(ValueError):
        Split(g, "")
    with pytest.raises(ValueError):
        Split(g, "abc")
    with pytest.raises(ValueError):
        Split(GroundSet("a"), "a")


def test_split_separates_matches_parts():
    g = index_ground(5)
    s = Split(g, [1, 3])
    with0, without0 = s.parts()
    assert without0 == frozenset({1, 3})
    assert s.separates(1, 0) and s.separates(3, 2)
    assert not s.separates(1, 3) and not s.separates(0, 4)
    assert s.side_of(3) == frozenset({1, 3})
    assert s.min_side_size == 2


@given(st.integers(2, 7), st.data())
def test_split_from_bits_round_trip(n, data):
    g = index_ground(n)
    mask = data.draw(st.integers(1, (1 << n) - 2))
    s = Split(g, [i for i in range(n) if mask >> i & 1])
    assert Split.from_bits(g, mask) == s
    assert Split.from_bits(g, ((1 << n) - 1) ^ mask) == s


def test_split_restriction_drops_empty_sides():
    g = GroundSet("abcde")
    s = Split(g, "ab")
    assert s.restricted([0, 1, 2]) == Split(GroundSet("abc"), "ab")
    assert s.restricted([2, 3, 4]) is None


def test_distance_matrix_validation():
    g = GroundSet("ab")
    with pytest.raises(ValueError):
        DistanceMatrix(g, [[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        DistanceMatrix(g, [[1, 2], [2, 0]])
    with pytest.raises(ValueError):
        DistanceMatrix(g, [[0, -1], [-1, 0]])
    with pytest.raises(ValueError):
        DistanceMatrix(g, [[0], [0]])


@given(distance_matrices(values=rationals()))
def test_comparison_rows_preserve_all_comparisons(matrix):
    rows = matrix.comparison_rows()
    n = matrix.n
    flat = [(i, j) for i in range(n) for j in range(n)]
    for i, j in flat:
        for k, l in flat:
            assert (matrix[i, j] < matrix[k, l]) == (rows[i][j] < rows[k][l])
            assert (matrix[i, j] == matrix[k, l]) == (rows[i][j] == rows[k][l])


def test_matrix_restriction_keeps_entries():
    m = DistanceMatrix(GroundSet("abc"), [[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    sub = m.restricted([0, 2])
    assert sub.ground.labels == ("a", "c")
    assert sub[0, 1] == 2


def test_weighted_system_rejects_duplicates_and_negatives():
    g = GroundSet("abcd")
    s = Split(g, "ab")
    with pytest.raises(ValueError):
        WeightedSplitSystem(g, [(s, 1), (Split(g, "cd"), 2)])
    with pytest.raises(ValueError):
        WeightedSplitSystem(g, [(s, -1)])


def test_weighted_system_iteration_is_sorted_and_stable():
    g = index_ground(4)
    splits = [Split(g, side) for side in ([1, 2], [3], [1])]
    system = WeightedSplitSystem.unit(g, splits)
    assert list(system.splits) == sorted(splits, key=lambda s: s.bits)
    re = system.reweighted({splits[0]: 5})
    assert re.weight(splits[0]) == 5 and re.weight(splits[1]) == 0


def test_order_params_bounds():
    OrderParams(2, 1)
    with pytest.raises(ValueError):
        OrderParams(0, 1)
    with pytest.raises(ValueError):
        OrderParams(2, "3/4")
    assert OrderParams("2", "3").e_coeff == 2


def test_split_metric_is_the_indicator():
    g = index_ground(4)
    s = Split(g, [2, 3])
    m = split_metric(s)
    for i in range(4):
        for j in range(4):
            assert m[i, j] == (1 if s.separates(i, j) else 0)


@given(split_systems())
def test_generate_distance_matches_metric_sum(system):
    total = generate_distance(system)
    n = system.ground.n
    for i in range(n):
        for j in range(n):
            expected = sum(
                (w for s, w in system.items() if s.separates(i, j)), Fraction(0)
            )
            assert total[i, j] == expected


@given(split_systems(), st.data())
def test_generate_distance_is_linear_in_weights(system, data):
    other = {
        s: data.draw(st.integers(0, 6), label=f"w[{s}]") for s in system.splits
    }
    combined = WeightedSplitSystem(
        system.ground, [(s, w + other[s]) for s, w in system.items()]
    )
    left = generate_distance(combined)
    a = generate_distance(system)
    b = generate_distance(system.reweighted(other))
    n = system.ground.n
    assert all(
        left[i, j] == a[i, j] + b[i, j] for i in range(n) for j in range(n)
    )


def test_restrict_split_system_merges_and_drops():
    g = GroundSet("abcde")
    splits = [Split(g, "ab"), Split(g, "abc"), Split(g, "e"), Split(g, "d")]
    # keep a, b, e: "abc" restricts to ab|e, same as "ab"; "d" vanishes
    restricted = restrict_split_system(splits, [0, 1, 4])
    sub = GroundSet("abe")
    assert restricted == frozenset({Split(sub, "ab"), Split(sub, "e")})
