import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import ordist.circular as circular_module
from ordist import (
    CircularOrdering,
    DistanceMatrix,
    GroundSet,
    IntervalSplit,
    NotCircularError,
    OrderParams,
    Split,
    WeightedSplitSystem,
    all_interval_splits,
    evaluate_circular_distance,
    fits_on_ordering,
    generate_distance,
    index_ground,
    interval_weight_map,
    is_circular_split_system,
    kalmanson_check,
    maximum_circular_splits,
    order_distance_circular,
    order_distance_eq1,
    random_binary_tree_system,
    random_maximum_circular_system,
    recover_circular_ordering,
    flat_fixture,
)
from helpers import circular_orderings_brute, quadruple_condition_holds, six_point_table
from strategies import distance_matrices


def test_ordering_canonical_under_rotation_and_reversal():
    g = index_ground(5)
    base = CircularOrdering(g, [0, 1, 2, 3, 4])
    assert CircularOrdering(g, [2, 3, 4, 0, 1]) == base
    assert CircularOrdering(g, [0, 4, 3, 2, 1]) == base
    assert CircularOrdering(g, [1, 0, 4, 3, 2]) == base
    assert hash(CircularOrdering(g, [2, 3, 4, 0, 1])) == hash(base)
    assert CircularOrdering(g, [0, 2, 1, 3, 4]) != base
    assert base.position(3) == 3
    assert base.arc(3, 1) == (3, 4, 0, 1)
    assert str(base) == "x0,x1,x2,x3,x4"
    with pytest.raises(ValueError):
        CircularOrdering(g, [0, 0, 1, 2, 3])
    with pytest.raises(ValueError):
        CircularOrdering(g, [0, 1, 2])


def test_interval_splits_enumerate_all_arcs():
    g = GroundSet("abcde")
    theta = CircularOrdering(g, range(5))
    intervals = all_interval_splits(theta)
    assert len(intervals) == 10
    assert IntervalSplit(theta, 1, 2).to_split() == Split(g, "bc")
    splits = maximum_circular_splits(theta)
    assert len(set(splits)) == 10
    assert fits_on_ordering(splits, theta)
    assert not fits_on_ordering([Split(g, "ac")], theta)
    with pytest.raises(ValueError):
        IntervalSplit(theta, 2, 1)
    with pytest.raises(ValueError):
        IntervalSplit(theta, 0, 4)
    with pytest.raises(ValueError):
        fits_on_ordering([Split(GroundSet("abcdf"), "ab")], theta)


def test_interval_weight_map_round_trip():
    g = GroundSet("abcde")
    theta = CircularOrdering(g, [0, 2, 4, 1, 3])
    weights = {iv: Fraction(k + 1) for k, iv in enumerate(all_interval_splits(theta))}
    system = WeightedSplitSystem(
        g, [(iv.to_split(), w) for iv, w in weights.items()]
    )
    assert interval_weight_map(theta, system) == weights
    other = WeightedSplitSystem.unit(g, [Split(g, "ab")])
    with pytest.raises(ValueError):
        interval_weight_map(theta, other)


@given(distance_matrices(min_n=4, max_n=6, values=st.integers(0, 4)))
def test_kalmanson_check_matches_direct_scan(matrix):
    theta = CircularOrdering(matrix.ground, range(matrix.n))
    found = kalmanson_check(matrix, theta)
    if found is None:
        assert quadruple_condition_holds(matrix, theta.sequence)
    else:
        ei, ej, ek, el = found
        rhs = matrix[ei, ek] + matrix[ej, el]
        assert (
            matrix[ei, ej] + matrix[ek, el] > rhs
            or matrix[ei, el] + matrix[ej, ek] > rhs
        )


@given(
    distance_matrices(min_n=4, max_n=8, values=st.integers(0, 4)),
    st.randoms(use_true_random=False),
)
def test_edge_pair_scan_equals_full_quadruple_scan(matrix, rnd):
    # recovery verifies orderings through the O(n^2) disjoint-edge family,
    # which must accept exactly the orderings the full scan accepts
    seq = list(range(matrix.n))
    rnd.shuffle(seq)
    theta = CircularOrdering(matrix.ground, seq)
    fast = circular_module._quadruples_ok(
        matrix.comparison_rows(), list(theta.sequence)
    )
    assert fast == (kalmanson_check(matrix, theta) is None)


@given(distance_matrices(min_n=4, max_n=6, values=st.integers(0, 3)))
def test_recovery_agrees_with_exhaustive_search(matrix):
    valid = circular_orderings_brute(matrix)
    recovered = recover_circular_ordering(matrix)
    if recovered is None:
        assert valid == []
    else:
        assert recovered in valid


@pytest.mark.parametrize("n,seed", [(4, 0), (5, 1), (6, 2), (6, 3)])
def test_recovery_on_generated_circular_instances(n, seed):
    theta, system = random_maximum_circular_system(n, random.Random(seed))
    d = generate_distance(system)
    recovered = recover_circular_ordering(d)
    assert recovered is not None
    assert recovered in circular_orderings_brute(d)


def test_small_ground_sets_are_trivially_circular():
    g = index_ground(3)
    d = DistanceMatrix(g, [[0, 9, 1], [9, 0, 3], [1, 3, 0]])
    assert recover_circular_ordering(d) == CircularOrdering(g, range(3))


@given(st.integers(2, 7), st.data())
def test_interval_evaluation_matches_split_sum(n, data):
    theta = CircularOrdering(index_ground(n), range(n))
    intervals = all_interval_splits(theta)
    chosen = data.draw(
        st.dictionaries(st.sampled_from(intervals), st.integers(0, 6)),
        label="weights",
    )
    fast = evaluate_circular_distance(theta, chosen)
    system = WeightedSplitSystem(
        theta.ground, [(iv.to_split(), w) for iv, w in chosen.items()]
    )
    assert fast == generate_distance(system)


def test_interval_evaluation_rejects_foreign_and_negative():
    g = index_ground(4)
    theta = CircularOrdering(g, range(4))
    other = CircularOrdering(g, [0, 2, 1, 3])
    with pytest.raises(ValueError):
        evaluate_circular_distance(theta, {IntervalSplit(other, 0, 0): 1})
    with pytest.raises(ValueError):
        evaluate_circular_distance(theta, {IntervalSplit(theta, 0, 0): -1})


@pytest.mark.parametrize("n,seed,p", [(5, 10, 2), (8, 11, 3), (12, 12, "1/2")])
def test_circular_engine_matches_eq1(n, seed, p):
    theta, system = random_maximum_circular_system(n, random.Random(seed))
    d = generate_distance(system)
    fast = order_distance_circular(d, p)
    assert fast == order_distance_eq1(d, OrderParams(p, Fraction(p) / 2))


def test_circular_engine_with_linear_scan(monkeypatch):
    theta, system = random_maximum_circular_system(7, random.Random(21))
    d = generate_distance(system)
    expected = order_distance_circular(d)
    monkeypatch.setattr(circular_module, "_USE_BINARY_SEARCH", False)
    assert order_distance_circular(d) == expected


def test_quadruple_condition_without_decomposability_still_works():
    # passes the quadruple condition on the identity ordering although no
    # non-negative arc weighting generates it; the engine only needs arcs
    g = index_ground(4)
    d = DistanceMatrix(g, [[0, 1, 5, 1], [1, 0, 1, 1], [5, 1, 0, 1], [1, 1, 1, 0]])
    assert recover_circular_ordering(d) is not None
    assert order_distance_circular(d, 2) == order_distance_eq1(d, OrderParams(2, 1))


def test_zero_distance_pairs():
    g = index_ground(3)
    twins = DistanceMatrix(g, [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    assert order_distance_circular(twins, 2) == order_distance_eq1(
        twins, OrderParams(2, 1)
    )
    skewed = DistanceMatrix(g, [[0, 0, 1], [0, 0, 2], [1, 2, 0]])
    with pytest.raises(NotCircularError):
        order_distance_circular(skewed, 2)


def test_engine_rejects_non_circular_distance():
    d = six_point_table()
    assert circular_orderings_brute(d) == []
    assert recover_circular_ordering(d) is None
    with pytest.raises(NotCircularError):
        order_distance_circular(d, 2)
    with pytest.raises(ValueError):
        order_distance_circular(d.restricted([0, 1]), 0)


def test_circular_recognition_of_split_systems():
    g = index_ground(5)
    theta = CircularOrdering(g, [0, 2, 4, 1, 3])
    assert is_circular_split_system(maximum_circular_splits(theta)) == theta
    system = WeightedSplitSystem.unit(g, maximum_circular_splits(theta))
    assert is_circular_split_system(system) == theta

    tree = random_binary_tree_system(6, random.Random(5))
    found = is_circular_split_system(tree)
    assert found is not None
    assert fits_on_ordering(tree.splits, found)

    assert is_circular_split_system(flat_fixture("S1_5")) is None
    with pytest.raises(ValueError):
        is_circular_split_system([])
    empty = WeightedSplitSystem(g, {})
    assert is_circular_split_system(empty) == CircularOrdering(g, range(5))
