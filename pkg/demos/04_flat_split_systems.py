"""
Flat split systems and the orderliness probe
============================================

Working coordinate-free: a split system is maximum flat when it has
C(n,2) linearly independent splits whose 4-point restrictions match what
incompatible pairs produce.  Circular systems are the motivating example,
but not the only one.  The probe at the end hunts for weightings whose
order distance escapes the system, which is what separates the two
five-point specimens here from anything circular.
"""

from ordist import (
    CircularOrdering,
    CounterexampleFound,
    NoCounterexampleFound,
    OrderParams,
    WeightedSplitSystem,
    express_in_basis,
    flat_fixture,
    generate_distance,
    index_ground,
    is_circular_split_system,
    is_closed,
    is_maximum_flat,
    maximum_circular_splits,
    order_distance_eq1,
    orderly_test,
    split_rank,
    two_split_instance,
)

# two incompatible splits generate a distance with four blocks; the order
# distance between blocks has a closed form, checked here against the engine
d, blocks, system = two_split_instance(2, 1, 1, 3)
o = order_distance_eq1(d, OrderParams(2, 1))
print(f"two incompatible splits on {d.n} points, O between first two blocks:")
print(f"  {o[blocks[0][0], blocks[1][0]]}")

# the five-point specimens: maximum flat, yet provably not circular
for name in ("S1_5", "S2_5"):
    system = flat_fixture(name)
    print(f"\n{name}: {len(system.splits)} splits, rank {split_rank(system.splits)}")
    assert is_maximum_flat(system)
    assert is_circular_split_system(system) is None

    # closedness already fails: some incompatible pair is missing the
    # companion splits that every maximum circular system carries
    gap = is_closed(system)
    print(f"  closedness gap at pair: [{gap[0]}] / [{gap[1]}]")

    # and the probe finds a weighting whose order distance needs a
    # negative coefficient, so the system cannot absorb its own orders
    verdict = orderly_test(system)
    assert isinstance(verdict, CounterexampleFound)
    bad = generate_distance(
        WeightedSplitSystem(system.ground, verdict.weighting.items())
    )
    expression = express_in_basis(
        order_distance_eq1(bad, OrderParams(2, 1)), system.splits
    )
    weight = expression[verdict.negative_split]
    assert weight < 0
    print(f"  a phase {verdict.phase} weighting pulls [{verdict.negative_split}]")
    print(f"  down to coefficient {weight}")

# a maximum circular system passes the same probe however long it runs
theta = CircularOrdering(index_ground(5), range(5))
verdict = orderly_test(maximum_circular_splits(theta), trials=500, seed=3)
assert isinstance(verdict, NoCounterexampleFound)
print(f"\ncircular five-point system: no counterexample in {verdict.trials} trials")
