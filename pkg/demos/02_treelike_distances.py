"""
Treelike distances and compatible split systems
===============================================

A distance generated by the edges of a tree can be taken apart again: the
comparison sets of its element pairs form a compatible split system, the
system folds back into a tree, and the order distance of the input
decomposes over that same tree with non-negative weights.
"""

import random

from ordist import (
    GroundSet,
    OrderParams,
    Split,
    WeightedSplitSystem,
    express_in_basis,
    four_point_check,
    generate_distance,
    is_compatible,
    midpath_split_system,
    order_distance_eq1,
    random_binary_tree_system,
    six_point_witness,
    xtree_from_compatible,
)

# a caterpillar tree on five leaves, one split per edge
ground = GroundSet("abcde")
tree = WeightedSplitSystem(
    ground,
    [
        (Split(ground, "a"), 3),
        (Split(ground, "b"), 1),
        (Split(ground, "c"), 2),
        (Split(ground, "d"), 2),
        (Split(ground, "e"), 1),
        (Split(ground, "ab"), 4),
        (Split(ground, "abc"), 1),
    ],
)
d = generate_distance(tree)
print("tree distance:")
for x in range(5):
    print(" ", " ".join(str(d[x, y]) for y in range(5)))

# the closer-to-u sides of all pairs are splits of the tree itself
observed = midpath_split_system(d).split_system()
assert observed <= frozenset(tree.splits)
assert is_compatible(observed)
print(f"all {len(observed)} comparison splits are tree splits, hence compatible")

# compatible systems fold into a tree: vertices are element bags
xtree = xtree_from_compatible(tree)
names = [
    "{" + ",".join(sorted(ground.labels[e] for e in bag)) + "}" if bag else f"v{i}"
    for i, bag in enumerate(xtree.bags)
]
for u, v, w in xtree.edges:
    print(f"  edge {names[u]} -- {names[v]}  weight {w}")

# the order distance lives on the same tree: express it in the edge splits
o = order_distance_eq1(d, OrderParams(2, 1))
expression = express_in_basis(o, tree.splits)
print("order distance weights per tree split:")
for split, weight in sorted(expression.items(), key=lambda kv: str(kv[0])):
    print(f"  [{split}] {weight}")
assert min(expression.values()) >= 0

# the four point condition certifies treelikeness; random trees pass too
assert four_point_check(d) is None
rng = random.Random(7)
for trial in range(3):
    system = random_binary_tree_system(6, rng)
    generated = generate_distance(system)
    assert four_point_check(generated) is None
    assert six_point_witness(generated) is None
print("four point condition and witness search stay clean on tree input")
