"""Graph families shared by the test modules."""

import itertools
import random

from cyclic_aog import validate
from cyclic_aog.genbench import binary_graphs, random_graph, small_graphs


def exhaustive():
    """Yield (family, graph) for the exhaustive families: every graph on up
    to three nodes, every four-node graph with at most two children per
    node, and every five- and six-node graph whose internal nodes have
    exactly two children over one T and one NT leaf.  The last three are
    taken up to renaming of the non-start nodes."""
    gens = [("all<=3", itertools.chain.from_iterable(small_graphs(n) for n in (1, 2, 3))),
            ("n4,deg<=2", small_graphs(4, 2, up_to_relabelling=True)),
            ("n5,binary", binary_graphs(5)),
            ("n6,binary", binary_graphs(6))]
    for name, gen in gens:
        for g in gen:
            if validate(g).ok:
                yield name, g


def random_small(count=200, max_nodes=10, seed=2024, explicit=False):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(rng, rng.randint(1, max_nodes), explicit=explicit)


def tiny(count=300, max_nodes=6, seed=7, **kw):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(rng, rng.randint(1, max_nodes), **kw)
