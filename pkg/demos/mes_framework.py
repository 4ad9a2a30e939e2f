"""Maximal extendable subgraphs: enumeration, types, costs and composition."""

import math

from cyclic_aog import (classify_node, compose_qk, count_mes, enumerate_mes, format_cost,
                        h_prime, h_star, load_fixture)
from cyclic_aog.mes import format_mes

g = load_fixture("mes_small")
print("MESs below s in a small cyclic graph:")
for m in enumerate_mes(g, "s"):
    print(format_mes(m), end="\n\n")

c3 = load_fixture("complete3")
sizes = {}
for n in c3.ids:
    for k, v in count_mes(c3, n, by_size=True).items():
        sizes[k] = sizes.get(k, 0) + v
print("complete 3-node graph, MESs per size (all roots):", sizes,
      "vs k*P(3,k):", {k: k * math.perm(3, k) for k in sizes})

for name in ("g1", "g2"):
    g = load_fixture(name)
    print(f"\n{name}: " + ", ".join(f"{n}:{classify_node(g, n)}/{format_cost(h_star(g, n))}"
                                     for n in g.ids))

snap = load_fixture("g2_snap1")
print("\nh' on a grown snapshot:", {n: format_cost(h_prime(snap, n)) for n in snap.ids})

g = load_fixture("compose")
parts = [next(m for m in enumerate_mes(g, c, complete_only=True) if "n" not in m.nodes)
         for c, _ in g.children("n")]
print("\ncomposed MES below the AND node n:")
print(format_mes(compose_qk(parts, "n")))
