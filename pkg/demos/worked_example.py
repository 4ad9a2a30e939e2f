"""S1 and S2 on the bundled eight-node cyclic example, step by step."""

from cyclic_aog import format_cost, load_fixture, s1_solve, s2_solve

g = load_fixture("g1")
print(f"{g}: arcs {[(p, c, w) for p, c, w in g.arcs]}\n")

r = s1_solve(g)
print("S1 closes nodes bottom-up in cost order:")
for it, node, h in r.log:
    print(f"  {it}: {node:3s} h={format_cost(h)}")
print(f"  -> {r.summary()} after {r.iterations} iterations, {r.evaluations} evaluations\n")

print("S2 grows an explicit graph, one expansion per iteration:")
r = s2_solve(g)
for it, expanded, closed, hs, front in r.log:
    print(f"  {it}: expand {expanded:2s} closed {closed:18s} h(s)={format_cost(hs):3s}"
          f" front(s)={front}")
print(f"  -> {r.summary()}\n")

print("Turning p and r into AND nodes locks them in a cycle:")
r = s2_solve(load_fixture("g2"))
print(f"  expansions {r.expansion_trace}, {r.summary()} ({r.reason})")
