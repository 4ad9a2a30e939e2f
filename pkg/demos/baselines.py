"""Where AO* and REV* part ways with S1 and S2."""

from cyclic_aog import ao_star, load_fixture, rev_star, s1_solve, s2_solve

for name in ("aostar_stuck", "aostar_selfloop"):
    d = ao_star(load_fixture(name))
    print(f"AO* on {name}: {d.summary()} ({d.message}); expanded {d.expansion_trace}")
    print(f"  S2 on the same graph: {s2_solve(load_fixture(name)).summary()}")

acyclic = load_fixture("g1").without_arc("r", "p")
a, b = ao_star(acyclic), s2_solve(acyclic)
print(f"\nacyclic variant: AO* {a.summary()} in {a.expansions} expansions, "
      f"S2 {b.summary()} in {b.expansions}")

for name in ("revstar_skip", "revstar_or"):
    g = load_fixture(name)
    r, s = rev_star(g), s1_solve(g)
    print(f"\n{name}: REV* {r.summary()} taking {r.selection_trace}")
    print(f"  S1 {s.summary()} closing {s.closed_order}")
