import itertools
import math
import random

import pytest

from cyclic_aog import (INF, OR, UNDEF, LimitExceeded, Mes, MesType, beta, classify_all_recursive,
                        classify_mes, classify_node, compose_qk, count_mes, enumerate_mes,
                        h_prime, h_star, is_acyclic, is_mes, load_fixture, sub_mes, validate)
from cyclic_aog.mes import format_mes
from cases import exhaustive, random_small, tiny

I, II, III, OK = MesType.TYPE_I, MesType.TYPE_II, MesType.TYPE_III, MesType.NON_TYPE_III


def brute_force(g, root):
    """Every MES below ``root`` found by trying each expand/stop decision
    for every internal node and filtering with the definition."""
    internal = [u for u in g.ids if g.children(u)]
    per_node = []
    for u in internal:
        kids = [c for c, _ in g.children(u)]
        opts = (kids if g.kind(u) is OR else [None])
        per_node.append([(c, stop) for c in opts for stop in (False, True)])
    found = set()
    for combo in itertools.product(*per_node):
        plan = dict(zip(internal, combo))
        nodes, arcs, choices, term = {root}, set(), {}, set()
        stack = [root]
        while stack:
            u = stack.pop()
            if u not in plan:
                continue
            c, stop = plan[u]
            if c is not None:
                choices[u] = c
            if stop:
                term.add(u)
                continue
            for v in ([c] if c is not None else [v for v, _ in g.children(u)]):
                arcs.add((u, v))
                if v not in nodes:
                    nodes.add(v)
                    stack.append(v)
        m = Mes(g, root, frozenset(nodes), frozenset(arcs), choices, frozenset(term))
        if is_mes(g, m):
            found.add(m.key)
    return found


def test_fixture_counts():
    g = load_fixture("mes_small")
    assert {n: count_mes(g, n) for n in g.ids} == {"s": 5, "n": 5, "t": 1, "r": 1}


def test_complete_graph_counts_by_size():
    g = load_fixture("complete3")
    per_root = count_mes(g, g.ids[0], by_size=True)
    assert per_root == {1: 1, 2: 4, 3: 6}
    anywhere = {}
    for n in g.ids:
        for k, v in count_mes(g, n, by_size=True).items():
            anywhere[k] = anywhere.get(k, 0) + v
    assert anywhere == {k: k * math.perm(3, k) for k in (1, 2, 3)}


def test_enumeration_matches_brute_force():
    checked = 0
    for g in tiny(250, 4, seed=11):
        for n in g.ids:
            got = enumerate_mes(g, n)
            keys = [m.key for m in got]
            assert len(set(keys)) == len(keys)
            assert set(keys) == brute_force(g, n), n
            checked += 1
    assert checked > 400


def test_every_enumerated_mes_is_acyclic_and_valid():
    for g in random_small(80, 8, seed=3):
        for n in g.ids:
            for m in enumerate_mes(g, n):
                assert is_acyclic(m) and m.is_mes()


def test_mes_types_fixture():
    g = load_fixture("mes_types")
    types = [classify_mes(m) for m in enumerate_mes(g, "n")]
    assert types == [III, I, II, III]
    assert classify_node(g, "n") is I and classify_node(g, "q") is I
    assert h_star(g, "n") == 2 and h_star(g, "q") == 1


def test_worked_example_costs():
    g1, g2 = load_fixture("g1"), load_fixture("g2")
    assert h_star(g1, "s") == 14
    assert [h_star(g1, n) for n in ("p", "q", "r", "x")] == [5, 7, 6, INF]
    assert h_star(g2, "s") is UNDEF and h_star(g2, "q") == INF
    with pytest.raises(ValueError):
        h_prime(g1, "s")


def test_h_prime_snapshots():
    a, b = load_fixture("g2_snap1"), load_fixture("g2_snap2")
    assert {n: h_prime(a, n) for n in ("r", "t1", "q", "p", "s")} == \
        {"r": 2, "t1": 0, "q": 5, "p": 8, "s": 15}
    assert all(h_prime(b, n) is UNDEF for n in ("r", "p", "s"))
    with pytest.raises(ValueError):
        h_star(a, "s")


def test_snapshot_classes():
    s1, s2 = load_fixture("mes_types_snap1"), load_fixture("mes_types_snap2")
    assert classify_node(s1, "n") is OK
    rec = classify_all_recursive(s2)
    for n in s2.ids:
        assert classify_node(s2, n) is rec[n]


def test_recursive_types_fixtures():
    want = {
        "types_g1": dict.fromkeys(["s", "p", "q", "r", "x", "t1", "t2"], I) | {"y": II},
        "types_g2": {"s": II, "p": I, "q": II, "r": II, "x": II},
        "types_g3": {"s": III, "p": III, "r": III, "q": II, "x": II, "y": II,
                     "t1": I, "t2": I},
    }
    for name, expect in want.items():
        g = load_fixture(name)
        for n, t in expect.items():
            assert classify_node(g, n) is t, (name, n)


def test_beta_absorbs_inf_into_undef():
    g = load_fixture("g2")
    und = [m for m in enumerate_mes(g, "s") if m.terminated]
    assert und and all(beta("s", m) is UNDEF for m in und)


def test_format_and_dump():
    g = load_fixture("mes_small")
    m = enumerate_mes(g, "s")[0]
    text = format_mes(m)
    assert text.splitlines()[1] == "root s"
    assert all(line.startswith("choice ") for line in text.splitlines()[2:])


def test_limit_is_enforced():
    g = load_fixture("complete3")
    with pytest.raises(LimitExceeded):
        enumerate_mes(g, g.ids[0], limit=5)


def _all_graphs():
    yield from random_small(150, 9, seed=5)
    yield from (g for _, g in itertools.islice(exhaustive(), 0, 4164, 3))


def test_sub_mes_of_solution_graphs():
    # types are inherited by sub-MESs and member nodes
    for g in _all_graphs():
        for n in g.ids:
            for m in enumerate_mes(g, n):
                t = classify_mes(m)
                if t is III:
                    continue
                node_types = [classify_node(g, x, method="recursive") for x in m.nodes]
                sub_types = [classify_mes(sub_mes(x, m)) for x in m.nodes]
                if t is I:
                    assert set(node_types) == {I} and set(sub_types) == {I}
                else:
                    assert set(sub_types) <= {I, II} and set(node_types) <= {I, II}
                    assert II in node_types


def test_optimal_mes_is_optimal_everywhere():
    # optimal substructure; at INF every type-II MES ties, so only finite costs count
    for g in _all_graphs():
        for n in g.ids:
            best = h_star(g, n)
            if best is UNDEF or best == INF:
                continue
            for m in enumerate_mes(g, n, complete_only=True):
                if beta(n, m) != best:
                    continue
                for x in m.nodes:
                    assert beta(x, sub_mes(x, m)) == h_star(g, x)


def test_explicit_psg_members_are_not_type_iii():
    for g in random_small(200, 8, seed=9, explicit=True):
        rec = classify_all_recursive(g)
        for n in g.ids:
            for m in enumerate_mes(g, n):
                if classify_mes(m) is III:
                    continue
                for x in m.nodes:
                    assert classify_mes(sub_mes(x, m)) is OK
                    assert rec[x] is OK


def test_enumeration_and_recursion_agree():
    # exhaustive small graphs and random larger ones
    graphs = itertools.chain((g for _, g in exhaustive() if len(g) <= 4),
                             random_small(200, 10, seed=13),
                             random_small(100, 10, seed=14, explicit=True))
    for g in graphs:
        rec = classify_all_recursive(g)
        for n in g.ids:
            assert classify_node(g, n, method="enumerate") is rec[n], (g.arcs, n)


def test_removing_or_arcs_never_lowers_h_star():
    rng = random.Random(17)
    tried = 0
    for g in random_small(300, 8, seed=19):
        if classify_node(g, g.start, method="recursive") is not I:
            continue
        before = h_star(g, g.start)
        for p, c, _ in g.arcs:
            if g.kind(p) is not OR or len(g.children(p)) < 2 or rng.random() < 0.5:
                continue
            g2 = g.without_arc(p, c)
            after = h_star(g2, g2.start)
            if classify_node(g2, g2.start, method="recursive") is I:
                assert after >= before
                tried += 1
    assert tried > 20


def test_compose_fixture():
    g = load_fixture("compose")
    parts = [next(m for m in enumerate_mes(g, c, complete_only=True) if "n" not in m.nodes)
             for c, _ in g.children("n")]
    q = compose_qk(parts, "n")
    assert is_acyclic(q) and q.is_mes()
    assert classify_mes(q) is I


def test_compose_drops_unreached_nodes():
    g = load_fixture("compose")

    def pick(root, **choices):
        return next(m for m in enumerate_mes(g, root, complete_only=True)
                    if m.choices == choices)

    m1 = pick("p1", p1="z", z="x", x="t")
    m2 = pick("p2", p2="x", x="y", y="z", z="t")
    q = compose_qk([m1, m2], "n")
    assert "y" in m2.nodes and "y" not in q.nodes
    assert q.nodes == {"n", "p1", "p2", "x", "z", "t"}
    assert ("p2", "x") in q.arcs and is_acyclic(q) and q.is_mes()


def test_compose_preconditions():
    g = load_fixture("compose")
    p1 = enumerate_mes(g, "p1", complete_only=True)[0]
    with pytest.raises(ValueError):
        compose_qk([p1], "n")           # AND needs one per child
    with pytest.raises(ValueError):
        compose_qk([], "n")
    g2 = load_fixture("g2")
    bad = [m for m in enumerate_mes(g2, "p") if classify_mes(m) is III]
    with pytest.raises(ValueError):
        compose_qk(bad[:1] + bad[:1], "s")
