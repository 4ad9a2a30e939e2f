import pytest

from cyclic_aog import (INF, TERMINAL, UNDEF, AndOrGraph, GraphError, MesType, Status,
                        classify_all_recursive, h_star, load_fixture, s1_costs, s1_solve)
from cases import random_small, tiny


def test_worked_example_trace():
    r = s1_solve(load_fixture("g1"))
    assert r.status is Status.SUCCESS and r.cost == 14
    assert r.closed_trace == [("t1", 0), ("t2", 0), ("p", 5), ("r", 6), ("q", 7), ("s", 14)]
    assert r.iterations == 6 and r.summary() == "SUCCESS,14"


def test_single_terminal():
    r = s1_solve(AndOrGraph([("s", TERMINAL)], [], "s"))
    assert r.ok and r.cost == 0 and r.iterations == 1


def test_type_iii_start_fails():
    r = s1_solve(load_fixture("g2"))
    assert r.status is Status.FAILURE and r.reason == "StartTypeIII"
    assert "s" not in r.closed_order


def test_type_ii_start_fails():
    g = load_fixture("g2").with_start("q")
    r = s1_solve(g)
    assert not r.ok and r.reason == "NoSolution" and r.cost == INF


def test_closes_n_before_s():
    r = s1_solve(load_fixture("revstar_skip"))
    assert r.cost == 102
    order = r.closed_order
    assert ("n", 10) in r.closed_trace and order.index("n") < order.index("s")


def test_rejects_invalid_graph():
    with pytest.raises(GraphError):
        s1_solve(AndOrGraph([("s", "OR")], [], "s"))


def _graphs():
    yield from random_small(200, 10, seed=31)
    yield from tiny(300, 6, seed=32)


def test_closed_costs_are_optimal_and_never_type_iii():
    for g in _graphs():
        for n in g.ids:
            r = s1_solve(g.with_start(n))
            for u, h in r.closed_trace:
                assert h == h_star(g, u)
        costs = s1_costs(g)
        for u in g.ids:
            want = h_star(g, u)
            assert costs.get(u, UNDEF) == want if want is not UNDEF else u not in costs


def test_iteration_count_law():
    # one iteration per cheaper type-I node, plus s itself
    checked = 0
    for g in _graphs():
        r = s1_solve(g)
        if not r.ok:
            continue
        hs = r.cost
        below = [u for u in g.ids if h_star(g, u) not in (INF, UNDEF) and h_star(g, u) < hs]
        assert r.iterations == 1 + len(below)
        checked += 1
    assert checked > 50


def test_counter_bounds():
    # n1 nodes that can close, k1 the largest in-degree
    for g in _graphs():
        r = s1_solve(g)
        types = classify_all_recursive(g)
        n1 = sum(t is not MesType.TYPE_III for t in types.values())
        k1 = max(len(g.parents(u)) for u in g.ids)
        assert r.selections <= n1
        assert r.evaluations <= n1 * k1


def test_open_never_starves_a_solvable_start():
    # S1 only stalls when s is type III
    for g in _graphs():
        r = s1_solve(g)
        t = classify_all_recursive(g)[g.start]
        assert (r.reason == "StartTypeIII") == (t is MesType.TYPE_III)
