import random

import pytest

from cyclic_aog import (INF, UNDEF, Diagnostic, h_star, load_fixture, s1_solve, s2_solve,
                        ao_star, rev_star)
from cyclic_aog.genbench import GenParams, derive_heuristic, generate
from cases import random_small


def test_stuck():
    d = ao_star(load_fixture("aostar_stuck"))
    assert isinstance(d, Diagnostic) and d.kind == "Stuck"
    assert d.nodes == ["p", "q"] and d.expansion_trace == ["s", "p", "q", "r"]
    assert d.summary() == "DIAGNOSTIC,Stuck"


def test_self_loop():
    d = ao_star(load_fixture("aostar_selfloop"))
    assert isinstance(d, Diagnostic) and d.kind == "LoopDetected"
    assert d.expansion_trace == ["s", "p"]


def test_acyclic_worked_example():
    g = load_fixture("g1").without_arc("r", "p")
    r = ao_star(g)
    assert r.ok and r.cost == s1_solve(g).cost == 18
    assert len(r.log) == r.iterations


def _acyclic(count, n=40, seed=0):
    for k in range(count):
        g = generate(GenParams(n, 30, cyclic=False, seed=seed + k))
        yield g.with_heuristic(derive_heuristic(g, (0.9, 1.0), seed + k))


def test_ao_star_matches_s1_and_s2_on_acyclic_graphs():
    for g in _acyclic(60):
        a, b, c = ao_star(g), s2_solve(g), s1_solve(g)
        assert a.ok and a.cost == b.cost == c.cost
        assert a.expansions == b.expansions


def test_ao_star_never_hangs_on_cyclic_input():
    for g in random_small(200, 10, seed=61):
        h = derive_heuristic(g, (0.5, 1.0), 1)
        r = ao_star(g.with_heuristic(h))
        if isinstance(r, Diagnostic):
            assert r.kind in ("Stuck", "LoopDetected")
        elif r.ok:
            want = h_star(g, g.start)
            assert want not in (UNDEF, INF) and r.cost >= want


def test_rev_star_fixtures():
    r = rev_star(load_fixture("revstar_or"))
    assert r.cost == 2
    assert "q" in r.selection_trace and "z" in r.selection_trace
    s1 = s1_solve(load_fixture("revstar_or"))
    assert "q" not in s1.closed_order and "z" not in s1.closed_order

    r = rev_star(load_fixture("revstar_skip"))
    assert r.cost == 102 and "n" not in r.selection_trace
    assert r.selection_trace == ["t1", "t2", "t3", "p", "s"]
    assert rev_star(load_fixture("revstar_and")).cost == 2


def test_rev_star_cost_is_optimal():
    for g in random_small(200, 10, seed=71):
        want = h_star(g, g.start)
        r = rev_star(g)
        if want is UNDEF:
            assert r.reason == "StartTypeIII"
        elif want == INF:
            assert not r.ok
        else:
            assert r.ok and r.cost == want


def test_rev_star_on_type_iii_start():
    r = rev_star(load_fixture("g2"))
    assert not r.ok and r.reason == "StartTypeIII"
