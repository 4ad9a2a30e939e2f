"""Uninformed bottom-up best-first search (S1).

OPEN starts with all leaves.  The cheapest *eligible* node is closed and
its parents are re-evaluated: an OR parent takes the cheapest closed child,
an AND parent accumulates its children's costs and becomes eligible once
every child is closed.  Cycles cannot fool the AND rule, so nodes that only
have cycle-blocked MESs never close.

Ties on h go to the start node, then to whichever node entered OPEN first.
"""

import heapq

from .costs import INF
from .graph import OR, TERMINAL, require_valid
from .result import SearchResult, Status

_NEW, _OPEN, _CLOSED = 0, 1, 2


def _run(g, stop):
    succ, pred, kinds = g.succ, g.pred, g.kinds
    n_nodes = len(g.ids)
    h = [None] * n_nodes
    state = [_NEW] * n_nodes
    seq = [0] * n_nodes
    waiting = [len(k) for k in succ]    # AND nodes: children not yet closed
    heap = []
    counter = 0
    closed = []
    evals = 0

    def enter(i):
        nonlocal counter
        state[i] = _OPEN
        seq[i] = counter
        counter += 1

    def push(i):
        heapq.heappush(heap, (h[i], i != stop, seq[i], i))

    for i in range(n_nodes):
        if not succ[i]:
            h[i] = 0 if kinds[i] is TERMINAL else INF
            enter(i)
            push(i)

    while heap:
        hv, _, _, n = heapq.heappop(heap)
        if state[n] == _CLOSED or hv != h[n]:
            continue                    # superseded entry
        state[n] = _CLOSED
        closed.append(n)
        if n == stop:
            break
        hn = h[n]
        for p, c in pred[n]:
            evals += 1
            v = hn + c
            if kinds[p] is OR:
                if state[p] == _NEW:
                    h[p] = v
                    enter(p)
                    push(p)
                elif state[p] == _OPEN:
                    if v < h[p]:
                        h[p] = v
                        push(p)
                else:
                    # a closed node already carries its optimal cost
                    assert v >= h[p], (g.ids[p], v, h[p])
            else:
                assert state[p] != _CLOSED, g.ids[p]
                if state[p] == _NEW:
                    h[p] = v
                    enter(p)
                else:
                    h[p] += v
                waiting[p] -= 1
                if waiting[p] == 0:
                    push(p)
    return h, state, closed, evals


def s1_solve(graph):
    """Run S1 from ``graph.start``."""
    g = require_valid(graph)
    s = g.start_index
    h, state, closed, evals = _run(g, s)
    trace = [(g.ids[i], h[i]) for i in closed]
    res = SearchResult(
        status=Status.FAILURE, cost=INF, closed_trace=trace,
        selections=len(closed), evaluations=evals, iterations=len(closed),
        scale=g.scale,
        log=[(k + 1, n, v) for k, (n, v) in enumerate(trace)],
    )
    if state[s] != _CLOSED:
        res.reason = "StartTypeIII"
    elif h[s] == INF:
        res.reason = "NoSolution"
    else:
        res.status = Status.SUCCESS
        res.cost = h[s]
    return res


def s1_costs(graph):
    """Run S1 to exhaustion and return ``{node: h}`` for every node that
    closes.  Finite entries are type-I nodes, INF entries type-II; nodes
    that are missing are type III."""
    g = require_valid(graph)
    h, state, closed, _ = _run(g, None)
    return {g.ids[i]: h[i] for i in closed}
