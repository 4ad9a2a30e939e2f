"""Heuristic top-down search (S2).

S2 grows an explicit graph from the start node.  Each iteration expands
``front(s)`` and then runs :func:`bottom_up`, which is S1 over the explicit
graph with the tips seeded by their heuristic values.  Closing a node also
sets its ``front``, a tip of a cheapest psg below it.  The search stops
when ``front(s)`` is a terminal leaf (success) or ``h(s)`` is INF.
"""

import heapq

from .costs import INF
from .graph import AND, OR, TERMINAL, NONTERMINAL, AndOrGraph, NodeKind, require_valid
from .result import BudgetExhausted, SearchResult, Status


class GraphSource:
    """Successor-function view of a finite :class:`AndOrGraph`.

    Anything with ``start``, ``kind_of``, ``expand`` and ``heuristic`` works
    as a source, so infinite problem spaces can be searched too.
    """

    def __init__(self, graph, heuristic=None):
        self.graph = require_valid(graph)
        self.start = graph.start
        self._h = heuristic

    def __len__(self):
        return len(self.graph)

    def kind_of(self, n):
        return self.graph.kind(n)

    def expand(self, n):
        return self.graph.children(n)

    def heuristic(self, n):
        if self._h is not None:
            k = self.graph.kind(n)
            if k is TERMINAL:
                return 0
            if k is NONTERMINAL:
                return INF
            return self._h[n]
        return self.graph.h(n)


def as_source(obj):
    if isinstance(obj, AndOrGraph):
        if obj.heuristic is None:
            raise ValueError("this algorithm needs heuristic values")
        return GraphSource(obj)
    return obj


_NEW, _OPEN, _CLOSED = 0, 1, 2


class ExplicitGraph:
    """The part of the implicit graph generated so far."""

    def __init__(self, source):
        self.source = source
        self.ids = []
        self.index = {}
        self.kind = []
        self.hhat = []
        self.children = []      # None until expanded
        self.parents = []
        self.h = []
        self.front = []
        self.last_closed = []   # [(node, h, front)] of the latest bottom-up pass
        self.s = self.node(source.start)

    def node(self, label):
        i = self.index.get(label)
        if i is not None:
            return i
        i = len(self.ids)
        self.index[label] = i
        self.ids.append(label)
        k = NodeKind(self.source.kind_of(label))
        self.kind.append(k)
        if k is TERMINAL:
            hv = 0
        elif k is NONTERMINAL:
            hv = INF
        else:
            hv = self.source.heuristic(label)
            if hv is None:
                raise ValueError(f"missing heuristic for {label!r}")
        self.hhat.append(hv)
        self.h.append(hv)
        self.front.append(i)
        self.children.append([] if k.is_leaf else None)
        self.parents.append([])
        return i

    def expand(self, i):
        if self.children[i] is not None:
            raise AssertionError(f"{self.ids[i]!r} expanded twice")
        kids = []
        for label, c in self.source.expand(self.ids[i]):
            j = self.node(label)
            kids.append((j, c))
            self.parents[j].append((i, c))
        if not kids:
            raise ValueError(f"internal node {self.ids[i]!r} generated no children")
        self.children[i] = kids

    def is_expanded(self, i):
        return bool(self.children[i])

    def tips(self):
        return [i for i, k in enumerate(self.children) if not k]

    def snapshot(self):
        """The explicit graph as an :class:`AndOrGraph` (``explicit=True``)."""
        nodes = list(zip(self.ids, self.kind))
        arcs = [(self.ids[i], self.ids[j], c)
                for i, kids in enumerate(self.children) if kids for j, c in kids]
        heur = dict(zip(self.ids, self.hhat))
        return AndOrGraph(nodes, arcs, self.ids[self.s], heur, explicit=True)


def bottom_up(eg):
    """One Bottom_Up pass over ``eg``; returns (closed, selections, evaluations)."""
    n_nodes = len(eg.ids)
    s = eg.s
    kind, h, front = eg.kind, eg.h, eg.front
    state = [_NEW] * n_nodes
    initial = [False] * n_nodes
    seq = [0] * n_nodes
    waiting = [len(k) if k else 0 for k in eg.children]
    heap = []
    counter = 0

    def enter(i):
        nonlocal counter
        state[i] = _OPEN
        seq[i] = counter
        counter += 1

    def push(i):
        heapq.heappush(heap, (h[i], i != s, seq[i], i))

    for i in eg.tips():
        h[i] = eg.hhat[i]
        front[i] = i
        initial[i] = True
        enter(i)
        push(i)

    closed = []
    evals = 0
    while heap:
        hv, _, _, q = heapq.heappop(heap)
        if state[q] == _CLOSED or hv != h[q]:
            continue
        if not initial[q]:
            kids = eg.children[q]
            if kind[q] is OR:
                best = None
                for pos, (j, c) in enumerate(kids):
                    if state[j] != _CLOSED:
                        continue
                    key = (h[j] + c, kind[front[j]] is not TERMINAL, pos)
                    if best is None or key < best[0]:
                        best = (key, j)
                assert best[0][0] == h[q]
                front[q] = front[best[1]]
            else:
                pick = kids[0][0]
                for j, _ in kids:
                    if kind[front[j]] is not TERMINAL:
                        pick = j
                        break
                front[q] = front[pick]
        state[q] = _CLOSED
        closed.append(q)
        if q == s:
            break
        hq = h[q]
        for p, c in eg.parents[q]:
            evals += 1
            v = hq + c
            if kind[p] is OR:
                if state[p] == _NEW:
                    h[p] = v
                    enter(p)
                    push(p)
                elif state[p] == _OPEN:
                    if v < h[p]:
                        h[p] = v
                        push(p)
                else:
                    assert v >= h[p], (eg.ids[p], v, h[p])
            else:
                assert state[p] != _CLOSED
                if state[p] == _NEW:
                    h[p] = v
                    enter(p)
                else:
                    h[p] += v
                waiting[p] -= 1
                if waiting[p] == 0:
                    push(p)
    cut = state[s] != _CLOSED
    if cut:
        h[s] = INF
    eg.last_closed = [(eg.ids[i], h[i], eg.ids[front[i]]) for i in closed]
    return closed, len(closed), evals, cut


def s2_solve(source, budget=None, observer=None):
    """Run S2 on an :class:`AndOrGraph` with heuristic values or on any source.

    ``budget`` caps the number of expansions; it defaults to ten times the
    node count for finite graphs and must be given otherwise.  ``observer``
    is called with the :class:`ExplicitGraph` after every iteration.
    """
    src = as_source(source)
    if budget is None:
        try:
            budget = 10 * len(src)
        except TypeError:
            raise ValueError("an explicit budget is required for this source") from None
    eg = ExplicitGraph(src)
    s = eg.s
    res = SearchResult(status=Status.FAILURE, cost=INF,
                       scale=getattr(getattr(src, "graph", None), "scale", 1))
    cut = False
    while eg.kind[eg.front[s]] is not TERMINAL and eg.h[s] != INF:
        if res.iterations >= budget:
            res.cost = eg.h[s]
            raise BudgetExhausted(f"no decision after {budget} expansions", res)
        n = eg.front[s]
        eg.expand(n)
        closed, sel, ev, cut = bottom_up(eg)
        res.iterations += 1
        res.selections += sel
        res.evaluations += ev
        res.expansion_trace.append(eg.ids[n])
        res.front_trace.append(eg.ids[eg.front[s]])
        res.closed_trace = [(eg.ids[i], eg.h[i]) for i in closed]
        res.log.append((res.iterations, eg.ids[n],
                        ";".join(eg.ids[i] for i in closed), eg.h[s],
                        eg.ids[eg.front[s]]))
        if observer is not None:
            observer(eg)
    res.front = eg.ids[eg.front[s]]
    if eg.kind[eg.front[s]] is TERMINAL:
        res.status = Status.SUCCESS
        res.cost = eg.h[s]
    else:
        res.reason = "StartTypeIII" if cut else "NoSolution"
    res.explicit = eg
    return res
