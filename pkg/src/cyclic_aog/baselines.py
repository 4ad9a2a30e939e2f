"""Reference searches used for comparison: AO* and REV*.

AO* is the classic marked-connector algorithm with a Z-list revision
phase.  On cyclic inputs it can deadlock or chase its own tail; instead of
hanging it returns a :class:`Diagnostic`.  Those diagnostics are an
addition, the textbook algorithm has none.

REV* works bottom-up from the leaves like S1 but, after taking a node from
OPEN, keeps climbing through every parent whose children are all done,
regardless of cost.  This module rebuilds that behaviour from its published
traces; it is not best-first.
"""

import heapq
from dataclasses import dataclass, field

from .costs import INF
from .graph import OR, TERMINAL, NONTERMINAL, NodeKind, require_valid
from .result import BudgetExhausted, SearchResult, Status
from .s2 import as_source


@dataclass
class Diagnostic:
    kind: str                   # "Stuck" | "LoopDetected"
    nodes: list                 # Z-list contents, or the loop seen
    expansion_trace: list = field(default_factory=list)
    evaluations: int = 0
    message: str = ""

    @property
    def expansions(self):
        return len(self.expansion_trace)

    def summary(self):
        return f"DIAGNOSTIC,{self.kind}"


class _AoGraph:
    def __init__(self, src):
        self.src = src
        self.ids, self.index = [], {}
        self.kind, self.children, self.parents = [], [], []
        self.q, self.solved, self.mark = [], [], []

    def node(self, label):
        i = self.index.get(label)
        if i is not None:
            return i
        i = len(self.ids)
        self.index[label] = i
        self.ids.append(label)
        k = NodeKind(self.src.kind_of(label))
        self.kind.append(k)
        if k is TERMINAL:
            q = 0
        elif k is NONTERMINAL:
            q = INF
        else:
            q = self.src.heuristic(label)
        self.q.append(q)
        self.solved.append(k is TERMINAL)
        self.mark.append(None)
        self.children.append([] if k.is_leaf else None)
        self.parents.append([])
        return i

    def descendants_hit(self, m, z):
        """Does some node of ``z`` other than ``m`` lie below ``m``?"""
        stack, seen = [m], {m}
        while stack:
            u = stack.pop()
            for v, _ in self.children[u] or ():
                if v in seen:
                    continue
                if v in z:
                    return True
                seen.add(v)
                stack.append(v)
        return False

    def revise(self, m):
        kids = self.children[m]
        if self.kind[m] is OR:
            best = min((c + self.q[j], not self.solved[j], pos, j)
                       for pos, (j, c) in enumerate(kids))
            self.mark[m] = best[3]
            return best[0], self.solved[best[3]]
        total = 0
        for j, c in kids:
            total += c + self.q[j]
        return total, all(self.solved[j] for j, _ in kids)


def ao_star(source, budget=None):
    """AO* on a heuristic-carrying graph or source.

    Returns a :class:`SearchResult`, or a :class:`Diagnostic` when a cycle
    jams the revision phase (``Stuck``) or makes it re-enter a node
    (``LoopDetected``).
    """
    src = as_source(source)
    if budget is None:
        try:
            budget = 10 * len(src)
        except TypeError:
            raise ValueError("an explicit budget is required for this source") from None
    g = _AoGraph(src)
    s = g.node(src.start)
    trace = []
    log = []
    evals = 0
    scale = getattr(getattr(src, "graph", None), "scale", 1)

    def diag(kind, nodes, msg):
        return Diagnostic(kind, [g.ids[i] for i in nodes], list(trace), evals, msg)

    while True:
        if g.solved[s]:
            return SearchResult(Status.SUCCESS, g.q[s], evaluations=evals,
                                iterations=len(trace), expansion_trace=trace,
                                log=log, scale=scale)
        if g.q[s] == INF:
            return SearchResult(Status.FAILURE, INF, reason="NoSolution",
                                evaluations=evals, iterations=len(trace),
                                expansion_trace=trace, log=log, scale=scale)
        if len(trace) >= budget:
            raise BudgetExhausted(f"AO* made {budget} expansions",
                                  SearchResult(Status.FAILURE, g.q[s],
                                               expansion_trace=trace))

        # follow the marked psg down to an unexpanded tip
        m, path = s, []
        while g.children[m] is not None:
            if m in path:
                return diag("LoopDetected", path[path.index(m):],
                            "marked arcs form a cycle")
            path.append(m)
            if g.kind[m] is OR:
                m = g.mark[m]
            else:
                m = next(j for j, _ in g.children[m] if not g.solved[j])
        tip = m

        kids = []
        for label, c in src.expand(g.ids[tip]):
            j = g.node(label)
            kids.append((j, c))
            g.parents[j].append((tip, c))
        if not kids:
            raise ValueError(f"internal node {g.ids[tip]!r} generated no children")
        g.children[tip] = kids
        trace.append(g.ids[tip])

        zlist, done, revised = [tip], set(), []
        while zlist:
            zset = set(zlist)
            for m in zlist:
                if not g.descendants_hit(m, zset):
                    break
            else:
                return diag("Stuck", zlist,
                            "every node in Z has a descendant in Z")
            zlist.remove(m)
            done.add(m)
            revised.append(g.ids[m])
            evals += 1
            q, solved = g.revise(m)
            changed = m == tip or q != g.q[m] or solved != g.solved[m]
            g.q[m], g.solved[m] = q, solved
            if not changed:
                continue
            for p, _ in g.parents[m]:
                if p in done:
                    return diag("LoopDetected", [p, m],
                                f"revision re-entered {g.ids[p]!r}")
                if p not in zlist:
                    zlist.append(p)
        # front column stays empty: AO* picks its next tip lazily
        log.append((len(trace), g.ids[tip], ";".join(revised), g.q[s], ""))


def rev_star(graph):
    """REV* on a finite graph; ``selection_trace`` lists the nodes in the
    order they are taken, from OPEN or during an upward pass."""
    g = require_valid(graph)
    succ, pred, kinds = g.succ, g.pred, g.kinds
    n_nodes = len(g.ids)
    s = g.start_index
    ub = [INF] * n_nodes
    found = [False] * n_nodes
    in_open = [False] * n_nodes
    left = [len(k) for k in succ]
    seq = [0] * n_nodes
    heap = []
    counter = 0
    order = []
    evals = 0

    def put(i):
        nonlocal counter
        if not in_open[i]:
            in_open[i] = True
            seq[i] = counter
            counter += 1
        heapq.heappush(heap, (ub[i], seq[i], i))

    def settle(i):
        found[i] = True
        for p, _ in pred[i]:
            left[p] -= 1

    for i in range(n_nodes):
        if not succ[i]:
            ub[i] = 0 if kinds[i] is TERMINAL else INF
            settle(i)
            put(i)

    def climb(m):
        # go up as long as every child of the parent is settled
        nonlocal evals
        stack = [m]
        while stack:
            u = stack.pop()
            for p, c in pred[u]:
                evals += 1
                if found[p]:
                    continue
                if left[p] == 0:
                    parts = [w + ub[j] for j, w in succ[p]]
                    ub[p] = min(parts) if kinds[p] is OR else sum(parts)
                    in_open[p] = False
                elif kinds[p] is OR:
                    if c + ub[u] < ub[p] or not in_open[p]:
                        ub[p] = min(ub[p], c + ub[u])
                        put(p)
                    continue
                else:
                    continue
                settle(p)
                order.append(p)
                if p == s:
                    return
                stack.append(p)

    while heap and not found[s]:
        v, _, m = heapq.heappop(heap)
        if not in_open[m] or v != ub[m]:
            continue
        in_open[m] = False
        if not found[m]:
            settle(m)
        order.append(m)
        if m == s:
            break
        climb(m)

    res = SearchResult(Status.FAILURE, INF, evaluations=evals,
                       selections=len(order), iterations=len(order),
                       selection_trace=[g.ids[i] for i in order],
                       scale=g.scale)
    res.closed_trace = [(g.ids[i], ub[i]) for i in order]
    res.log = [(k, n, v) for k, (n, v) in enumerate(res.closed_trace, 1)]
    if not found[s]:
        res.reason = "StartTypeIII"
    elif ub[s] == INF:
        res.reason = "NoSolution"
    else:
        res.status = Status.SUCCESS
        res.cost = ub[s]
    return res
