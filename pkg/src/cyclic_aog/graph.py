"""AND/OR graph model and validation."""

from dataclasses import dataclass, field
from enum import Enum

from .costs import INF, UNDEF


class NodeKind(Enum):
    OR = "OR"
    AND = "AND"
    TERMINAL = "TERMINAL"
    NONTERMINAL = "NONTERMINAL"

    @property
    def is_leaf(self):
        return self in (NodeKind.TERMINAL, NodeKind.NONTERMINAL)


OR, AND = NodeKind.OR, NodeKind.AND
TERMINAL, NONTERMINAL = NodeKind.TERMINAL, NodeKind.NONTERMINAL


class GraphError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid graph")


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


class AndOrGraph:
    """Immutable AND/OR graph.

    ``nodes`` is a list of ``(id, kind)`` in declaration order, ``arcs`` a list
    of ``(parent, child, cost)`` with integer costs.  Child order is the order
    in which arcs were given for each parent.

    With ``explicit=True`` the graph is a snapshot of a partially grown search
    graph: internal nodes without children are unexpanded tips and get their
    cost from ``heuristic``.

    Public accessors take node ids.  The search code works on dense indices
    through ``succ``, ``pred``, ``kinds`` and ``hvals``.
    """

    def __init__(self, nodes, arcs, start, heuristic=None, *, explicit=False,
                 scale=1, delta=1):
        self._decl_nodes = [(n, NodeKind(k)) for n, k in nodes]
        self._decl_arcs = [(p, c, w) for p, c, w in arcs]
        self.start = start
        self.explicit = explicit
        self.scale = scale
        self.delta = delta
        self.heuristic = dict(heuristic) if heuristic is not None else None

        self.ids = []
        self.index = {}
        kinds = []
        for n, k in self._decl_nodes:
            if n in self.index:
                continue
            self.index[n] = len(self.ids)
            self.ids.append(n)
            kinds.append(k)
        self.ids = tuple(self.ids)
        self.kinds = tuple(kinds)
        succ = [[] for _ in self.ids]
        pred = [[] for _ in self.ids]
        for p, c, w in self._decl_arcs:
            i, j = self.index.get(p), self.index.get(c)
            if i is None or j is None:
                continue
            succ[i].append((j, w))
        # reverse adjacency in declaration order of the parents
        for i, kids in enumerate(succ):
            for j, w in kids:
                pred[j].append((i, w))
        self.succ = tuple(tuple(k) for k in succ)
        self.pred = tuple(tuple(p) for p in pred)
        self.start_index = self.index.get(start)
        if self.heuristic is None:
            self.hvals = None
        else:
            self.hvals = tuple(self.heuristic.get(n) for n in self.ids)

    # -- node-id level api -------------------------------------------------
    def __len__(self):
        return len(self.ids)

    def __contains__(self, n):
        return n in self.index

    def _idx(self, n):
        try:
            return self.index[n]
        except KeyError:
            raise KeyError(f"unknown node {n!r}") from None

    def kind(self, n):
        return self.kinds[self._idx(n)]

    def children(self, n):
        return [(self.ids[j], w) for j, w in self.succ[self._idx(n)]]

    def parents(self, n):
        return [(self.ids[i], w) for i, w in self.pred[self._idx(n)]]

    def h(self, n):
        if self.heuristic is None:
            raise ValueError("graph carries no heuristic")
        v = self.heuristic.get(n)
        if v is None:
            k = self.kind(n)
            if k is TERMINAL:
                return 0
            if k is NONTERMINAL:
                return INF
            raise ValueError(f"no heuristic value for {n!r}")
        return v

    @property
    def arcs(self):
        return [(self.ids[i], self.ids[j], w)
                for i, kids in enumerate(self.succ) for j, w in kids]

    @property
    def nodes(self):
        return list(zip(self.ids, self.kinds))

    def is_tip(self, n):
        return not self.succ[self._idx(n)]

    def terminals(self):
        return [n for n, k in zip(self.ids, self.kinds) if k is TERMINAL]

    def nonterminals(self):
        return [n for n, k in zip(self.ids, self.kinds) if k is NONTERMINAL]

    def zg(self):
        return {n for n, kids in zip(self.ids, self.succ) if not kids}

    # -- derived graphs ----------------------------------------------------
    def _copy(self, **kw):
        args = dict(nodes=self.nodes, arcs=self.arcs, start=self.start,
                    heuristic=self.heuristic, explicit=self.explicit,
                    scale=self.scale, delta=self.delta)
        args.update(kw)
        return AndOrGraph(args.pop("nodes"), args.pop("arcs"), args.pop("start"),
                          args.pop("heuristic"), **args)

    def with_heuristic(self, heuristic):
        return self._copy(heuristic=heuristic)

    def with_start(self, start):
        return self._copy(start=start)

    def without_arc(self, parent, child):
        arcs = [a for a in self.arcs if (a[0], a[1]) != (parent, child)]
        if len(arcs) == len(self.arcs):
            raise KeyError(f"no arc {parent}->{child}")
        return self._copy(arcs=arcs)

    def with_kind(self, n, kind):
        self._idx(n)
        nodes = [(m, NodeKind(kind) if m == n else k) for m, k in self.nodes]
        return self._copy(nodes=nodes)

    def __eq__(self, other):
        if not isinstance(other, AndOrGraph):
            return NotImplemented
        return (self.nodes == other.nodes and self.arcs == other.arcs
                and self.start == other.start
                and self.heuristic == other.heuristic
                and self.explicit == other.explicit
                and self.scale == other.scale)

    def __hash__(self):
        return hash((tuple(self.nodes), tuple(self.arcs), self.start))

    def __repr__(self):
        return (f"AndOrGraph({len(self.ids)} nodes, {len(self.arcs)} arcs, "
                f"start={self.start!r})")


def validate(graph):
    """Collect every structural violation of ``graph``."""
    bad = []
    seen = set()
    if not graph._decl_nodes:
        bad.append("graph has no nodes")
    for n, _ in graph._decl_nodes:
        if n in seen:
            bad.append(f"duplicate node id {n!r}")
        seen.add(n)
    if graph.start is None:
        bad.append("missing start node")
    elif graph.start not in graph.index:
        bad.append(f"start node {graph.start!r} is not declared")

    pairs = set()
    for p, c, w in graph._decl_arcs:
        for end in (p, c):
            if end not in graph.index:
                bad.append(f"arc {p}->{c} references undeclared node {end!r}")
        if (p, c) in pairs:
            bad.append(f"parallel arc {p}->{c}")
        pairs.add((p, c))
        if not isinstance(w, int) or w < graph.delta:
            bad.append(f"arc {p}->{c}: cost {w} below delta")

    for n, k in zip(graph.ids, graph.kinds):
        kids = graph.succ[graph.index[n]]
        if k.is_leaf and kids:
            bad.append(f"leaf {n!r} has children")
        if not k.is_leaf and not kids and not graph.explicit:
            bad.append(f"internal node {n!r} has no children")

    if graph.heuristic is not None:
        for n, v in graph.heuristic.items():
            if n not in graph.index:
                bad.append(f"heuristic for undeclared node {n!r}")
                continue
            k = graph.kinds[graph.index[n]]
            if v is UNDEF or (v != INF and v < 0):
                bad.append(f"heuristic for {n!r} is not a cost")
            elif k is TERMINAL and v != 0:
                bad.append(f"terminal leaf {n!r} must have heuristic 0")
            elif k is NONTERMINAL and v != INF:
                bad.append(f"nonterminal leaf {n!r} must have heuristic INF")
    return ValidationReport(bad)


def require_valid(graph):
    report = validate(graph)
    if not report.ok:
        raise GraphError(report.violations)
    return graph


def build(start, kinds, arcs, heuristic=None, **kw):
    """Shorthand: ``kinds`` maps id -> kind (insertion order is declaration order)."""
    g = AndOrGraph(list(kinds.items()), arcs, start, heuristic, **kw)
    return require_valid(g)
