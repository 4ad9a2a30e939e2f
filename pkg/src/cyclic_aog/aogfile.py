"""Reading and writing the line-oriented ``.aog`` format.

::

    start <id>
    node <id> OR|AND|TERMINAL|NONTERMINAL
    arc <parent> <child> <cost>
    heur <id> <value|INF>

``#`` starts a comment.  Two optional directives extend the format:
``scale <int>`` sets the fixed-point scale (costs are stored as
``value * scale`` integers) and ``explicit`` marks a partially expanded
snapshot whose childless internal nodes are tips.
"""

from pathlib import Path

from .costs import format_cost, parse_cost
from .graph import AndOrGraph, NodeKind, require_valid


class ParseError(ValueError):
    def __init__(self, lineno, msg):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")


_KINDS = {k.value: k for k in NodeKind}


def loads(text, *, check=True):
    start = None
    scale = 1
    explicit = False
    nodes, raw_arcs, raw_heur = [], [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "start":
            if len(rest) != 1:
                raise ParseError(lineno, "usage: start <id>")
            if start is not None:
                raise ParseError(lineno, "start given twice")
            start = rest[0]
        elif head == "node":
            if len(rest) != 2 or rest[1].upper() not in _KINDS:
                raise ParseError(lineno, "usage: node <id> OR|AND|TERMINAL|NONTERMINAL")
            nodes.append((rest[0], _KINDS[rest[1].upper()]))
        elif head == "arc":
            if len(rest) != 3:
                raise ParseError(lineno, "usage: arc <parent> <child> <cost>")
            raw_arcs.append((lineno, rest[0], rest[1], rest[2]))
        elif head == "heur":
            if len(rest) != 2:
                raise ParseError(lineno, "usage: heur <id> <value|INF>")
            raw_heur.append((lineno, rest[0], rest[1]))
        elif head == "scale":
            if len(rest) != 1 or not rest[0].isdigit() or int(rest[0]) < 1:
                raise ParseError(lineno, "usage: scale <positive int>")
            scale = int(rest[0])
        elif head == "explicit":
            explicit = True
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if not nodes:
        raise ParseError(0, "no node declarations")

    arcs = []
    for lineno, p, c, w in raw_arcs:
        try:
            cost = parse_cost(w, scale)
        except ValueError as e:
            raise ParseError(lineno, str(e)) from None
        if cost == float("inf"):
            raise ParseError(lineno, "arc cost must be finite")
        arcs.append((p, c, cost))
    heur = None
    if raw_heur:
        heur = {}
        for lineno, n, v in raw_heur:
            try:
                heur[n] = parse_cost(v, scale)
            except ValueError as e:
                raise ParseError(lineno, str(e)) from None
    g = AndOrGraph(nodes, arcs, start, heur, explicit=explicit, scale=scale)
    return require_valid(g) if check else g


def load(path, *, check=True):
    return loads(Path(path).read_text(encoding="utf-8"), check=check)


def dumps(graph):
    s = graph.scale
    out = [f"start {graph.start}"]
    if s != 1:
        out.append(f"scale {s}")
    if graph.explicit:
        out.append("explicit")
    for n, k in graph.nodes:
        out.append(f"node {n} {k.value}")
    for p, c, w in graph.arcs:
        out.append(f"arc {p} {c} {format_cost(w, s)}")
    if graph.heuristic is not None:
        for n in graph.ids:
            if n in graph.heuristic:
                out.append(f"heur {n} {format_cost(graph.heuristic[n], s)}")
    return "\n".join(out) + "\n"


def dump(graph, path):
    Path(path).write_text(dumps(graph), encoding="utf-8")
