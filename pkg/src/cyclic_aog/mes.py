"""Exhaustive MES oracle.

An MES (maximal extendable subgraph) below ``n`` is grown top-down: an OR
node picks one child, an AND node takes all of them, and the growth stops
at a node whose pick would close a cycle.  The stopped choice is still
recorded, so two MESs with the same nodes and arcs can differ.

Everything here enumerates, so it is exponential and only meant for small
graphs.  It is the reference the search algorithms are tested against.
"""

from dataclasses import dataclass, field
from enum import Enum

from .costs import INF, UNDEF, cadd, cmin, csum, format_cost
from .graph import AND, NONTERMINAL, OR, TERMINAL

DEFAULT_LIMIT = 10**6


class LimitExceeded(RuntimeError):
    pass


class MesType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"
    NON_TYPE_III = "non-III"

    def __str__(self):
        return self.value


NodeType = MesType


@dataclass(frozen=True, eq=False)
class Mes:
    host: object = field(repr=False)
    root: str
    nodes: frozenset
    arcs: frozenset
    choices: dict          # OR node -> selected child (included or not)
    terminated: frozenset
    order: tuple = ()      # traversal order, used for printing

    @property
    def key(self):
        idx = self.host.index
        ch = tuple(sorted(self.choices.items(), key=lambda kv: idx[kv[0]]))
        return (self.root, ch, self.terminated)

    def __eq__(self, other):
        return isinstance(other, Mes) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def children(self, u):
        out = [c for c, _ in self.host.children(u) if (u, c) in self.arcs]
        return out

    def tips(self):
        """Z_M: nodes without children inside the MES."""
        heads = {a for a, _ in self.arcs}
        return {u for u in self.nodes if u not in heads}

    def is_mes(self):
        return is_mes(self.host, self)

    def dumps(self):
        lines = [f"root {self.root}"]
        for u in self.order:
            if u in self.choices:
                tag = " TERMINATED" if u in self.terminated else ""
                lines.append(f"choice {u} {self.choices[u]}{tag}")
            elif u in self.terminated:
                lines.append(f"choice {u} * TERMINATED")
        return "\n".join(lines)


# -- enumeration ------------------------------------------------------------

def _walk(g, root, complete_only):
    """Yield the live state ``(order, out, choice, term)`` for each MES below
    ``root`` (indices).  The state is mutated after each yield.

    ``complete_only`` skips every MES with a cycle-terminated node, which
    leaves exactly the MESs whose tips are tips of the host.
    """
    succ, kinds = g.succ, g.kinds
    order = [root]
    seen = {root}
    out = {}
    choice = {}
    term = set()

    def reaches(a, b):
        # is there a path a ->* b among the arcs placed so far?
        if a == b:
            return True
        stack, vis = [a], {a}
        while stack:
            u = stack.pop()
            for v in out.get(u, ()):
                if v == b:
                    return True
                if v not in vis:
                    vis.add(v)
                    stack.append(v)
        return False

    def settled(a, k):
        # every node reachable from a has been decided already
        stack, vis = [a], {a}
        while stack:
            u = stack.pop()
            if u not in out and u not in term and succ[u] and order.index(u) >= k:
                return False
            for v in out.get(u, ()):
                if v not in vis:
                    vis.add(v)
                    stack.append(v)
        return True

    def cut_ok(x):
        if kinds[x] is OR:
            j = choice[x]
            return j == x or (j in seen and reaches(j, x))
        return any(j == x or (j in seen and reaches(j, x)) for j, _ in succ[x])

    def rec(k):
        if k == len(order):
            if all(cut_ok(x) for x in term):
                yield order, out, choice, term
            return
        x = order[k]
        if not succ[x]:
            yield from rec(k + 1)
            return
        if kinds[x] is OR:
            options = [(j,) for j, _ in succ[x]]
        else:
            options = [tuple(j for j, _ in succ[x])]
        for picked in options:
            if kinds[x] is OR:
                choice[x] = picked[0]
            if not any(j == x or reaches(j, x) for j in picked):
                new = [j for j in picked if j not in seen]
                out[x] = picked
                for j in new:
                    seen.add(j)
                    order.append(j)
                yield from rec(k + 1)
                for j in new:
                    seen.discard(j)
                order[len(order) - len(new):] = []
                del out[x]
            if not complete_only:
                # cut here; legal only if some pick turns out to reach x
                hopeless = all(
                    j != x and j in seen and not reaches(j, x) and settled(j, k)
                    for j in picked)
                if not hopeless:
                    term.add(x)
                    yield from rec(k + 1)
                    term.discard(x)
            choice.pop(x, None)

    yield from rec(0)


def _freeze(g, order, out, choice, term):
    ids = g.ids
    return Mes(
        host=g,
        root=ids[order[0]],
        nodes=frozenset(ids[i] for i in order),
        arcs=frozenset((ids[u], ids[v]) for u, vs in out.items() for v in vs),
        choices={ids[u]: ids[v] for u, v in choice.items()},
        terminated=frozenset(ids[u] for u in term),
        order=tuple(ids[i] for i in order),
    )


def iter_mes(graph, n, *, complete_only=False):
    """Lazy version of :func:`enumerate_mes`, without a limit."""
    for state in _walk(graph, graph._idx(n), complete_only):
        yield _freeze(graph, *state)


def enumerate_mes(graph, n, limit=DEFAULT_LIMIT, *, complete_only=False):
    """All MESs rooted at ``n``, in a fixed order."""
    found = []
    for m in iter_mes(graph, n, complete_only=complete_only):
        if len(found) >= limit:
            raise LimitExceeded(f"more than {limit} MESs below {n!r}")
        found.append(m)
    return found


def count_mes(graph, n, limit=DEFAULT_LIMIT, *, by_size=False):
    sizes = {}
    total = 0
    for order, *_ in _walk(graph, graph._idx(n), False):
        total += 1
        if total > limit:
            raise LimitExceeded(f"more than {limit} MESs below {n!r}")
        sizes[len(order)] = sizes.get(len(order), 0) + 1
    return dict(sorted(sizes.items())) if by_size else total


# -- checking a structure against the definition ------------------------------

def is_mes(host, m):
    """Does ``m`` satisfy the MES conditions in ``host``?"""
    if m.root not in m.nodes or any(u not in host for u in m.nodes):
        return False
    out = {u: set() for u in m.nodes}
    for a, b in m.arcs:
        if a not in out or b not in out:
            return False
        out[a].add(b)
    # every node hangs below the root
    stack, vis = [m.root], {m.root}
    while stack:
        for v in out[stack.pop()]:
            if v not in vis:
                vis.add(v)
                stack.append(v)
    if vis != set(m.nodes):
        return False
    if _has_cycle(out):
        return False

    def reaches(a, b):
        stack, vis = [a], {a}
        while stack:
            u = stack.pop()
            if u == b:
                return True
            for v in out[u]:
                if v not in vis:
                    vis.add(v)
                    stack.append(v)
        return False

    for u in m.nodes:
        kids = [c for c, _ in host.children(u)]
        kind = host.kind(u)
        if not kids:
            if out[u] or u in m.terminated or u in m.choices:
                return False
            continue
        if kind is OR:
            c = m.choices.get(u)
            if c not in kids:
                return False
            picked = [c]
        else:
            if u in m.choices:
                return False
            picked = kids
        if u in m.terminated:
            if out[u]:
                return False
            if not any(c == u or (c in out and reaches(c, u)) for c in picked):
                return False
        elif out[u] != set(picked):
            return False
    return True


def _has_cycle(out):
    state = {}
    for s in out:
        if s in state:
            continue
        stack = [(s, iter(out[s]))]
        state[s] = 1
        while stack:
            u, it = stack[-1]
            for v in it:
                if state.get(v) == 1:
                    return True
                if v not in state:
                    state[v] = 1
                    stack.append((v, iter(out[v])))
                    break
            else:
                state[u] = 2
                stack.pop()
    return False


def is_acyclic(m):
    out = {u: set() for u in m.nodes}
    for a, b in m.arcs:
        out[a].add(b)
    return not _has_cycle(out)


def sub_mes(x, m):
    """The part of ``m`` reachable from ``x``.  Use ``.is_mes()`` to ask
    whether it is an MES of the host on its own."""
    if x not in m.nodes:
        raise KeyError(f"{x!r} is not in the MES")
    out = {}
    for a, b in m.arcs:
        out.setdefault(a, []).append(b)
    order, seen = [], {x}
    stack = [x]
    while stack:
        u = stack.pop(0)
        order.append(u)
        for c in m.children(u):
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return Mes(
        host=m.host, root=x, nodes=frozenset(seen),
        arcs=frozenset((a, b) for a, b in m.arcs if a in seen),
        choices={u: c for u, c in m.choices.items() if u in seen},
        terminated=frozenset(u for u in m.terminated if u in seen),
        order=tuple(order),
    )


# -- classification and costs -----------------------------------------------

def classify_mes(m):
    host = m.host
    tips = m.tips()
    if host.explicit:
        return MesType.TYPE_III if m.terminated else MesType.NON_TYPE_III
    if m.terminated or any(not host.kind(u).is_leaf for u in tips):
        return MesType.TYPE_III
    if all(host.kind(u) is TERMINAL for u in tips):
        return MesType.TYPE_I
    return MesType.TYPE_II


def _tip_value(g, u):
    k = g.kinds[u]
    if k is TERMINAL:
        return 0
    if k is NONTERMINAL:
        return INF
    if g.hvals is None or g.hvals[u] is None:
        raise ValueError(f"tip {g.ids[u]!r} needs a heuristic value")
    return g.hvals[u]


def _beta_all(g, out, term):
    memo = {}

    def b(u):
        if u in memo:
            return memo[u]
        if u in term:
            v = UNDEF
        elif u not in out:
            v = _tip_value(g, u)
        else:
            w = dict(g.succ[u])
            parts = [cadd(w[c], b(c)) for c in out[u]]
            v = parts[0] if g.kinds[u] is OR else csum(parts)
        memo[u] = v
        return v

    return b


def beta(u, m):
    """Cost of ``u`` inside ``m``."""
    if u not in m.nodes:
        raise KeyError(f"{u!r} is not in the MES")
    g = m.host
    idx = g.index
    out = {}
    for a, c in m.arcs:
        out.setdefault(idx[a], []).append(idx[c])
    term = {idx[t] for t in m.terminated}
    return _beta_all(g, out, term)(idx[u])


def _best(g, n, limit):
    root = g._idx(n)
    best = UNDEF
    count = 0
    for order, out, choice, term in _walk(g, root, True):
        count += 1
        if count > limit:
            raise LimitExceeded(f"more than {limit} MESs below {n!r}")
        v = _beta_all(g, out, term)(root)
        best = cmin([best, v])
    return best


def h_star(graph, n, limit=DEFAULT_LIMIT):
    """Least beta over the type-I and type-II MESs below ``n``; UNDEF if none."""
    if graph.explicit:
        raise ValueError("h_star needs an implicit graph; use h_prime")
    return _best(graph, n, limit)


def h_prime(explicit_graph, n, limit=DEFAULT_LIMIT):
    """Least beta over the psgs below ``n`` of a grown snapshot."""
    if not explicit_graph.explicit:
        raise ValueError("h_prime needs an explicit snapshot")
    return _best(explicit_graph, n, limit)


def _classify_by_enumeration(g, n, limit):
    best = None
    for m in enumerate_mes(g, n, limit, complete_only=True):
        t = classify_mes(m)
        if t in (MesType.TYPE_I, MesType.NON_TYPE_III):
            return t
        best = t
    return best or MesType.TYPE_III


def _fixpoint(g, base):
    done = [base(i) for i in range(len(g))]
    changed = True
    while changed:
        changed = False
        for i, kids in enumerate(g.succ):
            if done[i] or not kids:
                continue
            hits = [done[j] for j, _ in kids]
            if (any(hits) if g.kinds[i] is OR else all(hits)):
                done[i] = True
                changed = True
    return done


def classify_all_recursive(graph):
    """Node types for every node from the child-composition rules."""
    g = graph
    if g.explicit:
        ok = _fixpoint(g, lambda i: not g.succ[i])
        return {n: MesType.NON_TYPE_III if ok[i] else MesType.TYPE_III
                for i, n in enumerate(g.ids)}
    one = _fixpoint(g, lambda i: g.kinds[i] is TERMINAL)
    two = _fixpoint(g, lambda i: g.kinds[i].is_leaf)
    res = {}
    for i, n in enumerate(g.ids):
        res[n] = (MesType.TYPE_I if one[i] else
                  MesType.TYPE_II if two[i] else MesType.TYPE_III)
    return res


def classify_node(graph, n, limit=DEFAULT_LIMIT, method="both"):
    """Node type of ``n``.

    ``method="both"`` computes it by enumeration and by the composition
    rules and insists they agree; if enumeration hits ``limit`` the
    recursive answer is returned alone.
    """
    if method == "recursive":
        return classify_all_recursive(graph)[n]
    if method == "enumerate":
        return _classify_by_enumeration(graph, n, limit)
    rec = classify_all_recursive(graph)[n]
    try:
        enum = _classify_by_enumeration(graph, n, limit)
    except LimitExceeded:
        return rec
    if enum is not rec:
        raise AssertionError(f"{n}: enumeration says {enum}, composition says {rec}")
    return rec


# -- composition ------------------------------------------------------------

def compose_qk(mes_list, n, arcs=None):
    """Glue non-type-III MESs below the children of ``n`` into one below ``n``.

    ``mes_list[j]`` must be rooted at the j-th child of ``n``.  The first MES
    is copied whole; each later one is walked depth-first from its root and
    contributes nodes until the walk hits something already present.
    """
    if not mes_list:
        raise ValueError("need at least one child MES")
    host = mes_list[0].host
    kids = [c for c, _ in host.children(n)]
    roots = [m.root for m in mes_list]
    if arcs is not None and [a[1] for a in arcs] != roots:
        raise ValueError("arcs do not match the MES roots")
    if host.kind(n) is AND and roots != kids:
        raise ValueError(f"an AND node needs one MES per child, in order: {kids}")
    if host.kind(n) is OR and (len(roots) != 1 or roots[0] not in kids):
        raise ValueError("an OR node takes exactly one child MES")
    for m in mes_list:
        if m.host is not host:
            raise ValueError("MESs come from different graphs")
        if n in m.nodes:
            raise ValueError(f"{n!r} already occurs in the MES below {m.root!r}")
        if classify_mes(m) is MesType.TYPE_III:
            raise ValueError(f"MES below {m.root!r} is type III")

    first = mes_list[0]
    nodes = list(first.order)
    present = set(first.nodes)
    arcset = set(first.arcs)
    choices = dict(first.choices)
    for m in mes_list[1:]:
        def add(x):
            if x in present:
                return
            present.add(x)
            nodes.append(x)
            if x in m.choices:
                choices[x] = m.choices[x]
            for y in m.children(x):
                arcset.add((x, y))
                add(y)
        add(m.root)

    for p in roots:
        arcset.add((n, p))
    if host.kind(n) is OR:
        choices[n] = roots[0]
    return Mes(host=host, root=n, nodes=frozenset(present | {n}),
               arcs=frozenset(arcset), choices=choices,
               terminated=frozenset(), order=(n, *nodes))


def format_mes(m):
    scale = m.host.scale
    types = classify_mes(m)
    head = f"{m.root}: {types} beta={format_cost(beta(m.root, m), scale)}"
    return head + "\n" + m.dumps()
