"""Random instances, synthetic heuristics and the benchmark harness."""

import csv
import itertools
import math
import random
import statistics
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from .costs import INF
from .graph import AND, NONTERMINAL, OR, TERMINAL, AndOrGraph, require_valid
from .s1 import s1_costs, s1_solve

SENTINEL = 10**9


class GiveUp(RuntimeError):
    pass


@dataclass(frozen=True)
class GenParams:
    node_count: int
    and_pct: float = 30
    cyclic: bool = False
    branching: int = 3
    heur_band: tuple = (0.90, 1.00)
    seed: int = 0
    terminal_pct: float = 18
    nonterminal_pct: float = 2
    back_prob: float = 0.15
    layers: int = 0             # 0: about sqrt(#internal nodes)
    cost_range: tuple = (1, 10)
    max_tries: int = 200

    def check(self):
        bad = []
        if self.node_count < 1:
            bad.append("node_count must be positive")
        if not 0 <= self.and_pct <= 100:
            bad.append("and_pct must lie in [0, 100]")
        lo, hi = self.heur_band
        if not 0 < lo <= hi <= 1:
            bad.append("heur_band needs 0 < lo <= hi <= 1")
        if self.branching < 1:
            bad.append("branching must be positive")
        if self.terminal_pct <= 0 or self.nonterminal_pct < 0 \
                or self.terminal_pct + self.nonterminal_pct > 100:
            bad.append("bad leaf mix")
        if not 0 <= self.back_prob <= 1:
            bad.append("back_prob must lie in [0, 1]")
        if self.cost_range[0] < 1 or self.cost_range[1] < self.cost_range[0]:
            bad.append("bad cost range")
        if bad:
            raise ValueError("; ".join(bad))


def _layered(p, rng):
    n = p.node_count
    if n == 1:
        return AndOrGraph([("n0", TERMINAL)], [], "n0")
    leaf_share = (p.terminal_pct + p.nonterminal_pct) / 100
    n_leaf = min(n - 1, max(1, round(n * leaf_share)))
    n_int = n - n_leaf
    n_nt = round(n_leaf * p.nonterminal_pct / (p.terminal_pct + p.nonterminal_pct))
    n_nt = min(n_nt, n_leaf - 1)
    leaf_kinds = [NONTERMINAL] * n_nt + [TERMINAL] * (n_leaf - n_nt)
    rng.shuffle(leaf_kinds)
    n_and = round(n_int * p.and_pct / 100)
    and_set = set(rng.sample(range(n_int), n_and))
    kinds = [AND if i in and_set else OR for i in range(n_int)] + leaf_kinds

    n_layers = p.layers or max(1, round(math.sqrt(n_int)))
    n_layers = min(n_layers, n_int)
    layer = [i * n_layers // n_int for i in range(n_int)] + [n_layers] * n_leaf
    first_of = {}
    for i in range(n):
        first_of.setdefault(layer[i], i)
    lo, hi = p.cost_range
    arcs = []
    for i in range(n_int):
        later = first_of[layer[i] + 1]
        picked = []
        for _ in range(p.branching):
            for _attempt in range(8):
                if p.cyclic and rng.random() < p.back_prob:
                    j = rng.randrange(0, later)
                else:
                    j = rng.randrange(later, n)
                if j not in picked:
                    picked.append(j)
                    break
        arcs += [(f"n{i}", f"n{j}", rng.randint(lo, hi)) for j in picked]
    nodes = [(f"n{i}", k) for i, k in enumerate(kinds)]
    return AndOrGraph(nodes, arcs, "n0")


def generate(params):
    """A validated random graph whose start node has a solution graph."""
    params.check()
    rng = random.Random(params.seed)
    for _ in range(params.max_tries):
        g = require_valid(_layered(params, rng))
        if s1_solve(g).ok:
            return g
    raise GiveUp(f"no solvable start in {params.max_tries} tries "
                 f"(acceptance rate 0/{params.max_tries})")


def derive_heuristic(graph, band=(0.90, 1.00), seed=0):
    """Admissible estimates: a random fraction (within ``band``) of the
    optimal cost for solvable nodes, rounded down; a large finite sentinel
    for the rest."""
    lo, hi = band
    if not 0 < lo <= hi <= 1:
        raise ValueError("band needs 0 < lo <= hi <= 1")
    exact = s1_costs(graph)
    rng = random.Random(seed)
    h = {}
    for n, k in graph.nodes:
        if k is TERMINAL:
            h[n] = 0
        elif k is NONTERMINAL:
            h[n] = INF
        else:
            v = exact.get(n, INF)
            h[n] = math.floor(rng.uniform(lo, hi) * v) if v != INF else SENTINEL
    return h


def with_heuristic(graph, band=(0.90, 1.00), seed=0):
    return graph.with_heuristic(derive_heuristic(graph, band, seed))


# -- small instances for oracle checks ---------------------------------------

def _options(n, child_sets, costs, leaves=True):
    opts = [(TERMINAL, ()), (NONTERMINAL, ())] if leaves else []
    for kind in (OR, AND):
        for cs in child_sets:
            for ws in itertools.product(costs, repeat=len(cs)):
                opts.append((kind, tuple(zip(cs, ws))))
    return opts


def _orbit_reps(n, labels, options, movable):
    """Option combos for nodes ``0..n-1`` (children drawn from ``labels``
    nodes), one per renaming of ``movable``: the smallest of each class."""
    where = {o: k for k, o in enumerate(options)}
    perms = []
    for img in itertools.permutations(movable):
        pi = list(range(labels))
        for a, b in zip(movable, img):
            pi[a] = b
        if pi == list(range(labels)):
            continue
        table = [where.get((kind, tuple(sorted((pi[j], w) for j, w in kids))))
                 for kind, kids in options]
        perms.append((pi, table))
    for combo in itertools.product(range(len(options)), repeat=n):
        keep = True
        for pi, table in perms:
            new = [0] * n
            for i, o in enumerate(combo):
                new[pi[i]] = table[o]
            if tuple(new) < combo:
                keep = False
                break
        if keep:
            yield combo


def _assemble(n, options, combo, extra=()):
    ids = [str(i) for i in range(n + len(extra))]
    nodes = [(ids[i], options[o][0]) for i, o in enumerate(combo)] + list(extra)
    arcs = [(ids[i], ids[j], w) for i, o in enumerate(combo) for j, w in options[o][1]]
    return AndOrGraph(nodes, arcs, "0")


def small_graphs(n, max_children=None, costs=(1,), up_to_relabelling=False):
    """Every graph on nodes ``0..n-1`` (start ``0``) in which each internal
    node has between 1 and ``max_children`` children, self-loops allowed.

    With ``up_to_relabelling`` only one graph per renaming of the
    non-start nodes is produced.
    """
    top = n if max_children is None else max_children
    child_sets = [c for r in range(1, top + 1)
                  for c in itertools.combinations(range(n), r)]
    options = _options(n, child_sets, costs)
    if up_to_relabelling:
        combos = _orbit_reps(n, n, options, list(range(1, n)))
    else:
        combos = itertools.product(range(len(options)), repeat=n)
    for combo in combos:
        yield _assemble(n, options, combo)


def binary_graphs(n):
    """Graphs with ``n - 2`` internal nodes of exactly two children each,
    over one terminal and one nonterminal leaf, unit costs, one graph per
    renaming of the non-start internal nodes."""
    if n < 3:
        raise ValueError("need at least three nodes")
    k = n - 2
    options = _options(n, list(itertools.combinations(range(n), 2)), (1,), leaves=False)
    leaves = [(str(k), TERMINAL), (str(k + 1), NONTERMINAL)]
    for combo in _orbit_reps(k, n, options, list(range(1, k))):
        yield _assemble(k, options, combo, leaves)


def random_graph(rng, n, p_arc=0.35, and_share=0.4, leaf_share=0.3,
                 max_cost=4, explicit=False):
    """Unstructured random graph, cycles and self-loops welcome."""
    ids = [str(i) for i in range(n)]
    kinds, arcs = [], []
    for i in range(n):
        if i and rng.random() < leaf_share:
            kinds.append(TERMINAL if rng.random() < 0.75 else NONTERMINAL)
            continue
        kinds.append(AND if rng.random() < and_share else OR)
        kids = [j for j in range(n) if rng.random() < p_arc]
        if not kids and not explicit:
            kids = [rng.randrange(n)]
        arcs += [(ids[i], ids[j], rng.randint(1, max_cost)) for j in kids]
    heur = None
    if explicit:
        heur = {ids[i]: (0 if k is TERMINAL else INF if k is NONTERMINAL
                         else rng.randint(0, 6))
                for i, k in enumerate(kinds)}
    g = AndOrGraph(list(zip(ids, kinds)), arcs, "0", heur, explicit=explicit)
    return require_valid(g)


# -- benchmark harness --------------------------------------------------------

@dataclass
class BenchRecord:
    algorithm: str
    nodes: int
    and_pct: float
    cyclic: bool
    trials: int
    mean: dict
    stddev: dict
    failures: int = 0
    samples: dict = field(default_factory=dict, repr=False)


@dataclass
class ExperimentConfig:
    algorithms: tuple = ("s1", "revstar")
    node_counts: tuple = (1000,)
    and_pcts: tuple = (30,)
    cyclic: tuple = (True,)
    trials: int = 100
    seed_base: int = 0
    output: str = ""
    branching: int = 3
    heur_band: tuple = (0.90, 1.00)
    back_prob: float = 0.15


METRICS = ("time_us", "evals", "selections", "expansions")
CSV_HEADER = (["alg", "nodes", "and_pct", "cyclic", "trials"]
              + [f"mean_{m}" for m in METRICS]
              + [f"stddev_{m}" for m in METRICS])


def _parse_bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "cyclic"):
        return True
    if t in ("0", "false", "no", "acyclic"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def load_config(path):
    """Read ``key = value`` lines; lists are comma separated."""
    cfg = ExperimentConfig()
    conv = {
        "algorithms": lambda v: tuple(x.strip().lower() for x in v.split(",") if x.strip()),
        "node_counts": lambda v: tuple(int(x) for x in v.split(",")),
        "and_pcts": lambda v: tuple(float(x) for x in v.split(",")),
        "cyclic": lambda v: tuple(_parse_bool(x) for x in v.split(",")),
        "trials": int,
        "seed_base": int,
        "output": str.strip,
        "branching": int,
        "heur_band": lambda v: tuple(float(x) for x in v.split(",")),
        "back_prob": float,
    }
    changes = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in conv:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        changes[key] = conv[key](value)
    return replace(cfg, **changes)


def _runner(alg):
    from .baselines import ao_star, rev_star
    from .s2 import s2_solve
    table = {"s1": s1_solve, "s2": s2_solve, "aostar": ao_star, "revstar": rev_star}
    try:
        return table[alg]
    except KeyError:
        raise ValueError(f"unknown algorithm {alg!r}") from None


def _fmt(x):
    return f"{x:.3f}".rstrip("0").rstrip(".") if isinstance(x, float) else str(x)


def run_experiment(config):
    """Run every algorithm on the same seeded graphs of every grid cell."""
    records = []
    runners = {a: _runner(a) for a in config.algorithms}
    for n, pct, cyc in itertools.product(config.node_counts, config.and_pcts,
                                         config.cyclic):
        samples = {a: {m: [] for m in METRICS} for a in config.algorithms}
        failures = {a: 0 for a in config.algorithms}
        for t in range(config.trials):
            params = GenParams(n, pct, cyc, config.branching, config.heur_band,
                               seed=config.seed_base + t, back_prob=config.back_prob)
            try:
                g = generate(params)
            except GiveUp:
                for a in config.algorithms:
                    failures[a] += 1
                continue
            gh = with_heuristic(g, config.heur_band, params.seed)
            for a, run in runners.items():
                t0 = time.perf_counter_ns()
                try:
                    r = run(gh)
                except Exception:       # recorded, the cell goes on
                    failures[a] += 1
                    continue
                dt = (time.perf_counter_ns() - t0) / 1000
                if not hasattr(r, "status"):
                    failures[a] += 1    # AO* diagnostic
                    continue
                row = samples[a]
                row["time_us"].append(dt)
                row["evals"].append(r.evaluations)
                row["selections"].append(r.selections)
                row["expansions"].append(r.expansions)
        for a in config.algorithms:
            s = samples[a]
            k = len(s["evals"])
            mean = {m: statistics.fmean(s[m]) if k else float("nan") for m in METRICS}
            sd = {m: statistics.pstdev(s[m]) if k else float("nan") for m in METRICS}
            records.append(BenchRecord(a, n, pct, cyc, k, mean, sd, failures[a], s))
    if config.output:
        write_csv(records, config.output)
    return records


def write_csv(records, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([r.algorithm, r.nodes, _fmt(r.and_pct), str(r.cyclic).lower(),
                        r.trials]
                       + [_fmt(r.mean[m]) for m in METRICS]
                       + [_fmt(r.stddev[m]) for m in METRICS])
