"""Command line entry point: ``cyclic-aog {solve,oracle,gen,bench,validate}``."""

import argparse
import csv
import importlib
import sys

from . import mes as oracle
from .aogfile import ParseError, dump, load
from .baselines import Diagnostic, ao_star, rev_star
from .costs import format_cost
from .genbench import GenParams, GiveUp, derive_heuristic, generate, load_config, run_experiment
from .graph import GraphError, validate
from .result import BudgetExhausted
from .s1 import s1_solve
from .s2 import s2_solve


class UsageError(Exception):
    pass


def _graph(args, check=True):
    if not args.graph:
        raise UsageError("--graph is required")
    return load(args.graph, check=check)


def _source(target):
    mod, _, attr = target.partition(":")
    if not attr:
        raise UsageError("--source expects module:attribute")
    obj = getattr(importlib.import_module(mod), attr)
    # a class or factory is called; an object with expand() is used as is
    if isinstance(obj, type) or (callable(obj) and not hasattr(obj, "expand")):
        obj = obj()
    return obj


def _write_trace(path, header, rows, scale):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([format_cost(x, scale) if isinstance(x, (int, float)) and k not in (0,)
                        else x for k, x in enumerate(row)])


def cmd_solve(args, out):
    alg = args.alg
    if args.source:
        if alg not in ("s2", "aostar"):
            raise UsageError("--source only works with s2 and aostar")
        if args.budget is None:
            raise UsageError("--source needs --budget")
        target = _source(args.source)
    else:
        target = _graph(args)
    if alg == "s1":
        res = s1_solve(target)
    elif alg == "revstar":
        res = rev_star(target)
    elif alg == "s2":
        res = s2_solve(target, budget=args.budget)
    else:
        res = ao_star(target, budget=args.budget)
    if isinstance(res, Diagnostic):
        print(res.summary(), file=out)
        print(f"# {res.message}; expanded {' '.join(res.expansion_trace)}", file=out)
        return 1
    print(res.summary(), file=out)
    if args.trace:
        scale = res.scale
        if alg in ("s1", "revstar"):
            _write_trace(args.trace, ["iter", "node", "h"], res.log, scale)
        else:
            _write_trace(args.trace, ["iter", "expanded", "closed_order", "h(s)", "front(s)"],
                         res.log, scale)
    return 0 if res.ok else 1


def _nodes(g, args):
    if args.node is None:
        return list(g.ids)
    if args.node not in g:
        raise UsageError(f"unknown node {args.node!r}")
    return [args.node]


def cmd_oracle(args, out):
    g = _graph(args)
    limit = args.limit or oracle.DEFAULT_LIMIT
    verb = args.verb
    fmt = lambda c: format_cost(c, g.scale)    # noqa: E731
    many = args.node is None
    if verb == "enumerate":
        for n in _nodes(g, args):
            found = oracle.enumerate_mes(g, n, limit)
            print(f"# {len(found)} MESs below {n}", file=out)
            for m in found:
                print(oracle.format_mes(m), file=out)
                print(file=out)
    elif verb == "classify-node":
        for n in _nodes(g, args):
            # both methods, checked against each other
            t = oracle.classify_node(g, n, limit)
            print(f"{n} {t}" if many else t, file=out)
    elif verb == "classify-mes":
        for n in _nodes(g, args):
            for k, m in enumerate(oracle.enumerate_mes(g, n, limit), 1):
                print(f"{n} {k} {oracle.classify_mes(m)} "
                      f"{fmt(oracle.beta(n, m))}", file=out)
    elif verb in ("hstar", "hprime"):
        fn = oracle.h_star if verb == "hstar" else oracle.h_prime
        for n in _nodes(g, args):
            v = fmt(fn(g, n, limit))
            print(f"{n} {v}" if many else v, file=out)
    elif verb == "compose":
        if args.node is None:
            raise UsageError("compose needs --node")
        n = args.node
        parts = []
        for c, w in g.children(n):
            pick = next((m for m in oracle.enumerate_mes(g, c, limit, complete_only=True)
                         if n not in m.nodes), None)
            if pick is None:
                print(f"# no usable MES below {c}", file=out)
                return 1
            parts.append(pick)
            if g.kind(n).value == "OR":
                break
        m = oracle.compose_qk(parts, n)
        print(oracle.format_mes(m), file=out)
    return 0


def cmd_gen(args, out):
    if args.nodes is None or not args.out:
        raise UsageError("gen needs --nodes and --out")
    p = GenParams(args.nodes, args.and_pct, args.cyclic, args.branching,
                  seed=args.seed)
    try:
        p.check()
        g = generate(p)
    except ValueError as e:
        raise UsageError(str(e)) from None
    except GiveUp as e:
        print(str(e), file=sys.stderr)
        return 1
    if args.heur:
        g = g.with_heuristic(derive_heuristic(g, p.heur_band, p.seed))
    dump(g, args.out)
    print(f"wrote {args.out}: {len(g)} nodes, {len(g.arcs)} arcs", file=out)
    return 0


def cmd_bench(args, out):
    if not args.config:
        raise UsageError("bench needs --config")
    cfg = load_config(args.config)
    if args.out:
        cfg.output = args.out
    if args.seed is not None:
        cfg.seed_base = args.seed
    records = run_experiment(cfg)
    for r in records:
        print(f"{r.algorithm:8s} n={r.nodes} and={r.and_pct:g} cyclic={r.cyclic} "
              f"trials={r.trials} evals={r.mean['evals']:.1f} "
              f"expansions={r.mean['expansions']:.1f} failures={r.failures}", file=out)
    return 0


def cmd_validate(args, out):
    g = _graph(args, check=False)
    report = validate(g)
    if report.ok:
        print("ok", file=out)
        return 0
    for v in report.violations:
        print(v, file=out)
    return 2


def build_parser():
    ap = argparse.ArgumentParser(prog="cyclic-aog", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="run a search")
    p.add_argument("--alg", choices=["s1", "s2", "aostar", "revstar"], default="s1")
    p.add_argument("--graph")
    p.add_argument("--source", help="module:attr giving a programmatic source")
    p.add_argument("--trace")
    p.add_argument("--budget", type=int)

    p = sub.add_parser("oracle", help="exhaustive MES oracle")
    p.add_argument("verb", choices=["enumerate", "classify-node", "classify-mes",
                                    "hstar", "hprime", "compose"])
    p.add_argument("--graph")
    p.add_argument("--node")
    p.add_argument("--limit", type=int)

    p = sub.add_parser("gen", help="write a random solvable instance")
    p.add_argument("--nodes", type=int)
    p.add_argument("--and-pct", type=float, default=30)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--branching", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--heur", action="store_true", help="add derived heuristic values")
    p.add_argument("--out")

    p = sub.add_parser("bench", help="run an experiment matrix")
    p.add_argument("--config")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("validate", help="check a graph file")
    p.add_argument("--graph")
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    handler = {"solve": cmd_solve, "oracle": cmd_oracle, "gen": cmd_gen,
               "bench": cmd_bench, "validate": cmd_validate}[args.cmd]
    try:
        return handler(args, out)
    except (UsageError, ParseError, GraphError, OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        if isinstance(e, GraphError):
            for v in e.violations:
                print(v, file=out)
        return 2
    except (BudgetExhausted, oracle.LimitExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
