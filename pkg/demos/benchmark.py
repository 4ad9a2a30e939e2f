"""A small S1 / REV* / S2 / AO* comparison on generated graphs.

Usage: python demos/benchmark.py [trials] [nodes]
"""

import sys

from cyclic_aog.genbench import ExperimentConfig, run_experiment

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20
nodes = int(sys.argv[2]) if len(sys.argv) > 2 else 500

for cyclic, algs in ((True, ("s1", "revstar", "s2")), (False, ("s1", "revstar", "s2", "aostar"))):
    cfg = ExperimentConfig(algorithms=algs, node_counts=(nodes,), and_pcts=(30, 50),
                           cyclic=(cyclic,), trials=trials)
    print(f"\n{'cyclic' if cyclic else 'acyclic'} graphs, {nodes} nodes, {trials} trials")
    print(f"{'alg':8s} {'and%':>5s} {'time us':>10s} {'evals':>9s} {'selections':>10s} "
          f"{'expansions':>10s}")
    for r in run_experiment(cfg):
        m = r.mean
        print(f"{r.algorithm:8s} {r.and_pct:5g} {m['time_us']:10.0f} {m['evals']:9.1f} "
              f"{m['selections']:10.1f} {m['expansions']:10.1f}")
