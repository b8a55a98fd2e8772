"""Time the numba kernels against the plain Python/numpy fallback.

Each backend runs in its own interpreter because the choice is fixed at
import time. Usage:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, time
import numpy as np
from leancut import fixtures as fx, kernels, oracle
from leancut._accel import backend
from leancut.corpus import random_multigraph
from leancut.leanness import is_lean
from leancut.linkage import linking_count

repeat = int(sys.argv[1])
r = random.Random(1)
graphs = [random_multigraph(r, 8, 20) for _ in range(40)]
sets = [(g, r.sample(sorted(g.edges), 5), r.sample(sorted(g.edges), 5)) for g in graphs]

def timed(fn):
    fn()  # warm-up, includes compilation
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best

out = {"backend": backend()}
out["linking_count x40"] = timed(lambda: [linking_count(g, A, B) for g, A, B in sets])
five = random_multigraph(r, 5, 9)
out["brute_force_tcw n=5 m=9"] = timed(lambda: oracle.brute_force_tcw(five))
out["is_lean barbell3ec two bags"] = timed(lambda: is_lean(fx.barbell3ec(), fx.two_bags({0, 1}, {2, 3})))
print(json.dumps(out))
"""


def run(disable, repeat):
    env = dict(os.environ)
    env.pop("LEANCUT_DISABLE_NUMBA", None)
    if disable:
        env["LEANCUT_DISABLE_NUMBA"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'workload':32s} {fast['backend']:>10s} {slow['backend']:>10s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:32s} {fast[key]:10.4f} {slow[key]:10.4f} {slow[key] / fast[key]:7.1f}x")


if __name__ == "__main__":
    main()
