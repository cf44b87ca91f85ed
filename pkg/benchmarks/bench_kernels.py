"""Compare the compiled kernels against the pure-Python fallback.

Each workload runs in a fresh interpreter, once with numba and once with
MULTIFAN_DISABLE_JIT=1, so compile time and import state do not leak
between modes. The first compiled call is timed separately as warm-up.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
from multifan._jit import JIT_ENABLED
from multifan.chromatic import chromatic_index, enumerate_colorings
from multifan.enumeration import enumerate_connected
from multifan.graph import Graph, make_family

name, repeat = sys.argv[1], int(sys.argv[2])

def random_graphs(count, seed=7):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(9, 13)
        es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35]
        g = Graph(n, es)
        if g.m:
            out.append(g)
    return out

if name == "enumerate":
    order = int(sys.argv[3])
    work = lambda: sum(1 for _ in enumerate_connected(order))
elif name == "chromatic":
    graphs = random_graphs(60)
    work = lambda: sum(chromatic_index(g).chi_prime for g in graphs)
elif name == "orbits":
    g = make_family("petersen-v")
    work = lambda: sum(len(enumerate_colorings(g, e, 3)) for e in g.sorted_edges())
else:
    raise SystemExit(f"unknown workload {name}")

t0 = time.perf_counter()
result = work()
first = time.perf_counter() - t0
times = []
for _ in range(repeat):
    t0 = time.perf_counter()
    assert work() == result
    times.append(time.perf_counter() - t0)
print(json.dumps({"jit": JIT_ENABLED, "result": result, "first": first, "best": min(times)}))
"""


def run(workload: list[str], repeat: int, jit: bool) -> dict:
    env = dict(os.environ)
    env.pop("MULTIFAN_DISABLE_JIT", None)
    if not jit:
        env["MULTIFAN_DISABLE_JIT"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, workload[0], str(repeat), *workload[1:]],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller enumeration order")
    args = ap.parse_args()
    workloads = [
        ["enumerate", "6" if args.quick else "7"],
        ["chromatic"],
        ["orbits"],
    ]
    print(f"{'workload':<14} {'python s':>10} {'numba s':>10} {'first call':>11} {'speedup':>8}")
    for w in workloads:
        py = run(w, args.repeat, jit=False)
        nb = run(w, args.repeat, jit=True)
        if py["result"] != nb["result"]:
            raise SystemExit(f"{w}: results differ between modes: {py['result']} vs {nb['result']}")
        label = ":".join(w)
        speedup = py["best"] / nb["best"] if nb["best"] > 0 else float("inf")
        print(f"{label:<14} {py['best']:>10.3f} {nb['best']:>10.3f} {nb['first']:>11.3f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
