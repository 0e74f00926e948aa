"""Time the hot kernels under numba and under the plain-Python fallback.

Usage:
    python benchmarks/bench_kernels.py [--perms 200] [--n 8]

Each backend runs in its own interpreter (the backend is fixed at import by
PRISMDOM_DISABLE_NUMBA). The numba run is warmed up first so compile time is
excluded; results from both backends are compared for equality.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from prismdom import _jit, _kernels
from prismdom.graph import cycle, random_graph
from prismdom.prism import Permutation
from prismdom.sweep import permutation_matrix, sample_permutations

n, count = int(sys.argv[1]), int(sys.argv[2])
g = random_graph(n, seed=11, density="2/5")
perms = permutation_matrix(sample_permutations(n, count, seed=3))
targets = np.array([n, 3 * n // 2, 2 * n], dtype=np.int64)
ring = cycle(12).closed_array
ring_perm = np.arange(12, dtype=np.int64)

def warm():
    _kernels.batch_prism_profiles(g.closed_array, perms[:2])
    _kernels.batch_prism_min_k(g.closed_array, perms[:2], targets)
    _kernels.batch_prism_gamma(g.closed_array, perms[:2])

warm()
rows = {}
for name, fn in [
    ("prism profiles", lambda: _kernels.batch_prism_profiles(g.closed_array, perms)),
    ("prism gamma_p x3", lambda: _kernels.batch_prism_min_k(g.closed_array, perms, targets)),
    ("prism gamma", lambda: _kernels.batch_prism_gamma(g.closed_array, perms)),
    ("gamma C12 prism", lambda: _kernels.min_dominating_set(_kernels.prism_closed(ring, ring_perm))[0]),
]:
    t0 = time.perf_counter()
    out = fn()
    rows[name] = {"seconds": time.perf_counter() - t0, "result": np.asarray(out).tolist()}
print(json.dumps({"numba": _jit.NUMBA_OK, "rows": rows}))
"""


def run(disable: bool, n: int, count: int) -> dict:
    env = dict(os.environ)
    env.pop("PRISMDOM_DISABLE_NUMBA", None)
    if disable:
        env["PRISMDOM_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(n), str(count)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--perms", type=int, default=200)
    args = ap.parse_args()

    fast = run(False, args.n, args.perms)
    slow = run(True, args.n, args.perms)
    if not fast["numba"]:
        print("numba unavailable: both runs used the fallback")
    print(f"random graph n={args.n}, {args.perms} permutations")
    print(f"{'kernel':<20}{'numba s':>12}{'python s':>12}{'speedup':>10}  agree")
    for name, row in fast["rows"].items():
        other = slow["rows"][name]
        speed = other["seconds"] / row["seconds"] if row["seconds"] else float("inf")
        print(f"{name:<20}{row['seconds']:>12.4f}{other['seconds']:>12.4f}{speed:>9.1f}x  "
              f"{row['result'] == other['result']}")


if __name__ == "__main__":
    main()
