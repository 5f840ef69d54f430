"""Compare the numba kernels with the pure-Python fallback.

Each backend runs in its own interpreter (the switch is read at import time):

    python3 benchmarks/bench_kernels.py            # both backends, table
    python3 benchmarks/bench_kernels.py --worker   # one backend, JSON
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _timed(fn, repeat):
    fn()  # warm-up (and JIT compile)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def worker(repeat: int) -> dict:
    from hadminor import _kernels
    from hadminor.algorithms import max_touching_family, run_log
    from hadminor.generators import complement_cliques, gnp
    from hadminor.graph import Graph, alpha_mask

    dense = [gnp(60, 0.3, s) for s in range(5)]
    wide = [gnp(100, 0.5, s) for s in range(2)]
    fam = [complement_cliques([5, 5, 5, 5, 5], 0.1, seed=s) for s in range(3)]
    mid = [gnp(18, 0.3, s) for s in range(20)]

    def fresh_alpha(graphs):
        # rebuild so the per-graph alpha cache is cold
        return [alpha_mask(Graph(g.n, g.edges), g.full_mask) for g in graphs]

    cases = {
        "alpha, G(60, 0.3) x5": lambda: fresh_alpha(dense),
        "alpha, G(100, 0.5) x2 (multiword)": lambda: fresh_alpha(wide),
        "step-1 family, n=25 x3": lambda: [max_touching_family(g) for g in fam],
        "run_log, G(18, 0.3) x20": lambda: [run_log(Graph(g.n, g.edges)) for g in mid],
    }
    return {
        "numba": _kernels.USE_NUMBA,
        "results": {name: _timed(fn, repeat) for name, fn in cases.items()},
        "check": [fresh_alpha(dense), fresh_alpha(wide)],
    }


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--worker", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if args.worker:
        print(json.dumps(worker(args.repeat)))
        return
    runs = {}
    for flag in ("1", "0"):
        env = dict(os.environ, HADMINOR_NUMBA=flag)
        out = subprocess.run(
            [sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout
        runs[flag] = json.loads(out)
    if runs["1"]["check"] != runs["0"]["check"]:
        sys.exit("backends disagree on independence numbers")
    if not runs["1"]["numba"]:
        print("numba unavailable; both columns use the fallback")
    print(f"{'case':40s} {'numba (s)':>10s} {'python (s)':>11s} {'speed-up':>9s}")
    for name, fast in runs["1"]["results"].items():
        slow = runs["0"]["results"][name]
        print(f"{name:40s} {fast:10.4f} {slow:11.4f} {slow / fast:8.1f}x")


if __name__ == "__main__":
    main()
