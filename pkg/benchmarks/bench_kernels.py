"""Timing comparison of the compiled and pure-Python kernels.

Runs the roof annealer and the Bloch-lattice capacity scan through both
backends on the same inputs and prints a small table.  Usage:

    python benchmarks/bench_kernels.py [--restarts 32] [--steps 2500] [--res 120]
"""

from __future__ import annotations

import argparse
import time

import numpy as np


def load_backends():
    backends = {}
    from ranktwo._kernels import _ref

    backends["python"] = _ref
    try:
        from ranktwo._kernels import _core

        backends["compiled"] = _core
    except ImportError:
        print("compiled backend not built, timing pure Python only")
    return backends


def make_roof_problem(seed: int = 7):
    from ranktwo.roof import _rank_factor
    from ranktwo.sampling import random_kraus_channel, random_mixed

    rng = np.random.default_rng(seed)
    ch = random_kraus_channel(2, 2, rng)
    x = random_mixed(2, rng)
    v = _rank_factor(x)
    av = np.einsum("mab,br->mar", np.asarray(ch.kraus), v)
    return av, 4


def make_grid_problem(seed: int = 11):
    from ranktwo.entanglement import _QubitChannelData
    from ranktwo.sampling import random_canonical_tp

    rng = np.random.default_rng(seed)
    ch = random_canonical_tp(rng)
    data = _QubitChannelData(ch, 2.0)
    theta_m = ch.theta.matrix
    absdet = abs(np.linalg.det(theta_m))
    return data.mb, data.tb, theta_m, absdet


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--restarts", type=int, default=32)
    parser.add_argument("--steps", type=int, default=2500)
    parser.add_argument("--res", type=int, default=120)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = load_backends()
    av, n = make_roof_problem()
    mb, tb, theta_m, absdet = make_grid_problem()
    log2 = float(np.log(2.0))

    rows = []
    for name, mod in backends.items():
        best = np.inf
        value = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            value, _ = mod.roof_anneal(av, n, args.restarts, args.steps, 123, 0, log2)
            best = min(best, time.perf_counter() - t0)
        rows.append(("roof_anneal", name, best, value))

        best = np.inf
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            gval, ix, iy, iz = mod.grid_scan(mb, tb, theta_m, absdet, args.res, log2)
            best = min(best, time.perf_counter() - t0)
        rows.append((f"grid_scan({args.res})", name, best, gval))

    print(f"{'kernel':<18} {'backend':<10} {'best of ' + str(args.repeat):>12}  value")
    for kernel, name, secs, value in rows:
        print(f"{kernel:<18} {name:<10} {secs:>10.3f}s  {value:.12f}")

    names = [n for n in ("python", "compiled") if n in backends]
    if len(names) == 2:
        for kernel in {r[0] for r in rows}:
            times = {r[1]: r[2] for r in rows if r[0] == kernel}
            print(f"{kernel}: compiled is {times['python'] / times['compiled']:.1f}x faster")


if __name__ == "__main__":
    main()
