"""Timing comparison of the compiled Gegenbauer core against the numpy
fallback on the workloads that dominate real runs: full tables for kernel
assembly and single-degree evaluation on dense angle sweeps.

Run:  python benchmarks/bench_core.py
"""

import importlib
import os
import sys
import time
from types import SimpleNamespace

import numpy as np


def _load(backend):
    # reload mutates the module in place, so snapshot the bound functions
    os.environ["ZONALAB_BACKEND"] = backend
    import zonalab._core
    importlib.reload(zonalab._core)
    return SimpleNamespace(BACKEND=zonalab._core.BACKEND,
                           geg_eval=zonalab._core.geg_eval,
                           geg_table=zonalab._core.geg_table)


def _time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(points=2048, kmax=128):
    t = np.cos(np.linspace(0.0, np.pi, points))
    alpha = 1.0
    cases = {
        f"table kmax={kmax}, {points} pts": lambda c: c.geg_table(kmax, alpha, t),
        f"single k={kmax}, {points} pts": lambda c: c.geg_eval(kmax, alpha, t),
        f"table kmax={4 * kmax}, {points} pts":
            lambda c: c.geg_table(4 * kmax, alpha, t),
    }
    cores = {}
    for backend in ("python", "auto"):
        core = _load(backend)
        cores[core.BACKEND] = core
    if len(cores) == 1:
        print("compiled backend unavailable; timing the fallback only")
    rows = []
    for label, work in cases.items():
        timings = {name: _time(lambda c=core: work(c))
                   for name, core in cores.items()}
        rows.append((label, timings))
    names = list(cores)
    width = max(len(r[0]) for r in rows)
    header = f"{'case':<{width}}  " + "  ".join(f"{n:>10}" for n in names)
    if len(names) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for label, timings in rows:
        line = f"{label:<{width}}  " + "  ".join(
            f"{timings[n] * 1e3:9.2f}ms" for n in names)
        if len(names) == 2:
            a, b = (timings[names[0]], timings[names[1]])
            line += f"  {a / b:7.2f}x"
        print(line)
    # agreement check on the heaviest case
    if len(cores) == 2:
        ca, cb = cores.values()
        va = ca.geg_table(kmax, alpha, t)
        vb = cb.geg_table(kmax, alpha, t)
        scale = np.abs(va).max()
        print(f"max backend disagreement: {np.abs(va - vb).max() / scale:.3e} "
              "(relative to table max)")


if __name__ == "__main__":
    run(*(int(a) for a in sys.argv[1:]))
