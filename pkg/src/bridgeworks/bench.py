"""Informational scaling measurements for the solvers.

Fits log time against log size with a least-squares line; the slope is the
empirical exponent. Small sizes carry constant overheads, so the numbers
describe trends rather than gate anything.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .bridge import approx_greedy, solve_exact
from .io import gen_random_tree
from .twin import solve_twin

EXACT_SIZES = (100, 200, 400, 800)
TWIN_SIZES = (10, 20, 30, 40)


def _pair(n: int, seed: int):
    t1 = gen_random_tree(n, seed, bbox=(0, 0, 100, 100))
    t2 = gen_random_tree(n, seed + 10_000, bbox=(150, 0, 250, 100))
    return t1, t2


def _time(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def _exponent(sizes, times) -> float:
    xs = np.log([float(s) for s in sizes])
    ys = np.log([max(t, 1e-9) for t in times])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def bench_exact(sizes=EXACT_SIZES, seed: int = 0) -> dict:
    times = []
    for i, n in enumerate(sizes):
        t1, t2 = _pair(n, seed + i)
        times.append(_time(lambda: solve_exact(t1, t2)))
    return {"sizes": list(sizes), "times": times, "exponent": _exponent(sizes, times)}


def bench_approx(sizes=EXACT_SIZES, seed: int = 0) -> dict:
    times = []
    for i, n in enumerate(sizes):
        t1, t2 = _pair(n, seed + i)
        times.append(_time(lambda: approx_greedy(t1, t2)))
    return {"sizes": list(sizes), "times": times, "exponent": _exponent(sizes, times)}


def bench_twin(sizes=TWIN_SIZES, seed: int = 0) -> dict:
    times = []
    for i, n in enumerate(sizes):
        t1, t2 = _pair(n, seed + 100 + i)
        times.append(_time(lambda: solve_twin(t1, t2)))
    return {"sizes": list(sizes), "times": times, "exponent": _exponent(sizes, times)}


def run_bench(seed: int = 0) -> dict:
    exact = bench_exact(seed=seed)
    approx = bench_approx(seed=seed)
    twin = bench_twin(seed=seed)
    total_exact = math.fsum(exact["times"])
    total_approx = math.fsum(approx["times"])
    approx["time_ratio_vs_exact"] = (
        total_approx / total_exact if total_exact > 0 else float("inf")
    )
    return {"exact": exact, "approx": approx, "twin": twin, "seed": seed}
