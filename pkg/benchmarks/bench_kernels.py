"""Compare the numba and numpy kernel backends on certify-sized workloads.

    python benchmarks/bench_kernels.py --trials 10000 --repeat 5

The numba timings exclude the first (compiling) call. Both backends must
agree; the script exits non-zero otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from gtbend import _kernels as K
from gtbend.convexity import family_from_truncation
from gtbend.gtmodel import build_model, generate_truncation


def workload(m: int, trials: int, seed: int):
    fam = family_from_truncation(generate_truncation(build_model(m), 4, close_stars=True))
    rng = np.random.default_rng(seed)
    cells = rng.integers(0, fam.n_cells, size=(trials, 2))
    P0 = fam.sample_points(cells[:, 0], rng)
    P1 = fam.sample_points(cells[:, 1], rng)
    X = fam.sample_points(rng.integers(0, fam.n_cells, trials), rng)
    return fam, P0, P1, X


def run(backend: str, fam, P0, P1, X) -> tuple[np.ndarray, ...]:
    args = (fam.Linv, fam.off, fam.hp, fam.nhp, fam.disk)
    lo, hi = K.segment_intervals(*args, P0, P1, backend=backend)
    start, _ = K.coverage_gaps(lo, hi, np.ones(lo.shape, dtype=bool), backend=backend)
    inside = K.points_in_cells(*args, X, backend=backend)
    return lo, hi, start, inside


def bench(backend: str, repeat: int, *data) -> float:
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        run(backend, *data)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    data = workload(a.m, a.trials, a.seed)
    ref = run("numpy", *data)
    print(f"cells={data[0].n_cells} segments={a.trials} default backend={K.BACKEND}")
    t_np = bench("numpy", a.repeat, *data)
    print(f"numpy  {t_np * 1e3:9.2f} ms")
    if not K.HAS_NUMBA:
        print("numba  unavailable (GTBEND_DISABLE_NUMBA set or not installed)")
        return 0
    got = run("numba", *data)  # compiles on first call
    for r, g in zip(ref, got):
        if not np.allclose(r, g, rtol=0, atol=1e-12):
            print("backends disagree", file=sys.stderr)
            return 1
    t_nb = bench("numba", a.repeat, *data)
    print(f"numba  {t_nb * 1e3:9.2f} ms   speed-up x{t_np / t_nb:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
