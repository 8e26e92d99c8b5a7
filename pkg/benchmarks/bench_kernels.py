"""Numba vs pure-numpy kernels, plus an end-to-end campaign under each backend.

    python benchmarks/bench_kernels.py [--n 100000] [--trials 10000]
"""
import argparse
import os
import subprocess
import sys
from time import perf_counter

import numpy as np

from gaussep import kernels
from gaussep.states import random_pure_state, sample_pure_spec


def best_of(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = perf_counter()
        fn(*args)
        best = min(best, perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--trials", type=int, default=10_000)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    base = np.array([np.asarray(random_pure_state(sample_pure_spec(rng))) for _ in range(1000)])
    cms = np.ascontiguousarray(np.resize(base, (args.n, 4, 4)))
    f = rng.normal(size=(args.n, 2, 2))
    g = np.broadcast_to(np.eye(2), (args.n, 2, 2)).copy()

    # compile outside the timed region
    kernels._two_mode_dets_numba(cms[:2])
    kernels._apply_one_sided_numba(cms[:2], f[:2], g[:2], 1)

    d_nb = kernels._two_mode_dets_numba(cms)
    d_np = kernels._two_mode_dets_numpy(cms)
    a_nb = kernels._apply_one_sided_numba(cms, f, g, 1)
    a_np = kernels._apply_one_sided_numpy(cms, f, g, 1)
    print(f"max |dets numba - numpy| (relative): {np.max(np.abs(d_nb - d_np) / np.maximum(1, np.abs(d_np))):.2e}")
    print(f"max |apply numba - numpy|:           {np.max(np.abs(a_nb - a_np)):.2e}")

    print(f"\nkernel timings, batch of {args.n} two-mode CMs")
    print(f"{'kernel':<18}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for name, nb, npy, fargs in [
        ("two_mode_dets", kernels._two_mode_dets_numba, kernels._two_mode_dets_numpy, (cms,)),
        ("apply_one_sided", kernels._apply_one_sided_numba, kernels._apply_one_sided_numpy, (cms, f, g, 1)),
    ]:
        t_nb, t_np = best_of(nb, *fargs), best_of(npy, *fargs)
        print(f"{name:<18}{1e3 * t_nb:>12.2f}{1e3 * t_np:>12.2f}{t_np / t_nb:>10.1f}x")

    print(f"\nend-to-end: gaussep verify --trials {args.trials} --seed 42")
    for flag in ("0", "1"):
        env = dict(os.environ, GAUSSEP_PURE_NUMPY=flag)
        t0 = perf_counter()
        subprocess.run(
            [sys.executable, "-m", "gaussep.cli", "verify", "--trials", str(args.trials), "--seed", "42",
             "-o", os.devnull],
            env=env, check=True, stderr=subprocess.DEVNULL,
        )
        label = "numpy" if flag == "1" else "numba"
        print(f"  {label:<6} {perf_counter() - t0:6.2f} s")


if __name__ == "__main__":
    main()
