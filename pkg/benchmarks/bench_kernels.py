"""Benchmark the eigensolver kernels across backends.

Times the single-matrix solver and the batched eigenvalue solver for every
available backend (numba when importable, always numpy), plus one slice of
the verification sweep under whichever backend the environment selected.

    python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from symcone import _kernels
from symcone.algebra import SymMatrix
from symcone.verifiers import run_sweep


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    impls = _kernels.implementations()
    print(f"selected backend: {_kernels.backend()}")
    print(f"available backends: {', '.join(impls)}")
    print()

    tol = _kernels.JACOBI_TOL
    sweeps = _kernels.JACOBI_MAX_SWEEPS

    print(f"{'kernel':<28}{'n':>4}" + "".join(f"{name:>14}" for name in impls))
    for n in (3, 5, 8, 16):
        G = rng.normal(0.0, 2.0, (n, n))
        M = (G + G.T) / 2.0
        times = {}
        for name, impl in impls.items():
            impl["eigh"](M, tol, sweeps)  # compile/warm
            calls = 2000 if n <= 8 else 200
            t = time_call(lambda: [impl["eigh"](M, tol, sweeps) for _ in range(calls)],
                          repeats=args.repeats)
            times[name] = t / calls
        print(f"{'jacobi_eigh (per call)':<28}{n:>4}"
              + "".join(f"{times[name]*1e6:>11.1f} us" for name in impls))

    for n, batch in ((4, 2000), (8, 500)):
        S = rng.normal(0.0, 2.0, (batch, n, n))
        S = (S + S.transpose(0, 2, 1)) / 2.0
        times = {}
        for name, impl in impls.items():
            impl["vals_batch"](S, tol, sweeps)
            t = time_call(impl["vals_batch"], S, tol, sweeps, repeats=args.repeats)
            times[name] = t / batch
        print(f"{'vals_batch (per matrix)':<28}{n:>4}"
              + "".join(f"{times[name]*1e6:>11.1f} us" for name in impls))

    print()
    d = SymMatrix(4)
    run_sweep("log_major_quadrep", d, 10, 0)  # warm everything downstream
    start = time.perf_counter()
    samples = 2000
    run_sweep("log_major_quadrep", d, samples, 0)
    elapsed = time.perf_counter() - start
    print(f"log-majorization sweep on sym:4 under '{_kernels.backend()}': "
          f"{samples/elapsed:.0f} samples/s")
    print("set SYMCONE_BACKEND=numpy (or numba) and rerun to compare sweeps")


if __name__ == "__main__":
    main()
