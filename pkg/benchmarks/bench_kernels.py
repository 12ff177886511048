"""Compare the compiled kernel backend against the pure-Python fallback.

Times the three hot operations on representative workloads: shifted
determinants over a quasimomentum batch, characteristic polynomial
coefficients, and the multistart Newton solve behind the exotic
construction. Run as a script:

    python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from blochlab import kernels


def time_call(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workload_det(rng):
    mats = rng.normal(size=(64, 4, 4)) + 1j * rng.normal(size=(64, 4, 4))
    lams = rng.normal(size=64) + 1j * rng.normal(size=64)

    def run():
        for m, lam in zip(mats, lams):
            kernels.det_shifted(m, lam)

    return run


def workload_charpoly(rng):
    mats = rng.normal(size=(64, 6, 6)) + 1j * rng.normal(size=(64, 6, 6))

    def run():
        for m in mats:
            kernels.charpoly_coeffs(m)

    return run


def workload_newton(rng):
    # the 4-site exotic problem shape: 4x4 base matrix, 50 random starts
    base = np.array(
        [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]], dtype=complex
    )
    targets = np.array([0.0, 2j, 0.0, -2j])
    tail = np.poly(targets)[1:]
    starts = 6 * (rng.normal(size=(50, 4)) + 1j * rng.normal(size=(50, 4)))

    def run():
        for x0 in starts:
            kernels.newton_diagonal(base, tail, x0)

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats, best kept")
    args = parser.parse_args()

    workloads = {
        "det_shifted (64 x 4x4)": workload_det,
        "charpoly_coeffs (64 x 6x6)": workload_charpoly,
        "newton_diagonal (50 starts, n=4)": workload_newton,
    }
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'workload':36s}" + "".join(f"{b:>14s}" for b in backends) + f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for name, factory in workloads.items():
        times = {}
        for backend in backends:
            prev = kernels.use(backend)
            try:
                run = factory(np.random.default_rng(0))
                run()  # warm up
                times[backend] = time_call(run, args.repeats)
            finally:
                kernels.use(prev)
        row = f"{name:36s}" + "".join(f"{times[b] * 1e3:12.3f}ms" for b in backends)
        if "compiled" in times and "python" in times:
            row += f"{times['python'] / times['compiled']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
