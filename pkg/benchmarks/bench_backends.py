#!/usr/bin/env python3
"""Time the numerical hot kernels on both backends.

Run after building the extension in place:

    python3 setup.py build_ext --inplace
    python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from dephlab._core import available_backends


def bench_jacobi(mod, rng):
    mats = []
    for dim in (4, 4, 8):
        a = rng.normal(size=(500, dim, dim)) + 1j * rng.normal(size=(500, dim, dim))
        mats.extend((m + m.conj().T) / 2 for m in a)
    start = time.perf_counter()
    for m in mats:
        mod.jacobi_eigvalsh(m)
    return time.perf_counter() - start, len(mats)


def bench_integrand(mod, rng):
    nodes = np.sort(rng.uniform(0.0, 6.5, size=20000))
    weights = rng.uniform(0.0, 1e-3, size=20000)
    start = time.perf_counter()
    for i in range(200):
        mod.integrand_sum(i % 4, nodes, weights, 0.05, 1.0, 40.0)
    return time.perf_counter() - start, 200


def bench_discord_scan(mod, rng):
    thetas = np.linspace(0.0, np.pi, 64)
    phis = np.linspace(0.0, 2 * np.pi, 64, endpoint=False)
    states = []
    for _ in range(50):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = a @ a.conj().T
        states.append(rho / np.trace(rho).real)
    start = time.perf_counter()
    for rho in states:
        mod.conditional_entropy_grid(rho, thetas, phis)
    return time.perf_counter() - start, len(states)


BENCHES = (
    ("jacobi_eigvalsh (1500 matrices, dims 4-8)", bench_jacobi),
    ("integrand_sum (200 sums x 20k nodes)", bench_integrand),
    ("conditional_entropy_grid (50 x 64x64 scan)", bench_discord_scan),
)


def main():
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'kernel':<45} " + " ".join(f"{name:>12}" for name in backends) + "  speedup")
    for label, fn in BENCHES:
        times = {}
        for name, mod in backends.items():
            elapsed, n = fn(mod, np.random.default_rng(7))
            times[name] = elapsed
        row = f"{label:<45} " + " ".join(f"{times[name]:>11.3f}s" for name in backends)
        if len(times) == 2:
            row += f"  {times['python'] / times['cython']:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
