"""Compare the compiled core with the pure-Python fallback.

Usage::

    python benchmarks/bench_backends.py [--repeat 3]

Times the one-sided stable density on a log grid of ``tau`` and the Jacobi
eigensolver on small Dirichlet operators, and reports the largest
disagreement between the two backends.
"""
import argparse
import time

import numpy as np

from fracsemi import FractionalOrder, Grid1D, assemble_dirichlet
from fracsemi._backend import implementations


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_density(impls, repeat):
    tau = np.geomspace(1e-3, 1e6, 2000)
    rows = []
    for s in (0.3, 0.7):
        results = {name: best_of(lambda m=mod: m.stable_density_integral(tau, 1.0, s), repeat)
                   for name, mod in impls.items()}
        rows.append((f"density s={s} ({tau.size} points)", results))
    return rows


def bench_jacobi(impls, repeat):
    rows = []
    for n in (32, 64, 128):
        a = np.asarray(assemble_dirichlet(Grid1D(-1.0, 1.0, n), FractionalOrder(0.5)).matrix)
        results = {}
        for name, mod in impls.items():
            elapsed, (g, _) = best_of(lambda m=mod: m.jacobi_rows(a.copy(), 1e-15, 50), repeat)
            lam = np.sort(np.einsum("ij,jk,ik->i", g, a, g) / np.einsum("ij,ij->i", g, g))
            results[name] = (elapsed, lam)
        rows.append((f"jacobi n={n}", results))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    impls = implementations()
    if "compiled" not in impls:
        print("compiled core not built; run `python setup.py build_ext --inplace` first")
    names = list(impls)
    print(f"{'case':<32}" + "".join(f"{n + ' [s]':>16}" for n in names) + f"{'speed-up':>12}{'max rel diff':>15}")
    for label, results in bench_density(impls, args.repeat) + bench_jacobi(impls, args.repeat):
        times = [results[n][0] for n in names]
        line = f"{label:<32}" + "".join(f"{t:>16.4f}" for t in times)
        if len(names) == 2:
            a, b = (np.asarray(results[n][1]) for n in names)
            diff = float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))
            line += f"{times[0] / times[1]:>11.1f}x{diff:>15.2e}"
        print(line)


if __name__ == "__main__":
    main()
