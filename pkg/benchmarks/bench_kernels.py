"""Compare the compiled measurement-scan kernel against the numpy fallback.

Times the raw angle scan at several grid sizes, then the full discord
computation, for every available backend.

Usage: python benchmarks/bench_kernels.py [--repeats 7]
"""

import argparse
import time

import numpy as np

from discordbench import kernels
from discordbench.measures import discord
from discordbench.optics import SourceParams, incoherent_output


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    rho = np.asarray(incoherent_output(SourceParams()))
    backends = kernels.available_backends()
    print(f"available backends: {', '.join(backends)} (selected: {kernels.BACKEND})")

    print("\nangle scan, best of %d:" % args.repeats)
    print(f"{'grid':>10} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    for steps in ((20, 40), (40, 80), (80, 160)):
        thetas = np.linspace(0.0, np.pi, steps[0])
        phis = np.linspace(0.0, 2 * np.pi, steps[1], endpoint=False)
        tt, pp = np.meshgrid(thetas, phis, indexing="ij")
        tt, pp = tt.ravel(), pp.ravel()
        row = {
            b: best_of(lambda b=b: kernels.conditional_entropy_scan(rho, tt, pp, impl=b),
                       args.repeats)
            for b in backends
        }
        cells = " ".join(f"{row[b] * 1e3:>10.3f}ms" for b in backends)
        speedup = (f"{row['python'] / row['cython']:>8.1f}x"
                   if len(backends) > 1 else "     n/a")
        print(f"{steps[0]}x{steps[1]:<6} {cells} {speedup}")

    print("\nfull discord of the incoherent state, best of %d:" % args.repeats)
    t = best_of(lambda: discord(rho), args.repeats)
    print(f"  selected backend ({kernels.BACKEND}): {t * 1e3:.2f} ms")


if __name__ == "__main__":
    main()
