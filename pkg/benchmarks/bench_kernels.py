"""Compare the compiled and numpy grid kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--threads N]
"""

import argparse
import os
import time

from krphase import kernels

CASES = [
    ("degree", 1, 0.5, 256),
    ("degree", 2, 1.5, 128),
    ("degree", 3, 0.5, 64),
    ("degree", 4, -1.0, 32),
    ("min_norm", 2, 0.5, 256),
    ("min_norm", 3, 0.5, 64),
    ("min_norm", 4, 1.5, 32),
]


def run(kind, d, m, n, impl):
    if kind == "degree":
        return kernels.degree_integral(d, m, n, impl)
    return kernels.min_norm(d, m, n, impl)


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t0)
    return min(times), value


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--threads", type=int, default=None)
    args = p.parse_args(argv)
    if args.threads:
        os.environ["KRPHASE_THREADS"] = str(args.threads)

    py = kernels.backend("python")
    try:
        cy = kernels.backend("cython")
    except ImportError:
        cy = None
        print("compiled kernels not built; timing the numpy backend only")

    print(f"threads={kernels.threads()}")
    print(f"{'kernel':<9}{'d':>2}{'m':>6}{'grid':>6}{'python s':>11}{'cython s':>11}{'speedup':>9}  max |diff|")
    for kind, d, m, n in CASES:
        tp, vp = best_time(lambda: run(kind, d, m, n, py), args.repeat)
        if cy is None:
            print(f"{kind:<9}{d:>2}{m:>6}{n:>6}{tp:>11.4f}")
            continue
        tc, vc = best_time(lambda: run(kind, d, m, n, cy), args.repeat)
        print(f"{kind:<9}{d:>2}{m:>6}{n:>6}{tp:>11.4f}{tc:>11.4f}{tp / tc:>9.1f}  {abs(vp - vc):.1e}")


if __name__ == "__main__":
    main()
