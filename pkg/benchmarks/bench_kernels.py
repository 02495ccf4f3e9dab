"""Compare the compiled and pure-Python kernel backends.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--restarts 64]
"""

import argparse
import time

import numpy as np

from twoqubit import _kernels
from twoqubit.oracle import IsometryParams
from twoqubit.states import random_rank2


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(restarts):
    rng = np.random.default_rng(0)
    mats = []
    for _ in range(200):
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        mats.append(0.5 * (a + a.conj().T))
    d = random_rank2(1000)
    w = d.weighted_rows()
    starts = [IsometryParams.random(4, np.random.default_rng([0, k])).entries for k in range(restarts)]
    return {
        "jacobi_eigh x200": lambda k: [k.jacobi_eigh(m) for m in mats],
        "jacobi_svdvals x200": lambda k: [k.jacobi_svdvals(m) for m in mats],
        f"refine_isometry x{restarts}": lambda k: [k.refine_isometry(w, u, 500, 1e-8) for u in starts],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--restarts", type=int, default=64)
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    print(f"default backend: {_kernels.BACKEND}; available: {', '.join(sorted(backends))}")
    names = sorted(backends)
    print(f"{'kernel':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases(args.restarts).items():
        t = {n: best_of(lambda: fn(backends[n]), args.repeat) for n in names}
        line = f"{label:<24}" + "".join(f"{t[n] * 1e3:>10.2f}ms" for n in names)
        if "cython" in t:
            line += f"{t['python'] / t['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
