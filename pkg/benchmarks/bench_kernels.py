"""Time the compiled RK4 stepper against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--modes 64] [--sites 200] [--steps 500]
"""
import argparse
import time

import numpy as np

from toda_stability import _fallback, soliton

try:
    from toda_stability import _kernels
except ImportError:
    _kernels = None


def run(fn, q, p, eta2, steps, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(q, p, eta2, -40, 1.0, soliton.speed(1.0), 0.0, 0.01, steps, True, False)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--modes", type=int, default=64)
    ap.add_argument("--sites", type=int, default=200)
    ap.add_argument("--steps", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    shape = (args.modes, args.sites)
    q = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    p = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    eta2 = np.linspace(0, 4, args.modes)
    work = args.modes * args.sites * args.steps
    t_py, out_py = run(_fallback.rk4_banded, q, p, eta2, args.steps, args.repeat)
    print(f"numpy   : {t_py:8.3f} s  ({work / t_py / 1e6:7.1f} Msite-steps/s)")
    if _kernels is None:
        print("compiled: not built")
        return
    t_c, out_c = run(_kernels.rk4_banded, q, p, eta2, args.steps, args.repeat)
    diff = max(float(np.max(np.abs(a - b))) for a, b in zip(out_py, out_c))
    print(f"compiled: {t_c:8.3f} s  ({work / t_c / 1e6:7.1f} Msite-steps/s)")
    print(f"speedup : {t_py / t_c:8.1f}x   max difference {diff:.2e}")


if __name__ == "__main__":
    main()
