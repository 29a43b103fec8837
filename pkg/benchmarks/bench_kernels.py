"""Benchmark the RK4 Lyapunov-flow kernel: numba jit vs pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

import loopcool as lc
from loopcool import kernels


def run(fn, a, q, steps, dt):
    at = np.ascontiguousarray(a.T)
    x = np.zeros_like(a)
    t0 = time.perf_counter()
    fn(a, at, q, x, steps, dt, 1 << 30)  # no early exit during timing
    return time.perf_counter() - t0


def main():
    spec = lc.get_preset("fig2")
    drift = lc.build_drift(spec)
    a = np.ascontiguousarray(drift.a)
    q = np.ascontiguousarray(drift.q.astype(complex))
    steps, dt = 50_000, 0.05

    if not kernels.NUMBA_ENABLED:
        print("numba disabled (LOOPCOOL_NO_NUMBA set); nothing to compare")
        return

    # warm-up triggers jit compilation
    run(kernels._rk4_flow, a, q, 10, dt)

    t_jit = min(run(kernels._rk4_flow, a, q, steps, dt) for _ in range(3))
    t_py = min(run(kernels._rk4_flow_impl, a, q, steps, dt) for _ in range(3))
    print(f"matrix dim {a.shape[0]}, {steps} RK4 steps")
    print(f"numba jit : {t_jit:.3f} s")
    print(f"pure numpy: {t_py:.3f} s")
    print(f"speedup   : {t_py / t_jit:.1f}x")


if __name__ == "__main__":
    main()
