"""Compare the numpy and compiled phase kernels, then a full propagation.

Usage:
    python3 benchmarks/bench_kernels.py [--sizes 256,512,1024,4096]
                                        [--repeat 2000] [--steps 20000]

The kernel table times apply_quartic_phase on each backend directly.  The
end-to-end row times trapmorph.propagate with whichever backend the
current process selected (TRAPMORPH_KERNELS=numpy|cython to force one),
since the backend is fixed at import time:

    TRAPMORPH_KERNELS=numpy  python3 benchmarks/bench_kernels.py
    TRAPMORPH_KERNELS=cython python3 benchmarks/bench_kernels.py
"""

import argparse
import time

import numpy as np

import trapmorph as tm
from trapmorph import _kernels_np

try:
    from trapmorph import _kernels_cy
except ImportError:
    _kernels_cy = None


def time_call(fn, repeat):
    # warm up, then best-of-three batches
    fn()
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def bench_kernels(sizes, repeat):
    print("apply_quartic_phase, per call:")
    print("%8s %12s %12s %8s" % ("n", "numpy", "cython", "speedup"))
    for n in sizes:
        x = np.linspace(-20.0, 20.0, n)
        x2, x4 = x * x, x**4
        rng = np.random.default_rng(0)
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi = np.ascontiguousarray(psi)

        t_np = time_call(
            lambda: _kernels_np.apply_quartic_phase(
                psi, x, x2, x4, -0.25, 2e-3, 0.09, 0.005), repeat)
        if _kernels_cy is None:
            print("%8d %10.2fus %12s %8s" % (n, t_np * 1e6, "n/a", "-"))
            continue
        view = psi.view(np.float64)
        t_cy = time_call(
            lambda: _kernels_cy.apply_quartic_phase(
                view, x, x2, x4, -0.25, 2e-3, 0.09, 0.005), repeat)
        print("%8d %10.2fus %10.2fus %7.1fx"
              % (n, t_np * 1e6, t_cy * 1e6, t_np / t_cy))


def bench_propagation(steps):
    mini = tm.mini_preset()
    eig = tm.eigensolve(mini.path.initial, mini.grid, 3, refine=False)
    psi = tm.Wavefunction.from_eigenstate(eig, 2)
    t_f = steps * mini.dt
    drive = tm.Drive.static(mini.path.initial, t_f)
    t0 = time.perf_counter()
    rep = tm.propagate(psi, drive, mini.dt)
    dt_wall = time.perf_counter() - t0
    print("\npropagate (backend=%s): %d steps of n=%d in %.2fs "
          "-> %.1f us/step"
          % (tm.kernel_backend, rep.steps, mini.grid.n, dt_wall,
             1e6 * dt_wall / rep.steps))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256,512,1024,4096")
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--steps", type=int, default=20000)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    bench_kernels(sizes, args.repeat)
    bench_propagation(args.steps)


if __name__ == "__main__":
    main()
