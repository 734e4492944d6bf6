"""Time the jitted kernels against their numpy versions.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from tvlab.transversal import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.numba is None:
        print("numba is not installed; nothing to compare")
        return
    rng = np.random.default_rng(0)

    clouds = [rng.normal(size=(int(rng.integers(4, 40)), 6)) + 1.5 for _ in range(300)]

    def mnp(kernel):
        return lambda: [kernel(P, 500, 1e-15) for P in clouds]

    V = rng.integers(-60, 60, size=(120, 2))
    ptr = np.linspace(0, 120, 13).astype(np.int64)
    dirs = np.array([(a, b) for a in range(-90, 91) for b in range(0, 91) if (a, b) != (0, 0)], dtype=np.int64)

    def stab(kernel):
        return lambda: kernel(V, ptr, dirs)

    # compile outside the timed region
    mnp(_kernels.min_norm_point_jit)()
    stab(_kernels.stab_directions_jit)()
    assert (_kernels.stab_directions_jit(V, ptr, dirs) == _kernels.stab_directions_numpy(V, ptr, dirs)).all()

    rows = [
        ("min_norm_point x300", mnp(_kernels.min_norm_point_numpy), mnp(_kernels.min_norm_point_jit)),
        (f"stab_directions {len(dirs)} dirs", stab(_kernels.stab_directions_numpy), stab(_kernels.stab_directions_jit)),
    ]
    print(f"{'kernel':32} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, slow, fast in rows:
        a, b = best_of(slow, args.repeat), best_of(fast, args.repeat)
        print(f"{name:32} {a:10.4f} {b:10.4f} {a / b:8.1f}x")


if __name__ == "__main__":
    main()
