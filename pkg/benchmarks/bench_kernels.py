"""Time the compiled batch kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--rows 200000] [--repeat 5]

Both backends are first checked for identical output on the same batch.
"""

import argparse
import time

import numpy as np

from vilenkin_hardy.groups import engel, heisenberg, qp, unitriangular
from vilenkin_hardy.groups import kernels
from vilenkin_hardy.groups.sampling import max_digits


def best_of(fn, repeat):
    out = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t0)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        cy = kernels.backend_module("cython")
    except ImportError:
        print("compiled extension not built; nothing to compare")
        return
    py = kernels.backend_module("numpy")
    rng = np.random.default_rng(0)
    print(f"{'model':<14}{'op':<8}{'numpy ms':>10}{'cython ms':>11}{'speedup':>9}")
    for model in (qp(3, 2), heisenberg(3), engel(5), unitriangular(3, 4)):
        L = max_digits(model.p)
        mod = model.p ** L
        A = rng.integers(0, mod, size=(args.rows, model.dim), dtype=np.int64)
        B = rng.integers(0, mod, size=(args.rows, model.dim), dtype=np.int64)
        ops = {
            "mul": lambda impl: kernels.mul(model, A, B, mod, impl),
            "inv": lambda impl: kernels.inv(model, A, mod, impl),
            "shells": lambda impl: kernels.shells(model, A, L, impl),
        }
        for name, op in ops.items():
            if not np.array_equal(op(cy), op(py)):
                raise SystemExit(f"backends disagree on {model.label()} {name}")
            tp = best_of(lambda: op(py), args.repeat)
            tc = best_of(lambda: op(cy), args.repeat)
            print(f"{model.label():<14}{name:<8}{tp * 1e3:>10.2f}{tc * 1e3:>11.2f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
