"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import importlib
import time

import numpy as np

from quarticle import _kernels_py


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(rng):
    for n, d in ((3, 2), (4, 3), (6, 3), (10, 2), (8, 4)):
        psi = rng.normal(size=d**n) + 1j * rng.normal(size=d**n)
        mats = rng.normal(size=(5, d, d)) + 1j * rng.normal(size=(5, d, d))
        slots = rng.integers(0, n, size=5).astype(np.int_)
        yield n, d, psi, mats, slots


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--calls", type=int, default=200, help="expect_chain calls per timing")
    args = ap.parse_args()
    try:
        compiled = importlib.import_module("quarticle._kernels")
    except ImportError:
        print("compiled extension not built; run `python setup.py build_ext --inplace`")
        return
    rng = np.random.default_rng(0)
    print(f"{'n':>3} {'d':>3} {'dim':>8} {'python us':>12} {'cython us':>12} {'speedup':>8} {'|diff|':>9}")
    for n, d, psi, mats, slots in cases(rng):
        calls = max(1, args.calls // (d**n // 64 + 1))
        res = {}
        for name, mod in (("python", _kernels_py), ("cython", compiled)):
            res[name] = mod.expect_chain(psi, mats, slots, n, d)
            sec = _time(lambda: [mod.expect_chain(psi, mats, slots, n, d) for _ in range(calls)], args.repeat)
            res[name + "_t"] = sec / calls * 1e6
        diff = abs(res["python"] - res["cython"])
        print(f"{n:>3} {d:>3} {d**n:>8} {res['python_t']:>12.1f} {res['cython_t']:>12.1f} "
              f"{res['python_t'] / res['cython_t']:>8.2f} {diff:>9.1e}")


if __name__ == "__main__":
    main()
