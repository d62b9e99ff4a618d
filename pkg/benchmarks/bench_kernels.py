"""Times the compiled enumeration kernel against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from lrclab import gf
from lrclab._kernels import _enum_py
from lrclab.rng import substream

try:
    from lrclab._kernels import _enum_cy
except ImportError:
    _enum_cy = None

# (q, k, n): message-space sizes from 6e4 up to 1e6+
CASES = [
    (2, 20, 48),
    (2, 16, 64),
    (3, 12, 30),
    (4, 10, 24),
    (16, 5, 20),
    (1024, 2, 16),
]


def _time(impl, args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = impl.weight_counts(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    header = f"{'q':>5} {'k':>3} {'n':>3} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for q, k, n in CASES:
        f = gf.field(q)
        rows = substream(1, "bench", q).integers(0, q, size=(k, n), dtype=np.uint16)
        args = (
            np.ascontiguousarray(rows),
            q,
            np.ascontiguousarray(f.add_table),
            np.ascontiguousarray(f.mul_table),
            np.ascontiguousarray(f.neg_table),
        )
        t_py, c_py = _time(_enum_py, args)
        if _enum_cy is None:
            print(f"{q:>5} {k:>3} {n:>3} {t_py:>9.4f}s {'-':>10} {'-':>8}")
            continue
        t_cy, c_cy = _time(_enum_cy, args)
        assert np.array_equal(c_py, c_cy), "backends disagree"
        print(f"{q:>5} {k:>3} {n:>3} {t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>7.1f}x")
    if _enum_cy is None:
        print("\ncompiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
