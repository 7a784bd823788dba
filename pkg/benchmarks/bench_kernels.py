"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

The first jit call (compile or cache load) is timed separately so the steady
state numbers are not polluted by it.
"""
from __future__ import annotations

import argparse
import time
import timeit

import numpy as np

from vdwtif import _kernels as K


def _cases(rng: np.random.Generator):
    dense = (rng.random(4096) < 0.7).astype(np.uint8)
    sparse = (rng.random(4096) < 0.05).astype(np.uint8)
    ap_bits = (rng.random(600) < 0.6).astype(np.uint8)
    return [
        ("longest_run n=4096", "longest_run", (dense,)),
        ("gap_bound n=4096", "gap_bound", (sparse,)),
        ("ap_scan n=600 k=3", "ap_scan", (ap_bits, 300, 150, 3)),
        ("ap_free_colorings n=9 k=2", "count_ap_free_colorings", (9, 2)),
        ("ap_free_colorings n=16 k=3", "count_ap_free_colorings", (16, 3)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    print(f"{'kernel':30} {'first jit':>10} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for label, name, call_args in _cases(rng):
        jit_fn = getattr(K, f"{name}_jit")
        np_fn = getattr(K, f"{name}_numpy")
        t0 = time.perf_counter()
        jit_fn(*call_args)
        first = time.perf_counter() - t0
        number = 1 if name == "count_ap_free_colorings" else 20
        t_jit = min(timeit.repeat(lambda: jit_fn(*call_args), number=number, repeat=args.repeat)) / number
        t_np = min(timeit.repeat(lambda: np_fn(*call_args), number=number, repeat=args.repeat)) / number
        print(f"{label:30} {first * 1e3:9.1f}ms {t_jit * 1e3:9.3f}ms {t_np * 1e3:9.3f}ms {t_np / t_jit:7.1f}x")


if __name__ == "__main__":
    main()
