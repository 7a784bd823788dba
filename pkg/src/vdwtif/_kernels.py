"""Bit-array kernels shared by the window oracles and the AP searches.

Every kernel has two implementations: a numba ``@njit`` loop and a pure
numpy path. Setting ``VDWTIF_DISABLE_NUMBA=1`` in the environment (or
running without numba installed) selects the numpy path at import time.
Both paths are always importable under ``*_jit`` / ``*_numpy`` names so
they can be compared directly.
"""
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("VDWTIF_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def _identity(fn):
    return fn


_jit = njit(cache=True) if HAS_NUMBA else _identity


# ---------------------------------------------------------------------------
# longest run of ones


@_jit
def longest_run_jit(bits):
    best = 0
    cur = 0
    for i in range(bits.shape[0]):
        if bits[i]:
            cur += 1
            if cur > best:
                best = cur
        else:
            cur = 0
    return best


def longest_run_numpy(bits):
    b = np.asarray(bits, dtype=np.int8)
    if b.size == 0:
        return 0
    padded = np.concatenate(([0], b, [0]))
    edges = np.flatnonzero(np.diff(padded))
    if edges.size == 0:
        return 0
    return int((edges[1::2] - edges[0::2]).max())


# ---------------------------------------------------------------------------
# gap bound: least g such that every length-g window of the array meets a 1


@_jit
def gap_bound_jit(bits):
    # returns 0 when there is no member
    n = bits.shape[0]
    worst = 0
    cur = 0
    seen = False
    for i in range(n):
        if bits[i]:
            seen = True
            cur = 0
        else:
            cur += 1
            if cur > worst:
                worst = cur
    if not seen:
        return 0
    return worst + 1


def gap_bound_numpy(bits):
    b = np.asarray(bits, dtype=bool)
    if not b.any():
        return 0
    zeros = (~b).astype(np.int8)
    return longest_run_numpy(zeros) + 1


# ---------------------------------------------------------------------------
# AP scan: out[x-1] = 1 iff bits[x-1] and some 1 <= y <= ymax has
# bits[x+iy-1] for i = 1..k (all indices inside the array)


@_jit
def ap_scan_jit(bits, xmax, ymax, k):
    n = bits.shape[0]
    out = np.zeros(xmax, dtype=np.uint8)
    for x in range(1, xmax + 1):
        if not bits[x - 1]:
            continue
        for y in range(1, ymax + 1):
            if x + k * y > n:
                break
            ok = True
            for i in range(1, k + 1):
                if not bits[x + i * y - 1]:
                    ok = False
                    break
            if ok:
                out[x - 1] = 1
                break
    return out


def ap_scan_numpy(bits, xmax, ymax, k):
    b = np.asarray(bits, dtype=bool)
    n = b.shape[0]
    out = np.zeros(xmax, dtype=bool)
    xs = np.arange(1, xmax + 1)
    for y in range(1, ymax + 1):
        ok = b[:xmax].copy()
        reach = xs + k * y <= n
        ok &= reach
        for i in range(1, k + 1):
            idx = np.minimum(xs + i * y, n) - 1
            ok &= b[idx]
        out |= ok
    return out.astype(np.uint8)


# ---------------------------------------------------------------------------
# exhaustive 2-colorings of [1, n] free of monochromatic (k+1)-term APs


@_jit
def count_ap_free_colorings_jit(n, k):
    count = 0
    first = -1
    for mask in range(1 << n):
        bad = False
        for x in range(1, n + 1):
            c = (mask >> (x - 1)) & 1
            y = 1
            while x + k * y <= n:
                mono = True
                for i in range(1, k + 1):
                    if ((mask >> (x + i * y - 1)) & 1) != c:
                        mono = False
                        break
                if mono:
                    bad = True
                    break
                y += 1
            if bad:
                break
        if not bad:
            count += 1
            if first < 0:
                first = mask
    return count, first


def count_ap_free_colorings_numpy(n, k):
    masks = np.arange(1 << n, dtype=np.int64)
    colors = ((masks[:, None] >> np.arange(n)) & 1).astype(np.int8)
    bad = np.zeros(masks.shape[0], dtype=bool)
    for x in range(1, n + 1):
        y = 1
        while x + k * y <= n:
            base = colors[:, x - 1]
            mono = np.ones(masks.shape[0], dtype=bool)
            for i in range(1, k + 1):
                mono &= colors[:, x + i * y - 1] == base
            bad |= mono
            y += 1
    free = np.flatnonzero(~bad)
    first = int(free[0]) if free.size else -1
    return int(free.size), first


# ---------------------------------------------------------------------------
# dispatch

if USE_NUMBA:
    longest_run = longest_run_jit
    gap_bound = gap_bound_jit
    ap_scan = ap_scan_jit
    count_ap_free_colorings = count_ap_free_colorings_jit
else:
    longest_run = longest_run_numpy
    gap_bound = gap_bound_numpy
    ap_scan = ap_scan_numpy
    count_ap_free_colorings = count_ap_free_colorings_numpy


def backend():
    return "numba" if USE_NUMBA else "numpy"
