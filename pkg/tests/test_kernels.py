import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from vdwtif import _kernels as K

bit_arrays = st.lists(st.booleans(), min_size=1, max_size=80).map(lambda b: np.array(b, dtype=np.uint8))


def _runs(bits):
    best = cur = 0
    for b in bits:
        cur = cur + 1 if b else 0
        best = max(best, cur)
    return best


@given(bit_arrays)
def test_longest_run(bits):
    assert K.longest_run_jit(bits) == K.longest_run_numpy(bits) == _runs(bits)


@given(bit_arrays)
def test_gap_bound(bits):
    expected = 0 if not bits.any() else _runs(1 - bits) + 1
    assert K.gap_bound_jit(bits) == K.gap_bound_numpy(bits) == expected


@given(bit_arrays, st.integers(1, 4), st.integers(1, 30), st.integers(1, 30))
def test_ap_scan(bits, k, xmax, ymax):
    xmax = min(xmax, len(bits))
    a = K.ap_scan_jit(bits, xmax, ymax, k)
    b = K.ap_scan_numpy(bits, xmax, ymax, k)
    assert np.array_equal(a, b)
    n = len(bits)
    for x in range(1, xmax + 1):
        want = bool(bits[x - 1]) and any(
            x + k * y <= n and all(bits[x + i * y - 1] for i in range(1, k + 1)) for y in range(1, ymax + 1)
        )
        assert bool(a[x - 1]) == want


@pytest.mark.parametrize("n,k", [(1, 1), (4, 1), (8, 2), (9, 2), (11, 2)])
def test_colorings(n, k):
    assert K.count_ap_free_colorings_jit(n, k) == K.count_ap_free_colorings_numpy(n, k)


def test_env_flag_selects_numpy():
    env = dict(os.environ, VDWTIF_DISABLE_NUMBA="1")
    code = "from vdwtif import _kernels as K; print(K.backend(), K.ap_scan is K.ap_scan_numpy)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]


def test_default_backend():
    assert K.backend() == ("numba" if K.HAS_NUMBA and os.environ.get("VDWTIF_DISABLE_NUMBA", "") not in ("1", "true", "yes") else "numpy")
