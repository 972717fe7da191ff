"""Backend selection and cross-backend agreement."""
import os
import subprocess
import sys

import numpy as np
import pytest

from goldpart import CoeffPair, PrimeStore, available_backends
from goldpart import backend as backend_mod
from goldpart import kernels_numpy
from goldpart.partitions import search_tables
from goldpart.sweep import _CX_BUF_LEN

HAVE_NUMBA = "numba" in available_backends()
needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


@needs_numba
def test_bitmap_fill_agrees():
    from goldpart import kernels_numba

    from goldpart import primes_upto

    for limit in (2, 3, 100, 10 ** 5, 10 ** 5 + 1):
        nbits = (limit + 1) // 2
        nwords = (nbits + 63) // 64
        base = primes_upto(int(limit ** 0.5) + 1)
        base = base[base > 2].astype(np.int64)
        a = np.full(nwords, 0xFFFFFFFFFFFFFFFF, dtype=np.uint64)
        b = a.copy()
        kernels_numpy.fill_odd_bitmap(a, limit, base, 1 << 10)
        kernels_numba.fill_odd_bitmap(b, limit, base, 1 << 10)
        assert np.array_equal(a, b), limit


@needs_numba
def test_sweep_span_agrees():
    from goldpart import kernels_numba

    store = PrimeStore(10 ** 5)
    buf_a = np.empty(_CX_BUF_LEN, np.int64)
    buf_b = np.empty(_CX_BUF_LEN, np.int64)
    for m1, m2 in [(1, 1), (1, 2), (2, 3), (12, 35), (19, 8)]:
        p0, two, step, rad, parity = search_tables(m1, m2)
        args = (parity, m1, m2, rad, p0, two, step, store.words)
        for lo, hi in [(1, 5000), (5000, 20001), (90000, 100001)]:
            ra = kernels_numpy.sweep_span(lo, hi, *args, buf_a)
            rb = kernels_numba.sweep_span(lo, hi, *args, buf_b)
            assert tuple(int(x) for x in ra) == tuple(int(x) for x in rb)
            ncx = int(ra[0])
            assert buf_a[:ncx].tolist() == buf_b[:ncx].tolist()


def _run(env_value: str) -> str:
    env = dict(os.environ, GOLDPART_BACKEND=env_value)
    code = "import goldpart; print(goldpart.active_backend())"
    return subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True).stdout.strip()


def test_env_selects_backend():
    assert _run("numpy") == "numpy"
    if HAVE_NUMBA:
        assert _run("numba") == "numba"
        assert _run("auto") == "numba"


def test_bad_backend_rejected():
    env = dict(os.environ, GOLDPART_BACKEND="fortran")
    code = ("import goldpart.backend as b\n"
            "from goldpart.errors import ConfigError\n"
            "try:\n"
            "    b.kernels()\n"
            "    print('no error')\n"
            "except ConfigError:\n"
            "    print('rejected')\n")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True).stdout.strip()
    assert out == "rejected"


def test_active_backend_is_module_choice():
    assert backend_mod.active_backend() in available_backends()
