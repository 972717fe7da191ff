"""Kernel backend selection.

The hot loops (bitmap sieve fill, per-n minimal-prime scan) exist twice:
a numba @njit version and a pure-numpy vectorized version with identical
signatures and semantics.  GOLDPART_BACKEND chooses between them:

    GOLDPART_BACKEND=numba   force numba (error if numba is not importable)
    GOLDPART_BACKEND=numpy   force the numpy fallback
    GOLDPART_BACKEND=auto    numba when available, numpy otherwise (default)
"""
from __future__ import annotations

import os

from .errors import ConfigError

BACKEND_ENV = "GOLDPART_BACKEND"

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def active_backend() -> str:
    """Resolve the backend name the package will actually use."""
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower() or "auto"
    if choice == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ConfigError(f"unknown {BACKEND_ENV} value: {choice!r}")
    if choice == "numba" and not HAVE_NUMBA:
        raise ConfigError("GOLDPART_BACKEND=numba but numba is not importable")
    return choice


def kernels(name: str | None = None):
    """Return the kernel module for `name` (default: active_backend())."""
    name = name or active_backend()
    if name == "numba":
        if not HAVE_NUMBA:
            raise ConfigError("numba backend requested but numba is not importable")
        from . import kernels_numba

        return kernels_numba
    if name == "numpy":
        from . import kernels_numpy

        return kernels_numpy
    raise ConfigError(f"unknown backend: {name!r}")
