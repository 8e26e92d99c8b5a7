"""Selects the kernel backend.

Numba is used when importable unless ``GAUSSEP_PURE_NUMPY`` is set to a
truthy value, in which case every kernel runs its vectorised numpy twin.
"""
import os

_FLAG = os.environ.get("GAUSSEP_PURE_NUMPY", "").strip().lower()
FORCE_NUMPY = _FLAG not in ("", "0", "false", "no")

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is normally installed
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not FORCE_NUMPY


def njit(func):
    """``numba.njit(cache=True)`` when numba is present, else a no-op."""
    if not HAS_NUMBA:
        return func
    return numba.njit(cache=True)(func)
