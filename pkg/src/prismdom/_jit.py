"""Select the kernel backend.

Set ``PRISMDOM_DISABLE_NUMBA=1`` to run every kernel as plain Python on
numpy arrays. The flag is read once, at import time.
"""
from __future__ import annotations

import os

_DISABLED = os.environ.get("PRISMDOM_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by PRISMDOM_DISABLE_NUMBA")
    from numba import njit as _njit

    NUMBA_OK = True
except ImportError:
    NUMBA_OK = False


def jit(func):
    if NUMBA_OK:
        return _njit(cache=True, nogil=True)(func)
    return func


__all__ = ["jit", "NUMBA_OK"]
