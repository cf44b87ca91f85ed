"""JIT switch for the numeric kernels.

Set ``MULTIFAN_DISABLE_JIT=1`` to run every kernel as plain Python over numpy
arrays. Useful for debugging and for checking the compiled path against the
interpreted one.
"""

from __future__ import annotations

import os

_FLAG = os.environ.get("MULTIFAN_DISABLE_JIT", "").strip().lower()
JIT_ENABLED = _FLAG not in ("1", "true", "yes", "on")

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        JIT_ENABLED = False

if not JIT_ENABLED:

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper


__all__ = ["JIT_ENABLED", "njit"]
