"""Select the compiled stepper when it is importable, else the numpy one.

Set ``TODA_PURE_PYTHON=1`` to force the numpy implementation.
"""
import os

from . import _fallback

BACKEND = "python"
rk4_banded = _fallback.rk4_banded

if not os.environ.get("TODA_PURE_PYTHON"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        rk4_banded = _kernels.rk4_banded
        BACKEND = "cython"

__all__ = ["rk4_banded", "BACKEND"]
