"""Pick the compiled kernels when available, else the pure-Python fallback.

Set ``OSCAR2D_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

fallback = _fallback

if os.environ.get("OSCAR2D_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _fallback
        BACKEND = "python"
