"""Numerical kernel backend selection.

The compiled Cython extension is preferred when present; the pure NumPy
fallback is used otherwise.  Set ``DEPHLAB_PURE_PYTHON=1`` to force the
fallback (useful for benchmarking and debugging).
"""

import os

from . import _kernels_py

if os.environ.get("DEPHLAB_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND


def available_backends():
    """Names and modules of every importable kernel backend."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out
