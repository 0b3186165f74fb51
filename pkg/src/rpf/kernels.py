"""Backend selection for the fixed-point kernels.

The compiled extension is used when it imports cleanly; set
``RPF_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _kernels_py

if os.environ.get("RPF_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
hyper_series = _impl.hyper_series
theta_sums = _impl.theta_sums
lambert_sums = _impl.lambert_sums
euler_product = _impl.euler_product
lll_reduce = _impl.lll_reduce


def backends():
    """Return ``{name: module}`` for every importable kernel backend."""
    found = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
