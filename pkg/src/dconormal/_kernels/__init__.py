"""Hot polynomial kernels.

The compiled extension ``_ckernel`` is used when it was built; otherwise the
pure-Python module with the identical contract is used.  Setting the
environment variable ``DCONORMAL_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("DCONORMAL_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernel as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernel as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pykernel as _impl
        BACKEND = "python"

add_scaled = _impl.add_scaled
divides = _impl.divides
gm_update = _impl.gm_update
lcm_exponents = _impl.lcm_exponents
mul = _impl.mul
reduce_full = _impl.reduce_full
spoly = _impl.spoly

__all__ = [
    "BACKEND", "add_scaled", "divides", "gm_update", "lcm_exponents", "mul",
    "reduce_full", "spoly",
]
