"""Grid kernels, compiled when available.

Set ``STRATUM_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("STRATUM_PURE_PYTHON"):
    from ._kernels_py import forward_grid, scaled_round
    BACKEND = "python"
else:
    try:
        from ._kernels import forward_grid, scaled_round
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import forward_grid, scaled_round
        BACKEND = "python"

__all__ = ["forward_grid", "scaled_round", "BACKEND"]
