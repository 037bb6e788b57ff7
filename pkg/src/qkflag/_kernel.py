"""Select the compiled kernel when available.

Set ``QKFLAG_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("QKFLAG_PURE_PYTHON", "") not in ("", "0"):
    from qkflag._kernel_py import *  # noqa: F401,F403
    from qkflag._kernel_py import IMPLEMENTATION
else:
    try:
        from qkflag._kernel_c import *  # noqa: F401,F403
        from qkflag._kernel_c import IMPLEMENTATION
    except ImportError:
        from qkflag._kernel_py import *  # noqa: F401,F403
        from qkflag._kernel_py import IMPLEMENTATION

__all__ = [
    "IMPLEMENTATION",
    "mono_mul",
    "mono_div",
    "mono_lcm",
    "divides",
    "find_reducer",
    "poly_mul",
    "addmul_inplace",
    "leading",
]
