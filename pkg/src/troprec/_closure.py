"""Select the closure kernel: compiled when available, pure Python otherwise.

Set TROPREC_PURE=1 to force the Python fallback (used by the benchmark and by
tests that compare the two implementations).
"""

import os

if os.environ.get("TROPREC_PURE") == "1":
    from ._closure_py import BIG, Closure

    BACKEND = "python"
else:
    try:
        from ._closure_cy import BIG, Closure

        BACKEND = "cython"
    except ImportError:
        from ._closure_py import BIG, Closure

        BACKEND = "python"

__all__ = ["Closure", "BIG", "BACKEND"]
