"""Pick the compiled kernel when it is importable, otherwise the pure-Python one.

Set ``WEBCAT_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("WEBCAT_PURE_PYTHON") == "1":
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

BACKEND = kernel.BACKEND
apply_layer = kernel.apply_layer
push_columns = kernel.push_columns
prefix_parity = kernel.prefix_parity
