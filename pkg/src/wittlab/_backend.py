"""Selects the compiled kernels when available.

Set ``WITTLAB_BACKEND=python`` to force the numpy fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("WITTLAB_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        kernels = _compiled
        BACKEND = "compiled"

__all__ = ["BACKEND", "kernels"]
