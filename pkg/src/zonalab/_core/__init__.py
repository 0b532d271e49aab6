"""Backend selection for the recurrence kernels.

The compiled extension is preferred when importable; the numpy fallback is
behaviourally identical.  Set ZONALAB_BACKEND=python (or =cython) to force
a choice; forcing cython raises if the extension is missing.
"""

import os

_requested = os.environ.get("ZONALAB_BACKEND", "auto").lower()

if _requested in ("auto", "", "cython", "c"):
    try:
        from . import _gegcore as _impl
        BACKEND = "cython"
    except ImportError:
        if _requested in ("cython", "c"):
            raise
        from . import _gegpy as _impl
        BACKEND = "python"
elif _requested in ("python", "numpy", "py"):
    from . import _gegpy as _impl
    BACKEND = "python"
else:
    raise ValueError(f"unrecognized ZONALAB_BACKEND={_requested!r}")

geg_eval = _impl.geg_eval
geg_table = _impl.geg_table

__all__ = ["BACKEND", "geg_eval", "geg_table"]
