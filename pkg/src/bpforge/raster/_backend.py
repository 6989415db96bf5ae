"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
fallback is otherwise used. Set ``BPFORGE_PURE_KERNELS=1`` to force the
fallback (the kernel benchmark uses this to compare both).
"""

import os

if os.environ.get("BPFORGE_PURE_KERNELS") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def kernel_backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return kernels.BACKEND_NAME
