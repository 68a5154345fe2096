"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
fallback is numerically identical, just slower.  Set ``BIPERC_BACKEND=python``
to force the fallback (useful for benchmarking and debugging).
"""

import os

from . import _pykernels

if os.environ.get("BIPERC_BACKEND", "").lower() in ("python", "pure", "py"):
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _pykernels


def backend_name() -> str:
    """'compiled' when the extension is active, else 'python'."""
    return "python" if kernels is _pykernels else "compiled"


def get_backend(name: str):
    """Fetch a backend module by name ('compiled' or 'python')."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _kernels  # raises ImportError when not built

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
