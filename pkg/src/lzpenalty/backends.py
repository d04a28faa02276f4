"""Kernel backend selection.

The hot inner loops (suffix matching, extension scanning, greedy parse)
exist twice: as numba ``@njit`` kernels and as vectorized numpy
fallbacks.  Both produce bit-identical results; only latency differs.

Set ``LZPENALTY_DISABLE_NUMBA=1`` to force the numpy path (also used
automatically when numba is not importable).
"""

import os

_FLAG = os.environ.get("LZPENALTY_DISABLE_NUMBA", "").strip().lower()
_NUMBA_DISABLED = _FLAG in ("1", "true", "yes", "on")

if not _NUMBA_DISABLED:
    try:
        from . import _kernels_numba as _active
        ACTIVE_BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as _active
        ACTIVE_BACKEND = "numpy"
else:
    from . import _kernels_numpy as _active
    ACTIVE_BACKEND = "numpy"


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return ACTIVE_BACKEND


def get_kernels(backend: str | None = None):
    """Return the kernel module for ``backend`` (default: the active one).

    Raises ImportError if the numba backend is requested but unavailable.
    """
    if backend is None or backend == ACTIVE_BACKEND:
        return _active
    if backend == "numpy":
        from . import _kernels_numpy
        return _kernels_numpy
    if backend == "numba":
        from . import _kernels_numba
        return _kernels_numba
    raise ValueError(f"unknown backend {backend!r} (expected 'numba' or 'numpy')")
