"""Backend selection for the hot kernels.

The compiled extension is used when it was built and importable; otherwise the
pure-Python module is used.  Setting ``MOORE_TRIBE_PURE=1`` forces the pure
backend (handy for parity tests and benchmarks).
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("MOORE_TRIBE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

enumerate_maps = _impl.enumerate_maps
path_adjacent = _impl.path_adjacent
walks = _impl.walks

__all__ = ["BACKEND", "enumerate_maps", "path_adjacent", "walks"]
