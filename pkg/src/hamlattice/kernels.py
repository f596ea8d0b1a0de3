"""Kernel selection: the compiled extension when it imports, else pure Python.

Set ``HAMLATTICE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("HAMLATTICE_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

scan_box = _impl.scan_box

__all__ = ["BACKEND", "scan_box"]
