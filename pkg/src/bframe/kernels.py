"""Kernel dispatch: compiled extension when importable, numpy otherwise.

Set ``BFRAME_PURE_PYTHON=1`` before import to force the numpy route.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py

_compiled: ModuleType | None
try:
    from . import _ckernels as _compiled
except ImportError:
    _compiled = None


def get_backend(name: str) -> ModuleType:
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


if _compiled is not None and os.environ.get("BFRAME_PURE_PYTHON") != "1":
    BACKEND = "cython"
    _impl = _compiled
else:
    BACKEND = "python"
    _impl = _kernels_py

rank = _impl.rank
min_weight_span = _impl.min_weight_span
popcount_rows = _kernels_py.popcount_rows
