"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Set ``CRITSURF_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("CRITSURF_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
solve = _impl.solve
extends_batch = _impl.extends_batch
canonical_code = _impl.canonical_code

__all__ = ["BACKEND", "solve", "extends_batch", "canonical_code"]
