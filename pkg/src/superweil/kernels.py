"""Kernel backend selection.

The hot loops (sparse elimination, operator composition) exist twice: a
compiled Cython extension (superweil._elim_fast) and a pure-Python
reference (superweil._elim_py).  Both implement the identical algorithm
with the identical pivot rule, so every result is bit-for-bit the same;
set SUPERWEIL_PURE=1 to force the Python twin (used by the benchmark and
the backend-agreement tests).
"""

from __future__ import annotations

import os

from . import _elim_py

if os.environ.get("SUPERWEIL_PURE"):
    _impl = _elim_py
else:
    try:
        from . import _elim_fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _elim_py

BACKEND: str = _impl.BACKEND

eliminate = _impl.eliminate
nullspace_from_rref = _impl.nullspace_from_rref
compose_cols = _impl.compose_cols
row_axpy = _impl.row_axpy
