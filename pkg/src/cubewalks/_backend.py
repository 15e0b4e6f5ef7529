"""Backend selection for the hot trial kernels.

CUBEWALKS_BACKEND=numba forces the accelerated kernels, =python forces the
pure-Python fallback; the default tries numba and falls back. Both backends
produce bit-identical results (tested), so the flag only changes speed.
"""

from __future__ import annotations

import os

_requested = os.environ.get("CUBEWALKS_BACKEND", "auto")

if _requested not in ("auto", "numba", "python"):
    raise RuntimeError(
        f"CUBEWALKS_BACKEND must be 'numba' or 'python', got {_requested!r}"
    )

if _requested == "python":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels_numba as kernels
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND_NAME


def get_kernels(name: str):
    """Explicit backend access, used by equivalence tests and benchmarks."""
    if name == "python":
        from . import _kernels_py

        return _kernels_py
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba
    raise ValueError(f"unknown backend {name!r}")
