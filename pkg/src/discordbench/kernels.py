"""Backend selection for the measurement-scan kernel.

The compiled Cython extension is preferred; a pure-numpy implementation with
identical semantics is the fallback. Set ``DISCORDBENCH_PURE_PYTHON=1`` in
the environment to force the fallback (used by the benchmark and tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

_FORCE_PY = os.environ.get("DISCORDBENCH_PURE_PYTHON", "").strip() not in ("", "0")

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not _FORCE_PY:
    _impl, BACKEND = _compiled, "cython"
else:
    _impl, BACKEND = _kernels_py, "python"

_BY_NAME = {"python": _kernels_py, "cython": _compiled}


def available_backends() -> tuple[str, ...]:
    """Names accepted by the ``impl`` argument of the scan."""
    return ("python",) if _compiled is None else ("python", "cython")


def conditional_entropy_scan(rho, thetas, phis, impl=None) -> np.ndarray:
    """Evaluate S(A | measurement on B) in bits for arrays of Bloch angles.

    ``thetas`` and ``phis`` are paired arrays of equal length; the result has
    one entry per pair. ``impl`` overrides the selected backend by name
    ("python" or "cython"), used for cross-checks and benchmarks.
    """
    rho = np.ascontiguousarray(np.asarray(rho, dtype=np.complex128))
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    phis = np.ascontiguousarray(phis, dtype=np.float64)
    if thetas.ndim != 1 or thetas.shape != phis.shape:
        raise ValueError("thetas and phis must be 1-d arrays of equal length")
    if impl is None:
        mod = _impl
    else:
        mod = _BY_NAME.get(impl)
        if mod is None:
            raise ValueError(f"unknown backend {impl!r}; have {available_backends()}")
    return mod.conditional_entropy_scan(rho, thetas, phis)
