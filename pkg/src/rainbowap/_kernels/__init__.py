"""Scan kernels with backend selection at import time.

The compiled extension is preferred; when it is absent (no compiler at
install time, or a source checkout without `build_ext`) the NumPy fallback
takes over with identical semantics. `BACKEND` records which one is active.
"""

from . import _ref

try:
    from . import _fast as _impl

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the install
    _impl = _ref
    BACKEND = "numpy"

grid_norms = _impl.grid_norms
ap_scan = _impl.ap_scan


def backends() -> dict:
    """Importable backends by name, for benchmarks and equivalence tests."""
    out = {"numpy": _ref}
    if BACKEND == "compiled":
        out["compiled"] = _impl
    return out
