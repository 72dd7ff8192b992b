"""Kernel backend selection.

The compiled Cython kernel is preferred when importable; otherwise the
pure-Python twin serves every call.  Setting SOLENOID_PURE_PYTHON=1 forces
the fallback (useful for debugging and for the backend benchmark).
"""

import os

from . import _kernels_py

if os.environ.get("SOLENOID_PURE_PYTHON") == "1":
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py


def backend_name() -> str:
    """'compiled' when the Cython kernel is active, else 'python'."""
    return "compiled" if kernels.COMPILED else "python"


def available_backends():
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
