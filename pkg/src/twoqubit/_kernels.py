"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels are used. Set ``TWOQUBIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("TWOQUBIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ext as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.NAME
jacobi_eigh = _impl.jacobi_eigh
jacobi_svdvals = _impl.jacobi_svdvals
refine_isometry = _impl.refine_isometry
average_entanglement_rows = _impl.average_entanglement_rows


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    found = {"python": _pykernels}
    try:
        from . import _ext
    except ImportError:
        pass
    else:
        found["cython"] = _ext
    return found
