"""Kernel backend selection.

ORIENTDP_BACKEND=numba|numpy|auto picks the implementation at import time
(auto, the default, prefers numba and falls back to numpy).  Both backends
export the same functions; get_backend() lets tests and benchmarks address
either one explicitly.
"""

import os
import warnings

INF_INT = 1 << 30

_CHOICE = os.environ.get("ORIENTDP_BACKEND", "auto").lower()
if _CHOICE not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"ORIENTDP_BACKEND must be auto, numba or numpy, got {_CHOICE!r}"
    )


def get_backend(name):
    """Import a backend module by name ('numba' or 'numpy')."""
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba
    if name == "numpy":
        from . import _kernels_numpy

        return _kernels_numpy
    raise ValueError(f"unknown backend {name!r}")


if _CHOICE == "numpy":
    impl = get_backend("numpy")
    BACKEND_NAME = "numpy"
elif _CHOICE == "numba":
    impl = get_backend("numba")
    BACKEND_NAME = "numba"
else:
    try:
        impl = get_backend("numba")
        BACKEND_NAME = "numba"
    except ImportError:
        warnings.warn("numba unavailable, falling back to the numpy backend")
        impl = get_backend("numpy")
        BACKEND_NAME = "numpy"

scan_min_diameter = impl.scan_min_diameter
scan_decide_diameter = impl.scan_decide_diameter
scan_min_wiener = impl.scan_min_wiener
csr_all_dist = impl.csr_all_dist
csr_diameter = impl.csr_diameter
csr_wiener = impl.csr_wiener
csr_diameter_at_most = impl.csr_diameter_at_most
