"""Numeric kernels with a compiled core and a pure-Python fallback.

The Cython extension is preferred when importable; set IRSWPSN_PURE_KERNELS=1
to force the fallback.  irswpsn.kernels.BACKEND reports which one is live.
"""

import os

from . import pure as _pure
from .eigen import max_eigenpair

__all__ = [
    "lambert_w0",
    "max_eigenpair",
    "golden_section_max",
    "bisect_root",
    "kkt_general_alloc",
    "BACKEND",
]

if os.environ.get("IRSWPSN_PURE_KERNELS"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

lambert_w0 = _impl.lambert_w0
golden_section_max = _impl.golden_section_max
bisect_root = _impl.bisect_root
kkt_general_alloc = _impl.kkt_general_alloc
