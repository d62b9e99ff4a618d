"""Enumeration kernel backend selection.

Imports the compiled kernel when it was built, otherwise the NumPy
fallback.  Both expose ``weight_counts`` and ``min_weight`` with identical
contracts and bit-identical outputs.  Set LRCLAB_KERNEL=python to force the
fallback (used by the benchmark and the agreement tests).
"""

import os

from . import _enum_py

if os.environ.get("LRCLAB_KERNEL", "").lower() == "python":
    _impl = _enum_py
    BACKEND = "python"
else:
    try:
        from . import _enum_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _enum_py
        BACKEND = "python"

weight_counts = _impl.weight_counts
min_weight = _impl.min_weight

__all__ = ["weight_counts", "min_weight", "BACKEND"]
