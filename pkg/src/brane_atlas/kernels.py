"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting the environment
variable ``BRANE_ATLAS_BACKEND=python`` forces the pure-Python fallback.
``BACKEND`` names the active choice.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("BRANE_ATLAS_BACKEND", "").lower() == "python":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"

mul_table = _impl.mul_table
twisted_class_labels = _impl.twisted_class_labels
stabilizer = _impl.stabilizer
census_count = _impl.census_count

__all__ = ["BACKEND", "mul_table", "twisted_class_labels", "stabilizer", "census_count"]
