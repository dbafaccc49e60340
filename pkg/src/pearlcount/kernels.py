"""Hot-loop kernels, compiled when available.

``PEARL_PURE_PYTHON=1`` forces the reference implementation. ``BACKEND`` names
the implementation actually loaded.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("PEARL_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

poly_mul = _impl.poly_mul
echelon_diagonal = _impl.echelon_diagonal
bareiss_det = _pykernels.bareiss_det
gcd_of = _pykernels.gcd_of

__all__ = ["BACKEND", "poly_mul", "echelon_diagonal", "bareiss_det", "gcd_of"]
