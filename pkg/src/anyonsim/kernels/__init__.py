"""Backend selection for the combinatorial kernels.

The compiled extension is preferred when it was built; otherwise the NumPy
fallback in :mod:`anyonsim.kernels.pykernels` is used.  Setting the
environment variable ``ANYONSIM_PURE_PYTHON=1`` forces the fallback, which
the benchmark suite uses to compare the two.

``BACKEND`` names the selected implementation ("compiled" or "python").
"""

import os

from . import pykernels

if os.environ.get("ANYONSIM_PURE_PYTHON"):
    _impl = pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = pykernels
        BACKEND = "python"

immanant_sum = _impl.immanant_sum
ryser_permanent = _impl.ryser_permanent

__all__ = ["immanant_sum", "ryser_permanent", "BACKEND", "pykernels"]
