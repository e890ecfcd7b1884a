"""Backend selection for the batch kernels.

The compiled extension is used when importable; set ``FQGEOM_PURE_PYTHON=1``
to force the numpy fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("FQGEOM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

vadd = _impl.vadd
vmul = _impl.vmul
eval_terms = _impl.eval_terms


def backends():
    """Return the available kernel modules keyed by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels as compiled
        out["cython"] = compiled
    except ImportError:
        pass
    return out
