"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imports; set ``HYPO_KERNELS=python``
to force the fallback. Both backends expose ``jacobi_eigenvalues`` and
``canonical_labeling`` with identical semantics.
"""

import os

from . import _pykernels
from .errors import JacobiNoConvergence

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

_requested = os.environ.get("HYPO_KERNELS", "").strip().lower()
if _requested == "python" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"

_impl = BACKENDS[BACKEND]
_C_MAX_ORDER = getattr(_ckernels, "MAX_ORDER", 0)


def jacobi_eigenvalues(flat, n, tol, max_sweeps=100):
    return _impl.jacobi_eigenvalues(flat, n, tol, max_sweeps)


def canonical_labeling(n, adj):
    if _impl is not _pykernels and n > _C_MAX_ORDER:
        return _pykernels.canonical_labeling(n, adj)
    return _impl.canonical_labeling(n, adj)


__all__ = [
    "BACKEND",
    "BACKENDS",
    "JacobiNoConvergence",
    "canonical_labeling",
    "jacobi_eigenvalues",
]
