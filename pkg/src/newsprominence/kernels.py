"""Kernel backend selection.

The Cython extension ``_ckernels`` is used when it was compiled; otherwise
the numpy implementations in ``_pykernels`` are loaded. Set
``NEWSPROMINENCE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from newsprominence import _pykernels

if os.environ.get("NEWSPROMINENCE_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from newsprominence import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

js_distance = _impl.js_distance
bow_jsd_matrix = _impl.bow_jsd_matrix
bow_jsd_cross = _impl.bow_jsd_cross
power_iterate = _impl.power_iterate
ks_statistic = _impl.ks_statistic


def backends():
    """Return every importable backend module keyed by name."""
    found = {"python": _pykernels}
    try:
        from newsprominence import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
