"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback. Set ``ANTICHEEGER_PURE=1`` to force the fallback.
"""

import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("ANTICHEEGER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback

order_sums = _impl.order_sums
tie_split = _impl.tie_split
flip_gain = _impl.flip_gain
adjacency_matvec = _impl.adjacency_matvec
enumerate_cuts = _impl.enumerate_cuts
median_stats = _impl.median_stats
boundary_indicator = _impl.boundary_indicator

__all__ = [
    "BACKEND",
    "order_sums",
    "tie_split",
    "flip_gain",
    "adjacency_matvec",
    "enumerate_cuts",
    "median_stats",
    "boundary_indicator",
]
