"""Point-counting kernels: compiled extension when built, numpy fallback otherwise.

Set ``SHAFORGE_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("SHAFORGE_PURE", "") not in ("", "0"):
    from ._kernels_py import BACKEND, ap_good_batch, count_bsgs, count_exhaustive
else:
    try:
        from ._kernels import BACKEND, ap_good_batch, count_bsgs, count_exhaustive
    except ImportError:
        from ._kernels_py import BACKEND, ap_good_batch, count_bsgs, count_exhaustive

__all__ = ["count_exhaustive", "count_bsgs", "ap_good_batch", "BACKEND"]
