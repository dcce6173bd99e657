"""Kernel selection: compiled extension when built, NumPy fallback otherwise.

Set the environment variable CHIRALWEDGE_NO_EXT=1 to force the fallback
(used by the kernel benchmark and the equivalence tests).
"""

import os

from . import _kernels_np

if os.environ.get("CHIRALWEDGE_NO_EXT"):
    _impl = _kernels_np
    HAVE_EXT = False
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        HAVE_EXT = True
    except ImportError:
        _impl = _kernels_np
        HAVE_EXT = False

occ_product = _impl.occ_product
occ_product_batch = _impl.occ_product_batch
occ_product_real_batch = _impl.occ_product_real_batch
phase_table = _impl.phase_table
