"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting ``FRACORLICZ_PURE=1``
forces the numpy fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
pair_moments = _pykernels.pair_moments

if os.environ.get("FRACORLICZ_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # pragma: no cover - depends on the build
        pass
    else:
        pair_moments = _ckernels.pair_moments
        BACKEND = "cython"
