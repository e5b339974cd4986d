"""Selects the hot-kernel backend at import time.

The compiled extension is preferred when it is importable; otherwise the
pure-Python twin takes over transparently. Set ``BURESCORR_BACKEND`` to
``compiled`` or ``python`` to force a choice (``compiled`` raises if the
extension is missing rather than silently degrading).
"""

import os

_forced = os.environ.get("BURESCORR_BACKEND")

if _forced == "python":
    from . import _kernels_py as kernels
elif _forced == "compiled":
    from . import _kernels as kernels  # type: ignore[no-redef]
elif _forced is None:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels
else:
    raise ImportError(f"BURESCORR_BACKEND={_forced!r}: expected 'compiled' or 'python'")

BACKEND = kernels.BACKEND
