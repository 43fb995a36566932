"""Kernel backend selection.

The compiled extension is preferred when present; the pure NumPy fallback
implements the identical algorithms and random streams.  Set
RANKTWO_BACKEND=python or RANKTWO_BACKEND=compiled to force a choice.
"""

from __future__ import annotations

import os

_choice = os.environ.get("RANKTWO_BACKEND", "").strip().lower()

if _choice == "python":
    from . import _ref as _impl
elif _choice == "compiled":
    from . import _core as _impl  # type: ignore[no-redef]
elif _choice == "":
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _ref as _impl
else:
    raise ImportError(
        f"RANKTWO_BACKEND must be 'compiled' or 'python', got {_choice!r}"
    )

roof_anneal = _impl.roof_anneal
grid_scan = _impl.grid_scan


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return _impl.BACKEND
