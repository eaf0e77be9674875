"""DTW kernel backend selection.

Prefers the compiled Cython extension; falls back to the pure-Python twin
when the extension is missing (source checkout without a build) or when
the SRLBOARD_PURE_PYTHON environment variable is set to a truthy value.
"""

import os

import numpy as np

if os.environ.get("SRLBOARD_PURE_PYTHON", "") not in ("", "0"):
    from . import dtw_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _dtw as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import dtw_py as _impl

        BACKEND = "python"


def dtw(a, b) -> float:
    """DTW distance between two non-empty sequences (any numeric dtype)."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    return float(_impl.dtw(a, b))


def dtw_matrix(x) -> np.ndarray:
    """Symmetric all-pairs DTW over the rows of a 2-D array."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    return np.asarray(_impl.dtw_matrix(x))
