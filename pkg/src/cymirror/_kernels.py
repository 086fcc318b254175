"""Backend selection for the hot F_p kernels.

The numba backend is the default; set CYMIRROR_NO_NUMBA=1 to force the
pure-numpy fallback (or it is picked automatically when numba is absent).
"""

import os

if os.environ.get("CYMIRROR_NO_NUMBA"):
    from ._kernels_numpy import merge_axpy, poly_mul, reduce_full  # noqa: F401

    BACKEND = "numpy"
else:
    try:
        from ._kernels_numba import merge_axpy, poly_mul, reduce_full  # noqa: F401

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - exercised only without numba
        from ._kernels_numpy import merge_axpy, poly_mul, reduce_full  # noqa: F401

        BACKEND = "numpy"
