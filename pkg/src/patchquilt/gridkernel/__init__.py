"""Grid evaluation backends.

Imports the compiled Cython kernel when it was built, otherwise the pure
Python fallback. PATCHWORK_BACKEND=python|cython forces a backend (cython
raises if the extension is missing). Both backends are bit-identical; the
compiled one is just fast.
"""

import os

_requested = os.environ.get("PATCHWORK_BACKEND", "auto").strip().lower()

if _requested in ("python", "py", "pure"):
    from ._pyfill import fill_rows

    BACKEND = "python"
elif _requested in ("auto", "", "cython", "c", "compiled"):
    try:
        from ._gridcore import fill_rows

        BACKEND = "cython"
    except ImportError:
        if _requested not in ("auto", ""):
            raise ImportError(
                "PATCHWORK_BACKEND requested the compiled kernel but the "
                "extension is not built; reinstall the package or set "
                "PATCHWORK_BACKEND=python"
            ) from None
        from ._pyfill import fill_rows

        BACKEND = "python"
else:
    raise ImportError(
        f"unknown PATCHWORK_BACKEND value {_requested!r}; "
        "use 'auto', 'cython', or 'python'"
    )

__all__ = ["fill_rows", "BACKEND"]
