"""Select the compiled kernel when available, else the pure-Python one.

Set ``OSPQ_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("OSPQ_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    Reducer = _compiled.Reducer
    BACKEND = "cython"
else:
    Reducer = _kernels_py.Reducer
    BACKEND = "python"

PyReducer = _kernels_py.Reducer
CompiledReducer = None if _compiled is None else _compiled.Reducer

__all__ = ["BACKEND", "Reducer", "PyReducer", "CompiledReducer"]
