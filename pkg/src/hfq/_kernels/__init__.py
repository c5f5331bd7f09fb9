"""Counting-kernel backend selection.

The compiled Cython backend is preferred; the numpy reference backend is the
fallback.  HFQ_KERNEL_BACKEND=python|cython forces a choice (forcing cython
when the extension failed to build raises ImportError).
"""

from __future__ import annotations

import os

from . import pyref

_choice = os.environ.get("HFQ_KERNEL_BACKEND", "auto").lower()

if _choice == "python":
    backend = pyref
elif _choice == "cython":
    from . import _ckernels as backend  # noqa: F401  (ImportError is the contract)
else:
    try:
        from . import _ckernels as backend
    except ImportError:
        backend = pyref

BACKEND_NAME: str = backend.BACKEND_NAME
exp_table = backend.exp_table
triple_class_counts = backend.triple_class_counts
poly_quad_counts = backend.poly_quad_counts
