"""Kernel selection.

The compiled extension is used when it was built; otherwise, or when
NCPART_PURE_PYTHON is set, the pure-Python module stands in.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("NCPART_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

IMPLEMENTATION = _impl.IMPLEMENTATION
_INT64_SAFE = 2**62


def noncrossing(labels):
    return bool(_impl.noncrossing(np.ascontiguousarray(labels, dtype=np.int_)))


def refinement_matrix(labels):
    arr = np.ascontiguousarray(labels, dtype=np.int_)
    if arr.ndim != 2 or arr.shape[0] == 0:
        return np.zeros((arr.shape[0], arr.shape[0]), dtype=np.uint8)
    return _impl.refinement_matrix(arr)


def chain_count(leq, masks):
    """Multichain count; falls back to Python ints if int64 could overflow."""
    masks = np.ascontiguousarray(masks, dtype=np.uint8)
    leq = np.ascontiguousarray(leq, dtype=np.uint8)
    if masks.shape[0] == 0:
        return 1
    bound = 1
    for row in masks:
        bound *= max(int(row.sum()), 1)
    if bound >= _INT64_SAFE:
        return _kernels_py.chain_count(leq, masks)
    return int(_impl.chain_count(leq, masks))
