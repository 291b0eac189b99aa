"""Input checks for array-shaped task data."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .core import Instance, InvalidInstanceError


def check_tasks(X, period, ids=None) -> Instance:
    """Validate an ``(n, 2)`` array of (start, end) times and wrap it.

    Float input is accepted only when every value is integral.  Task ids
    default to ``0..n-1`` so they coincide with row numbers.
    """
    X = check_array(X, dtype=None, ensure_2d=True, ensure_min_samples=1)
    if X.shape[1] != 2:
        raise InvalidInstanceError(f"expected 2 columns (start, end), got {X.shape[1]}")
    if X.dtype.kind == "f":
        if not np.all(np.mod(X, 1) == 0):
            raise InvalidInstanceError("task times must be integers")
        X = X.astype(np.int64)
    elif X.dtype.kind not in "iu":
        raise InvalidInstanceError(f"task times must be integers, got dtype {X.dtype}")
    if ids is None:
        ids = np.arange(X.shape[0])
    return Instance.from_arrays(period, X[:, 0], X[:, 1], ids)
