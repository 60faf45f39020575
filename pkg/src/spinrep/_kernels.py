"""Index kernels for basis-state permutations and spectrum clustering.

Each kernel has a numba ``@njit`` implementation and a pure-numpy twin.
Set ``SPINREP_DISABLE_NUMBA=1`` to force the numpy path (the choice is made
once, at import time).
"""
import os

import numpy as np

_DISABLED = os.environ.get("SPINREP_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag in CI
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


# --- pure numpy ------------------------------------------------------------

def site_permutation_targets_np(images, d, n):
    """Target index of every basis state when site k's content moves to site images[k]."""
    dim = d ** n
    digits = np.unravel_index(np.arange(dim), (d,) * n)
    moved = [None] * n
    for k in range(n):
        moved[images[k]] = digits[k]
    return np.ravel_multi_index(tuple(moved), (d,) * n).astype(np.int64)


def state_permutation_targets_np(state_images, n):
    d = len(state_images)
    dim = d ** n
    table = np.asarray(state_images, dtype=np.int64)
    digits = np.unravel_index(np.arange(dim), (d,) * n)
    return np.ravel_multi_index(tuple(table[g] for g in digits), (d,) * n).astype(np.int64)


def cluster_labels_np(values, tol):
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return np.zeros(0, dtype=np.int64)
    breaks = np.diff(values) > tol
    return np.concatenate(([0], np.cumsum(breaks))).astype(np.int64)


# --- numba -----------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _site_permutation_targets_nb(images, d, n):
        dim = d ** n
        out = np.empty(dim, dtype=np.int64)
        digits = np.empty(n, dtype=np.int64)
        moved = np.empty(n, dtype=np.int64)
        for idx in range(dim):
            rem = idx
            for k in range(n - 1, -1, -1):
                digits[k] = rem % d
                rem //= d
            for k in range(n):
                moved[images[k]] = digits[k]
            t = 0
            for k in range(n):
                t = t * d + moved[k]
            out[idx] = t
        return out

    @njit(cache=True)
    def _state_permutation_targets_nb(state_images, n):
        d = state_images.shape[0]
        dim = d ** n
        out = np.empty(dim, dtype=np.int64)
        for idx in range(dim):
            rem = idx
            t = 0
            scale = 1
            for _ in range(n):
                t += state_images[rem % d] * scale
                rem //= d
                scale *= d
            out[idx] = t
        return out

    @njit(cache=True)
    def _cluster_labels_nb(values, tol):
        out = np.zeros(values.shape[0], dtype=np.int64)
        label = 0
        for i in range(1, values.shape[0]):
            if values[i] - values[i - 1] > tol:
                label += 1
            out[i] = label
        return out


def site_permutation_targets(images, d, n, use_numba=None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _site_permutation_targets_nb(np.asarray(images, dtype=np.int64), int(d), int(n))
    return site_permutation_targets_np(images, d, n)


def state_permutation_targets(state_images, n, use_numba=None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _state_permutation_targets_nb(np.asarray(state_images, dtype=np.int64), int(n))
    return state_permutation_targets_np(state_images, n)


def cluster_labels(values, tol, use_numba=None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _cluster_labels_nb(np.ascontiguousarray(values, dtype=np.float64), float(tol))
    return cluster_labels_np(values, tol)
