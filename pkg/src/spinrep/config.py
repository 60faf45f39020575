import os

DEFAULT_MAX_DIM = 4096

_max_dim = int(os.environ.get("SPINREP_MAX_DIM", DEFAULT_MAX_DIM))


def max_dim():
    return _max_dim


def set_max_dim(value):
    """Change the total-dimension cap; returns the previous value."""
    global _max_dim
    if value < 1:
        raise ValueError("dimension cap must be positive")
    old, _max_dim = _max_dim, int(value)
    return old
