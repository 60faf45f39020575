"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Both backends are called in-process through the ``use_numba`` switch, so the
numbers compare the kernels themselves; the first numba call (compilation or
cache load) is excluded.
"""
import argparse
import timeit

import numpy as np

from spinrep import _kernels

CASES = [
    ("site targets S=1/2 N=12", _kernels.site_permutation_targets, lambda: (np.roll(np.arange(12), 1), 2, 12)),
    ("site targets S=1 N=7", _kernels.site_permutation_targets, lambda: (np.roll(np.arange(7), 1), 3, 7)),
    ("state targets d=3 N=7", _kernels.state_permutation_targets, lambda: (np.array([1, 2, 0]), 7)),
    ("state targets d=4 N=6", _kernels.state_permutation_targets, lambda: (np.array([1, 0, 3, 2]), 6)),
    ("cluster 4096 values", _kernels.cluster_labels,
     lambda: (np.sort(np.round(np.random.default_rng(0).normal(size=4096), 3)), 1e-8)),
]


def bench(fn, args, use_numba, repeat):
    fn(*args, use_numba=use_numba)  # warm up
    return min(timeit.repeat(lambda: fn(*args, use_numba=use_numba), number=5, repeat=repeat)) / 5


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    ns = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or disabled by SPINREP_DISABLE_NUMBA); nothing to compare")
        return
    print(f"{'kernel':28s} {'numpy [us]':>12s} {'numba [us]':>12s} {'speedup':>8s}")
    for name, fn, make in CASES:
        args = make()
        a = fn(*args, use_numba=False)
        b = fn(*args, use_numba=True)
        assert np.array_equal(a, b), name
        t_np = bench(fn, args, False, ns.repeat)
        t_nb = bench(fn, args, True, ns.repeat)
        print(f"{name:28s} {t_np * 1e6:12.1f} {t_nb * 1e6:12.1f} {t_np / t_nb:8.2f}")


if __name__ == "__main__":
    main()
