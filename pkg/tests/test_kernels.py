import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinrep import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not importable")


@st.composite
def perm_and_shape(draw):
    d = draw(st.integers(2, 4))
    n = draw(st.integers(1, 5 if d <= 3 else 4))
    images = draw(st.permutations(range(n)))
    return np.array(images, dtype=np.int64), d, n


@needs_numba
@given(perm_and_shape())
def test_site_targets_backends_agree(args):
    images, d, n = args
    a = _kernels.site_permutation_targets(images, d, n, use_numba=True)
    b = _kernels.site_permutation_targets(images, d, n, use_numba=False)
    assert np.array_equal(a, b)
    assert sorted(a) == list(range(d ** n))


@needs_numba
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(st.permutations(range(d)), st.integers(1, 4))))
def test_state_targets_backends_agree(args):
    images, n = args
    images = np.array(images, dtype=np.int64)
    a = _kernels.state_permutation_targets(images, n, use_numba=True)
    b = _kernels.state_permutation_targets(images, n, use_numba=False)
    assert np.array_equal(a, b)


@needs_numba
@given(st.lists(st.floats(-5, 5), max_size=40), st.sampled_from([1e-12, 1e-8, 0.1]))
def test_cluster_backends_agree(values, tol):
    v = np.sort(np.array(values, dtype=float))
    assert np.array_equal(_kernels.cluster_labels(v, tol, use_numba=True),
                          _kernels.cluster_labels(v, tol, use_numba=False))


def test_site_targets_small_case():
    # two qubits, swap the sites: |ud> (index 1) <-> |du> (index 2)
    t = _kernels.site_permutation_targets_np(np.array([1, 0]), 2, 2)
    assert list(t) == [0, 2, 1, 3]


def test_cluster_chain_rule():
    labels = _kernels.cluster_labels_np(np.array([0.0, 0.05, 0.1, 1.0]), 0.06)
    assert list(labels) == [0, 0, 0, 1]


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, SPINREP_DISABLE_NUMBA="1")
    code = "from spinrep import _kernels; print(_kernels.USE_NUMBA)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_numpy_backend_reproduces_schroedinger_spectrum():
    env = dict(os.environ, SPINREP_DISABLE_NUMBA="1")
    code = (
        "from spinrep import SiteSystem, schroedinger_hamiltonian, spectrum\n"
        "r = spectrum(schroedinger_hamiltonian(SiteSystem.of('1', 3)))\n"
        "print([(c.exact, c.multiplicity) for c in r.classes])"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "[('-3', 1), ('0', 16), ('3', 10)]"
