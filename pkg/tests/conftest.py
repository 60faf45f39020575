import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("spinrep", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("spinrep")

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

# exchange operator of two spin-1/2 particles, basis uu, ud, du, dd
P12_HALF = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_complex(rng, d):
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def random_hermitian(rng, d):
    A = random_complex(rng, d)
    return (A + A.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
