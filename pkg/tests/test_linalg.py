from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P12_HALF, SX, SY, SZ, random_complex, random_hermitian
from spinrep import config
from spinrep.errors import AmbiguityError, CapacityError, ContractError, RecognitionError
from spinrep.linalg import (
    RationalMatrix,
    commutator,
    dump_matrix,
    dumps_matrix,
    exact_rank,
    hermitian_eigs,
    kron,
    kron_all,
    lift,
    load_matrix,
    loads_matrix,
    snap_spectrum,
    span_residual,
    spectrum,
)
from spinrep.spins import SiteSystem


# --- kron / lift --------------------------------------------------------------

def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_sigma_x_layout():
    K = kron(SX, SX)
    assert K[0, 3] == 1
    assert np.array_equal(K, np.fliplr(np.eye(4)))


def test_kron_diagonal_halves():
    d = np.diag([0.5, -0.5])
    assert np.array_equal(kron(d, d), np.diag([0.25, -0.25, -0.25, 0.25]))


def test_kron_capacity_cap():
    old = config.set_max_dim(8)
    try:
        with pytest.raises(CapacityError, match="8"):
            kron(np.eye(4), np.eye(4))
    finally:
        config.set_max_dim(old)


def test_kron_rejects_nonfinite():
    bad = np.array([[np.nan, 0], [0, 1]])
    with pytest.raises(ValueError):
        kron(bad, np.eye(2))


small_ints = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(lambda v: np.array(v, dtype=float).reshape(2, 2))


@given(small_ints, small_ints, small_ints)
def test_kron_associative_exact_on_integers(a, b, c):
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


@given(st.integers(0, 2**31 - 1))
def test_kron_associative_float(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_complex(rng, 2) for _ in range(3))
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) <= 1e-14 * 10


def test_lift_first_site():
    sys2 = SiteSystem.of("1/2", 2)
    assert np.array_equal(lift(SX, 1, sys2), np.kron(SX, np.eye(2)))


def test_lift_identity():
    sys3 = SiteSystem.of("1", 3)
    assert np.array_equal(lift(np.eye(3), 2, sys3), np.eye(27))


def test_lift_trace(rng):
    sys3 = SiteSystem.of("1", 3)
    A = random_complex(rng, 3)
    for i in (1, 2, 3):
        assert abs(np.trace(lift(A, i, sys3)) - np.trace(A) * 9) < 1e-12


@given(st.integers(0, 2**31 - 1), st.sampled_from([(1, 2), (1, 3), (2, 3)]))
def test_lift_commutes_on_distinct_sites(seed, pair):
    rng = np.random.default_rng(seed)
    sys3 = SiteSystem.of("1/2", 3)
    A, B = random_complex(rng, 2), random_complex(rng, 2)
    C = commutator(lift(A, pair[0], sys3), lift(B, pair[1], sys3))
    assert np.max(np.abs(C)) < 1e-13


def test_lift_bad_site():
    with pytest.raises(IndexError):
        lift(SX, 3, SiteSystem.of("1/2", 2))


# --- commutator ---------------------------------------------------------------

def test_commutator_self(rng):
    A = random_complex(rng, 3)
    assert np.array_equal(commutator(A, A), np.zeros((3, 3)))


def test_commutator_pauli():
    assert np.allclose(commutator(SX, SY), 2j * SZ, atol=0)


def test_commutator_state_permutations():
    q13 = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    q23 = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert np.array_equal(commutator(q13, q23), np.array([[0, 1, -1], [-1, 0, 1], [1, -1, 0]]))


def test_commutator_shape_mismatch():
    with pytest.raises(ValueError):
        commutator(np.eye(2), np.eye(3))


# --- eigensolver ----------------------------------------------------------------

def test_eigs_diagonal():
    vals, vecs = hermitian_eigs(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(vals, [1, 2, 3])
    assert np.allclose(vecs.conj().T @ vecs, np.eye(3))


def test_eigs_sigma_x():
    vals, _ = hermitian_eigs(SX)
    assert np.allclose(vals, [-1, 1])


def test_eigs_exchange_half():
    vals, _ = hermitian_eigs(P12_HALF)
    assert np.allclose(vals, [-1, 1, 1, 1])


def test_eigs_rejects_non_hermitian():
    with pytest.raises(ContractError):
        hermitian_eigs(np.array([[0, 1], [0, 0]], dtype=complex))


# --- exact rationals -------------------------------------------------------------

def test_rational_roundtrip():
    M = np.array([[0.5, 0.25], [-3.0, 0.0]])
    R = RationalMatrix.from_complex(M)
    assert R.entries[0, 0] == Fraction(1, 2)
    assert np.array_equal(R.to_complex(), M.astype(complex))


def test_rational_rejects_imaginary():
    with pytest.raises(RecognitionError):
        RationalMatrix.from_complex(np.array([[1j]]))


def test_rational_rejects_noise():
    with pytest.raises(RecognitionError):
        RationalMatrix.from_complex(np.array([[np.sqrt(2)]]))


def test_rational_nearest_tolerates_float_noise():
    R = RationalMatrix.nearest(np.array([[0.5 + 4e-16, 1.0], [1.0, -1e-17]]))
    assert R.entries[0, 0] == Fraction(1, 2) and R.entries[1, 1] == 0
    assert RationalMatrix.nearest(np.array([[np.sqrt(3)]])) is None


def test_exact_rank_simple():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[Fraction(1, 3), 0], [0, Fraction(2, 7)]]) == 2
    assert exact_rank(np.zeros((3, 3), dtype=int)) == 0


def test_exact_rank_matches_numpy_on_integer_matrices(rng):
    # exact kernel dimension is the multiplicity oracle for integer spectra
    for _ in range(20):
        d = int(rng.integers(2, 9))
        r = int(rng.integers(1, d + 1))
        A = rng.integers(-3, 4, size=(d, r)) @ rng.integers(-3, 4, size=(r, d))
        assert exact_rank(A) == np.linalg.matrix_rank(A.astype(float))


# --- snapping ----------------------------------------------------------------------

def test_snap_forced_clustering():
    rep = snap_spectrum(np.array([-3 + 1e-13, 0, 0, 3]))
    assert [(c.exact, c.multiplicity) for c in rep.classes] == [("-3", 1), ("0", 2), ("3", 1)]
    assert rep.dim == 4


def test_snap_requires_sorted_input():
    with pytest.raises(ValueError):
        snap_spectrum(np.array([1.0, 0.0]))


def test_snap_halves_quarters_and_surds():
    rep = snap_spectrum(np.array([-0.75, 0.25, 1.5, 4 * np.sqrt(3)]))
    kinds = [c.snap_kind for c in rep.classes]
    assert kinds == ["quarter", "quarter", "half", "sqrt3"]
    assert rep.classes[-1].exact == "4*sqrt(3)"


def test_snap_candidates_ambiguity():
    with pytest.raises(AmbiguityError):
        snap_spectrum(np.array([0.5]), candidates=[0.5, 0.5 + 1e-12], tol=1e-9)


def test_snap_unsnapped_value_kept():
    rep = snap_spectrum(np.array([np.pi]))
    assert not rep.classes[0].snapped and rep.classes[0].exact is None


def test_snap_conserves_dimension_and_trace(rng):
    H = random_hermitian(rng, 6)
    rep = spectrum(H)
    assert sum(c.multiplicity for c in rep.classes) == 6
    total = sum(c.value * c.multiplicity for c in rep.classes)
    assert abs(total - rep.trace) <= 6 * max(c.residual for c in rep.classes) + 1e-12


def test_exact_verification_uses_kernel_dimension():
    A = np.diag([2.0, 2.0, -1.0])
    A[0, 1] = 1.0
    A = A + A.T - np.diag(np.diag(A))  # symmetric with eigenvalues 1, 3, -1
    rep = spectrum(A, exact_source=RationalMatrix.from_complex(A))
    assert [c.exact for c in rep.classes] == ["-1", "1", "3"]
    assert rep.all_exact_verified


def test_exact_verification_catches_wrong_source():
    A = np.diag([1.0, 1.0])
    rep = spectrum(A, exact_source=RationalMatrix.from_complex(np.diag([1.0, 2.0])))
    assert not rep.all_exact_verified


# --- span residual -------------------------------------------------------------------

def test_span_residual_self(rng):
    B = random_complex(rng, 3)
    c, r = span_residual(B, [B])
    assert abs(c[0] - 1) < 1e-12 and r < 1e-12


def test_span_residual_closed_form():
    # P(12) - (I + X)/2 with X the antidiagonal flip; I and X are orthogonal, each of norm^2 4
    X = np.fliplr(np.eye(4))
    c, r = span_residual(P12_HALF, [np.eye(4), X])
    c0 = np.trace(P12_HALF) / 4
    c1 = np.trace(X @ P12_HALF) / 4
    expected = np.linalg.norm(P12_HALF - c0 * np.eye(4) - c1 * X)
    assert np.allclose(c, [c0, c1])
    assert abs(r - expected) < 1e-12
    assert abs(r - np.sqrt(2)) < 1e-12


def test_span_residual_shape_mismatch():
    with pytest.raises(ValueError):
        span_residual(np.eye(2), [np.eye(3)])


# --- dump format -------------------------------------------------------------------

def test_dump_roundtrip_with_rational():
    sys2 = SiteSystem.of("1/2", 2)
    R = RationalMatrix.from_complex(P12_HALF)
    text = dumps_matrix(P12_HALF, sys2, R, meta={"name": "P12"})
    M, system, R2 = loads_matrix(text)
    assert np.array_equal(M, P12_HALF)
    assert system == {"sites": 2, "twice_spin": 1}
    assert R2 == R


def test_dump_complex_entries(rng):
    A = random_complex(rng, 3)
    M, system, R = load_matrix(dump_matrix(A))
    assert np.array_equal(M, A) and system is None and R is None


def test_load_rejects_foreign_document():
    with pytest.raises(ValueError):
        load_matrix({"format": "other"})


def test_kron_all_matches_chain():
    assert np.array_equal(kron_all([SX, SZ, SY]), np.kron(np.kron(SX, SZ), SY))
