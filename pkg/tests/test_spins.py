from fractions import Fraction

import numpy as np
import pytest

from spinrep.errors import CapacityError, ConventionError
from spinrep.exchange import exchange_op
from spinrep.linalg import commutator, hermitian_eigs, snap_spectrum
from spinrep.spins import (
    SiteSystem,
    SpinQuantum,
    dot_op,
    heisenberg,
    heisenberg_constant,
    site_spin,
    spin_matrices,
    total_ops,
)


def pairs_of(report):
    return [(c.exact, c.multiplicity) for c in report.classes]


def spec_of(A):
    return pairs_of(snap_spectrum(hermitian_eigs(A)[0]))


@pytest.mark.parametrize("text, twice", [("1/2", 1), ("1", 2), ("3/2", 3), ("2", 4), (1.5, 3), ("0", 0)])
def test_spin_parse(text, twice):
    assert SpinQuantum.parse(text).twice_spin == twice


@pytest.mark.parametrize("text", ["1/3", "-1/2", "abc"])
def test_spin_parse_rejects(text):
    with pytest.raises(ValueError):
        SpinQuantum.parse(text)


def test_casimir_exact():
    assert SpinQuantum(3).casimir == Fraction(15, 4)
    assert SpinQuantum(3).local_dim == 4


def test_spin_half_sz():
    _, _, sz = spin_matrices("1/2")
    assert np.array_equal(sz, np.diag([0.5, -0.5]))


@pytest.mark.parametrize("s", ["1/2", "1", "3/2", "2"])
def test_casimir_identity(s):
    spin = SpinQuantum.parse(s)
    sx, sy, sz = spin_matrices(spin)
    assert np.max(np.abs(sx @ sx + sy @ sy + sz @ sz - float(spin.casimir) * np.eye(spin.local_dim))) < 1e-13


def test_spin_one_ladder():
    sx, sy, sz = spin_matrices("1")
    assert np.array_equal(sz, np.diag([1.0, 0.0, -1.0]))
    splus = sx + 1j * sy
    assert np.allclose(np.diag(splus, 1), [np.sqrt(2), np.sqrt(2)], atol=1e-15)


@pytest.mark.parametrize("twice", range(1, 7))
def test_angular_momentum_algebra(twice):
    sx, sy, sz = spin_matrices(SpinQuantum(twice))
    for a, b, c in ((sx, sy, sz), (sy, sz, sx), (sz, sx, sy)):
        assert np.max(np.abs(commutator(a, b) - 1j * c)) < 1e-13


def test_spin_matrices_are_copies():
    sx, _, _ = spin_matrices("1")
    sx[0, 0] = 99
    assert spin_matrices("1")[0][0, 0] == 0


def test_site_system_defaults_and_validation():
    s = SiteSystem.of("1", 3)
    assert s.graph == ((1, 2), (1, 3), (2, 3)) and s.dim == 27 and s.is_complete
    with pytest.raises(ValueError):
        SiteSystem.of("1/2", 2, graph=[(1, 1)])
    with pytest.raises(ValueError):
        SiteSystem.of("1/2", 2, graph=[(1, 3)])
    with pytest.raises(CapacityError):
        SiteSystem.of("1/2", 13)
    with pytest.raises(CapacityError):
        SiteSystem.of("4", 1)


def test_dot_op_half_two_sites():
    assert spec_of(dot_op(SiteSystem.of("1/2", 2), 1, 2)) == [("-3/4", 1), ("1/4", 3)]


def test_dot_op_one_two_sites():
    assert spec_of(dot_op(SiteSystem.of("1", 2), 1, 2)) == [("-2", 1), ("-1", 3), ("1", 5)]


def test_dot_op_disjoint_pairs_commute():
    s = SiteSystem.of("1/2", 4)
    assert np.max(np.abs(commutator(dot_op(s, 1, 2), dot_op(s, 3, 4)))) == 0


def test_dot_op_same_site_rejected():
    with pytest.raises(ValueError):
        dot_op(SiteSystem.of("1/2", 2), 1, 1)


@pytest.mark.parametrize("s, n", [("1/2", 2), ("1/2", 3), ("1", 2), ("1", 3), ("3/2", 2), ("3/2", 3)])
def test_dot_op_eigenvalues_follow_pair_spin(s, n):
    system = SiteSystem.of(s, n)
    spin = system.spin
    expected = {}
    for q in range(1, spin.twice_spin + 2):
        x = Fraction(q * (q - 1), 2) - spin.casimir
        expected[str(x)] = (2 * (q - 1) + 1) * spin.local_dim ** (n - 2)
    assert dict(spec_of(dot_op(system, 1, 2))) == expected


def test_total_ops_half_two_sites():
    assert spec_of(total_ops(SiteSystem.of("1/2", 2)).j2) == [("0", 1), ("2", 3)]


def test_total_ops_one_three_sites():
    t = total_ops(SiteSystem.of("1", 3))
    assert spec_of(t.j2) == [("0", 1), ("2", 9), ("6", 10), ("12", 7)]
    assert np.max(np.abs(commutator(t.j2, t.jz))) < 1e-12


def test_heisenberg_exchange_match_is_transposition_sum():
    for n in (2, 3, 4):
        s = SiteSystem.of("1/2", n)
        P = sum(exchange_op(s, i, j) for i, j in s.graph)
        assert np.max(np.abs(heisenberg(s, "exchange_match") - P)) < 1e-12


def test_heisenberg_casimir_sum_is_total_spin_squared():
    s = SiteSystem.of("1", 3)
    assert spec_of(heisenberg(s)) == [("0", 1), ("2", 9), ("6", 10), ("12", 7)]


def test_heisenberg_conventions_shift():
    s = SiteSystem.of("3/2", 2)
    shift = heisenberg(s, "casimir_sum") - heisenberg(s, "zero")
    assert np.allclose(shift, 2 * 15 / 4 * np.eye(16), atol=1e-14)


def test_heisenberg_commutes_with_total_spin():
    s = SiteSystem.of("1", 3, graph=[(1, 2), (2, 3)])
    t = total_ops(s)
    H = heisenberg(s)
    assert np.max(np.abs(commutator(H, t.j2))) < 1e-10
    assert np.max(np.abs(commutator(H, t.jz))) < 1e-10


def test_exchange_match_needs_half_spin():
    with pytest.raises(ConventionError):
        heisenberg_constant(SiteSystem.of("1", 2), "exchange_match")
    with pytest.raises(ConventionError):
        heisenberg_constant(SiteSystem.of("1", 2), "bogus")


def test_site_spin_copies_are_writable_and_independent():
    s = SiteSystem.of("1/2", 2)
    a = site_spin(s, 1)[2]
    a[0, 0] = 7
    assert site_spin(s, 1)[2][0, 0] == 0.5
