"""Exchange polynomials, the exchange representation of S(N), class operators.

``swap_oracle`` moves the content of site k to site ``perm(k)``; with
right-to-left composition this makes ``vrep`` and ``swap_oracle``
homomorphisms.  ``pol_operator`` is the opposite (right) action
``|m_1 ... m_N> -> |m_perm(1) ... m_perm(N)>``, equal to ``vrep(perm^-1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import ConstructionError
from .permutations import (
    Permutation,
    class_members,
    content_sum,
    irrep_dimension,
    parse_cycle_type,
    partitions,
    transpositions,
)
from .spins import SpinQuantum, dot_op


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


@dataclass(frozen=True)
class SchroedingerPolynomial:
    spin: SpinQuantum
    coefficients: tuple  # A_0 .. A_2S, exact
    roots_grid: tuple  # x_q, q = 1 .. 2S+1

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for a in reversed(self.coefficients):
            acc = acc * x + a
        return acc

    def of_matrix(self, X):
        """Horner evaluation with float coefficients."""
        eye = np.eye(X.shape[0], dtype=complex)
        acc = float(self.coefficients[-1]) * eye
        for a in reversed(self.coefficients[:-1]):
            acc = acc @ X + float(a) * eye
        return acc


def pair_eigenvalues(spin):
    """Eigenvalues x_q = q(q-1)/2 - S(S+1) of S_i.S_j, q = 1 .. 2S+1."""
    c = spin.casimir
    return tuple(Fraction(q * (q - 1), 2) - c for q in range(1, spin.twice_spin + 2))


@lru_cache(maxsize=None)
def _schroedinger_poly(twice_spin):
    spin = SpinQuantum(twice_spin)
    xs = pair_eigenvalues(spin)
    total = [Fraction(1)]
    prod = [Fraction(1)]
    for p in range(1, twice_spin + 1):
        prod = _poly_mul(prod, [-xs[p - 1], Fraction(1)])
        w = Fraction((-2) ** p, math.factorial(p) ** 2)
        total = _poly_add(total, [w * c for c in prod])
    sign = -1 if twice_spin % 2 else 1
    coeffs = tuple(sign * c for c in total)
    poly = SchroedingerPolynomial(spin, coeffs, xs)
    for q, x in enumerate(xs, start=1):
        expected = (-1) ** (twice_spin + q - 1)
        if poly(x) != expected:
            raise ConstructionError(f"P_S(x_{q}) = {poly(x)} != {expected} for 2S={twice_spin}")
    return poly


def schroedinger_poly(spin):
    """Exchange polynomial of degree 2S taking the value (-1)^(2S+q-1) at x_q."""
    if not isinstance(spin, SpinQuantum):
        spin = SpinQuantum.parse(spin)
    if spin.twice_spin < 1:
        raise ValueError("exchange polynomial needs S >= 1/2")
    return _schroedinger_poly(spin.twice_spin)


@lru_cache(maxsize=256)
def _exchange_op(system, i, j):
    op = schroedinger_poly(system.spin).of_matrix(dot_op(system, i, j))
    op.flags.writeable = False
    return op


def exchange_op(system, i, j):
    """P_S(S_i . S_j) built from the polynomial."""
    if i == j:
        raise ValueError("exchange_op needs two distinct sites")
    i, j = min(i, j), max(i, j)
    return _exchange_op(system, i, j).copy()


def swap_oracle(system, perm):
    """0/1 matrix sending the content of site k to site perm(k)."""
    if perm.n != system.sites:
        raise ValueError(f"permutation acts on {perm.n} points, system has {system.sites} sites")
    dim = system.dim
    targets = _kernels.site_permutation_targets(perm.images, system.local_dim, system.sites)
    M = np.zeros((dim, dim), dtype=complex)
    M[targets, np.arange(dim)] = 1.0
    return M


def vrep(system, perm, method="bubble"):
    """Product of exchange operators over a transposition decomposition of perm."""
    if perm.n != system.sites:
        raise ValueError(f"permutation acts on {perm.n} points, system has {system.sites} sites")
    out = np.eye(system.dim, dtype=complex)
    for i, j in transpositions(perm, method):
        out = out @ _exchange_op(system, min(i, j), max(i, j))
    return out


def pol_operator(system, perm, method="bubble"):
    """``|m_1 ... m_N> -> |m_perm(1) ... m_perm(N)>`` as a product of exchange operators."""
    return vrep(system, perm.inverse(), method)


def class_operator(system, cycle_type, rep="P", oracle=False):
    """Sum of a representation over one conjugacy class.

    ``rep="P"``: exchange representation of S(N) on the sites (``oracle=True``
    sums exact swap matrices instead of exchange-polynomial products).
    ``rep="Q"``: lifted state permutations of S(2S+1).
    """
    if rep == "P":
        n = system.sites
        build = (lambda p: swap_oracle(system, p)) if oracle else (lambda p: vrep(system, p))
    elif rep == "Q":
        from .qrep import q_lift

        n = system.local_dim
        build = lambda p: q_lift(system, p)  # noqa: E731
    else:
        raise ValueError(f"rep must be 'P' or 'Q', got {rep!r}")
    if isinstance(cycle_type, str):
        cycle_type = parse_cycle_type(cycle_type, n)
    out = np.zeros((system.dim, system.dim), dtype=complex)
    for p in class_members(n, cycle_type):
        out += build(p)
    return out


def schroedinger_hamiltonian(system):
    """Sum of exchange operators over the interaction graph."""
    H = np.zeros((system.dim, system.dim), dtype=complex)
    for i, j in system.graph:
        H += _exchange_op(system, i, j)
    return H


def transposition_class_decomposition(report, n):
    """Split a transposition-class-sum spectrum into S(n) irreps.

    An irrep with Young diagram lambda acts on the class sum as its content
    sum, so each eigenvalue is matched to the diagrams with that content sum.
    Returns one row per eigenvalue; ``copies`` is None when several diagrams
    share the eigenvalue.
    """
    by_content = {}
    for lam in partitions(n):
        by_content.setdefault(content_sum(lam), []).append(lam)
    rows = []
    for c in report.classes:
        value = c.rational if c.rational is not None else Fraction(round(c.value))
        lams = by_content.get(value, []) if value.denominator == 1 else []
        row = {"value": value, "multiplicity": c.multiplicity, "partition": None, "irrep_dim": None, "copies": None}
        if len(lams) == 1:
            dim = irrep_dimension(lams[0])
            row.update(partition=lams[0], irrep_dim=dim,
                       copies=c.multiplicity // dim if c.multiplicity % dim == 0 else None)
        rows.append(row)
    return rows


def basis_index(system, states):
    """Index of the product state with local indices ``states`` (0 = highest m)."""
    idx = 0
    for s in states:
        idx = idx * system.local_dim + s
    return idx
