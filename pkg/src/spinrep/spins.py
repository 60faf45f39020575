"""Spin-S matrices, pair dot products, total angular momentum, Heisenberg Hamiltonian."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .config import max_dim
from .errors import CapacityError, ConventionError
from .linalg import lift

MAX_TWICE_SPIN = 7
CONVENTIONS = ("zero", "casimir_sum", "exchange_match")


@dataclass(frozen=True, order=True)
class SpinQuantum:
    """Spin quantum number stored as the integer 2S."""

    twice_spin: int

    def __post_init__(self):
        if not isinstance(self.twice_spin, (int, np.integer)) or self.twice_spin < 0:
            raise ValueError(f"twice_spin must be a nonnegative integer, got {self.twice_spin!r}")

    @classmethod
    def parse(cls, text):
        """Accept ``"1/2"``, ``"1"``, ``"3/2"``, ``1.5`` ... and normalize to 2S."""
        f = Fraction(str(text).strip())
        twice = 2 * f
        if twice.denominator != 1 or twice < 0:
            raise ValueError(f"{text!r} is not a nonnegative half-integer")
        return cls(int(twice))

    @property
    def value(self):
        return Fraction(self.twice_spin, 2)

    @property
    def local_dim(self):
        return self.twice_spin + 1

    @property
    def casimir(self):
        """S(S+1) as an exact rational."""
        return Fraction(self.twice_spin * (self.twice_spin + 2), 4)

    def __str__(self):
        return str(self.value)


def _complete_graph(n):
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@dataclass(frozen=True)
class SiteSystem:
    """N sites of spin S with an interaction graph (default: all pairs i<j, 1-based)."""

    sites: int
    spin: SpinQuantum
    graph: tuple = field(default=None)

    def __post_init__(self):
        if self.sites < 1:
            raise ValueError("need at least one site")
        if self.spin.twice_spin > MAX_TWICE_SPIN:
            raise CapacityError(f"spin {self.spin} exceeds cap S <= {MAX_TWICE_SPIN}/2")
        if self.dim > max_dim():
            raise CapacityError(f"total dimension {self.dim} exceeds the configured cap {max_dim()}")
        if self.graph is None:
            object.__setattr__(self, "graph", _complete_graph(self.sites))
        else:
            edges = []
            for i, j in self.graph:
                if i == j:
                    raise ValueError(f"self-loop ({i},{j}) in interaction graph")
                if not (1 <= i <= self.sites and 1 <= j <= self.sites):
                    raise ValueError(f"edge ({i},{j}) references a missing site")
                edges.append((min(i, j), max(i, j)))
            object.__setattr__(self, "graph", tuple(sorted(set(edges))))

    @classmethod
    def of(cls, spin, sites, graph=None):
        if not isinstance(spin, SpinQuantum):
            spin = SpinQuantum.parse(spin)
        return cls(sites, spin, None if graph is None else tuple(map(tuple, graph)))

    @property
    def local_dim(self):
        return self.spin.local_dim

    @property
    def dim(self):
        return self.local_dim ** self.sites

    @property
    def is_complete(self):
        return self.graph == _complete_graph(self.sites)


@lru_cache(maxsize=None)
def _spin_matrices(twice_spin):
    d = twice_spin + 1
    s = twice_spin / 2
    m = s - np.arange(d)
    sp = np.zeros((d, d))
    for k in range(1, d):
        sp[k - 1, k] = np.sqrt(s * (s + 1) - m[k] * (m[k] + 1))
    sx = (sp + sp.T).astype(complex) / 2
    sy = (sp - sp.T) / 2j
    sz = np.diag(m).astype(complex)
    for a in (sx, sy, sz):
        a.flags.writeable = False
    return sx, sy, sz


def spin_matrices(spin):
    """(S^x, S^y, S^z) in the basis m = S, S-1, ..., -S."""
    if not isinstance(spin, SpinQuantum):
        spin = SpinQuantum.parse(spin)
    return tuple(a.copy() for a in _spin_matrices(spin.twice_spin))


@lru_cache(maxsize=64)
def _site_spins(system):
    mats = _spin_matrices(system.spin.twice_spin)
    out = tuple(tuple(lift(a, i, system) for a in mats) for i in range(1, system.sites + 1))
    for triple in out:
        for a in triple:
            a.flags.writeable = False
    return out


def site_spin(system, site):
    """(S_i^x, S_i^y, S_i^z) lifted to the full space."""
    return tuple(a.copy() for a in _site_spins(system)[site - 1])


def dot_op(system, i, j):
    """S_i . S_j for two distinct sites."""
    if i == j:
        raise ValueError("S_i.S_i is the scalar S(S+1); request it directly, not through dot_op")
    for k in (i, j):
        if not 1 <= k <= system.sites:
            raise IndexError(f"site {k} out of range 1..{system.sites}")
    si = _site_spins(system)[i - 1]
    sj = _site_spins(system)[j - 1]
    return sum(a @ b for a, b in zip(si, sj))


class TotalOps(NamedTuple):
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    j2: np.ndarray
    site_casimirs: tuple


def total_ops(system):
    spins = _site_spins(system)
    jx, jy, jz = (sum(s[a] for s in spins) for a in range(3))
    j2 = jx @ jx + jy @ jy + jz @ jz
    c = float(system.spin.casimir) * np.eye(system.dim, dtype=complex)
    return TotalOps(jx, jy, jz, j2, tuple(c.copy() for _ in range(system.sites)))


def heisenberg_constant(system, convention):
    if convention == "zero":
        return Fraction(0)
    if convention == "casimir_sum":
        return system.sites * system.spin.casimir
    if convention == "exchange_match":
        if system.spin.twice_spin != 1:
            raise ConventionError("exchange_match is defined for spin 1/2 only")
        # sum over edges of (1/2 + 2 S_i.S_j)
        return Fraction(len(system.graph), 2)
    raise ConventionError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def heisenberg(system, convention="casimir_sum"):
    """C(N) I + 2 sum_{(i,j) in graph} S_i . S_j."""
    const = heisenberg_constant(system, convention)
    H = float(const) * np.eye(system.dim, dtype=complex)
    for i, j in system.graph:
        H = H + 2 * dot_op(system, i, j)
    return H
