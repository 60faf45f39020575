"""Clebsch-Gordan multiplicities of (spin S)^N and the multiplet spectrum of H0."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import max_dim
from .errors import CapacityError
from .linalg import SpectrumClass, SpectrumReport
from .spins import SpinQuantum, heisenberg_constant


@dataclass(frozen=True)
class MultipletTable:
    spin: SpinQuantum
    sites: int
    rows: dict  # twice total spin -> multiplicity

    def items(self):
        """``[(s, m_s), ...]`` with s exact, ascending."""
        return [(Fraction(t, 2), m) for t, m in sorted(self.rows.items())]

    @property
    def dimension(self):
        return sum((t + 1) * m for t, m in self.rows.items())

    @property
    def expected_dimension(self):
        return self.spin.local_dim ** self.sites

    def as_dict(self):
        return {
            "spin": str(self.spin),
            "sites": self.sites,
            "rows": [{"total_spin": str(s), "multiplicity": m, "states": m * int(2 * s + 1)} for s, m in self.items()],
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "sum_rule_ok": self.dimension == self.expected_dimension,
        }


def multiplicities(spin, sites):
    if not isinstance(spin, SpinQuantum):
        spin = SpinQuantum.parse(spin)
    if sites < 1:
        raise ValueError("need at least one site")
    if spin.local_dim ** sites > max_dim():
        raise CapacityError(f"dimension {spin.local_dim ** sites} exceeds the configured cap {max_dim()}")
    ts = spin.twice_spin
    table = {ts: 1}
    for _ in range(sites - 1):
        nxt = {}
        for tj, m in table.items():
            # |j - S| .. j + S in unit steps
            for t in range(abs(tj - ts), tj + ts + 1, 2):
                nxt[t] = nxt.get(t, 0) + m
        table = nxt
    return MultipletTable(spin, sites, dict(sorted(table.items())))


def h0_spectrum_multiplet(system, convention="casimir_sum"):
    """Exact spectrum of ``heisenberg(system, convention)`` from J^2 multiplets."""
    if not system.is_complete:
        raise ValueError("multiplet spectrum requires the complete interaction graph")
    table = multiplicities(system.spin, system.sites)
    const = heisenberg_constant(system, convention)
    shift = const - system.sites * system.spin.casimir
    levels = {}
    for s, m in table.items():
        value = s * (s + 1) + shift
        levels[value] = levels.get(value, 0) + m * int(2 * s + 1)
    classes = [
        SpectrumClass(float(v), mult, 0.0, True, "exact", str(v), v)
        for v, mult in sorted(levels.items())
    ]
    trace = float(sum(v * m for v, m in levels.items()))
    return SpectrumReport(classes, trace, system.dim, 0.0, {"method": "multiplet", "convention": convention})
