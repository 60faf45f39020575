"""Spin-S rotation matrices, global and partial rotations, Casimir checks."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import commutator, fro, kron_all
from .spins import SpinQuantum, spin_matrices

SCOPES = ("global", "parot", "biparot", "gear_inverse", "gear_conjugate")
STATUSES = ("PASS", "FAIL", "DISCREPANCY_WITH_PAPER")


def wigner(spin, axis, angle):
    """exp(-i angle (axis . S)) for a unit axis."""
    if not isinstance(spin, SpinQuantum):
        spin = SpinQuantum.parse(spin)
    axis = np.asarray(axis, dtype=float)
    if abs(np.linalg.norm(axis) - 1.0) > 1e-12:
        raise ValueError("rotation axis must be a unit vector")
    gen = sum(n * s for n, s in zip(axis, spin_matrices(spin)))
    vals, vecs = np.linalg.eigh(gen)
    return (vecs * np.exp(-1j * angle * vals)) @ vecs.conj().T


@dataclass(frozen=True)
class RotationSpec:
    axis: tuple
    angle: float
    scope: str = "global"
    sites: tuple = ()

    def __post_init__(self):
        if self.scope not in SCOPES:
            raise ValueError(f"unknown scope {self.scope!r}; expected one of {SCOPES}")
        if abs(np.linalg.norm(self.axis) - 1.0) > 1e-12:
            raise ValueError("rotation axis must be a unit vector")
        need = {"global": 0, "parot": 1}.get(self.scope, 2)
        if len(self.sites) != need:
            raise ValueError(f"scope {self.scope} needs {need} site(s), got {self.sites}")
        if need == 2 and self.sites[0] == self.sites[1]:
            raise ValueError("two-site rotations need distinct sites")


def site_rotation(system, per_site):
    """Kronecker product of one-site matrices; ``per_site`` maps 1-based site -> matrix."""
    eye = np.eye(system.local_dim, dtype=complex)
    return kron_all([per_site.get(k, eye) for k in range(1, system.sites + 1)])


def apply_rotation(system, spec):
    for k in spec.sites:
        if not 1 <= k <= system.sites:
            raise IndexError(f"site {k} out of range 1..{system.sites}")
    A = wigner(system.spin, spec.axis, spec.angle)
    if spec.scope == "global":
        return kron_all([A] * system.sites)
    if spec.scope == "parot":
        return site_rotation(system, {spec.sites[0]: A})
    i, j = spec.sites
    other = {
        "biparot": A,
        "gear_inverse": A.conj().T,
        "gear_conjugate": A.conj(),
    }[spec.scope]
    return site_rotation(system, {i: A, j: other})


def random_axes_angles(rng, samples):
    """Axes uniform on the sphere, angles uniform on [0, 2 pi)."""
    v = rng.normal(size=(samples, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return [(tuple(a), float(t)) for a, t in zip(v, rng.uniform(0.0, 2 * np.pi, size=samples))]


def relative_commutator(H, U):
    denom = fro(H) * fro(U)
    return fro(commutator(H, U)) / denom if denom > 0 else 0.0


@dataclass
class ClaimReport:
    claim_id: str
    quote: str
    samples: int
    seed: int
    max_residual: float
    tolerance: float
    status: str
    expect: str = "zero"
    asserted: bool = True
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "claim_id": self.claim_id,
            "quote": self.quote,
            "samples": self.samples,
            "seed": self.seed,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "status": self.status,
            "expect": self.expect,
            "asserted": self.asserted,
            "details": self.details,
        }


def judge(claim_id, quote, residual, tol, *, expect="zero", asserted=True, samples=0, seed=0, details=None):
    """Build a ClaimReport; a mismatch is FAIL when asserted, otherwise a discrepancy finding."""
    ok = residual <= tol if expect == "zero" else residual > tol
    status = "PASS" if ok else ("FAIL" if asserted else "DISCREPANCY_WITH_PAPER")
    return ClaimReport(claim_id, quote, samples, seed, float(residual), float(tol), status, expect, asserted,
                       details or {})


def casimir_check(system, candidate, scope, sites=(), samples=100, seed=42, tol=1e-10,
                  claim_id="casimir", quote="", asserted=True):
    """Max relative commutator of ``candidate`` with sampled rotations of one scope."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for axis, angle in random_axes_angles(rng, samples):
        U = apply_rotation(system, RotationSpec(axis, angle, scope, tuple(sites)))
        worst = max(worst, relative_commutator(candidate, U))
    return judge(claim_id, quote, worst, tol, asserted=asserted, samples=samples, seed=seed,
                 details={"scope": scope, "sites": list(sites)})
