"""State-permutation representation, single-site lifts, Lie closure, J operators and duals."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import ConstructionError
from .linalg import commutator, fro, hermitian_eigs, is_hermitian, kron_all, lift, snap_spectrum, span_residual
from .permutations import Permutation, all_permutations
from .spins import SpinQuantum

CLOSURE_RTOL = 1e-10


def qtilde(spin, perm):
    """(2S+1)x(2S+1) permutation matrix with ``e_k -> e_perm(k)``."""
    if not isinstance(spin, SpinQuantum):
        spin = SpinQuantum.parse(spin)
    d = spin.local_dim
    if perm.n != d:
        raise ValueError(f"permutation acts on {perm.n} states, spin {spin} has {d}")
    M = np.zeros((d, d), dtype=complex)
    M[list(perm.images), list(range(d))] = 1.0
    return M


def q_lift(system, perm):
    """N-fold Kronecker power of ``qtilde(perm)``."""
    if perm.n != system.local_dim:
        raise ValueError(f"permutation acts on {perm.n} states, local dimension is {system.local_dim}")
    dim = system.dim
    targets = _kernels.state_permutation_targets(perm.images, system.sites)
    M = np.zeros((dim, dim), dtype=complex)
    M[targets, np.arange(dim)] = 1.0
    return M


def o_lift(system, site, perm):
    """``qtilde(perm)`` acting on one site only."""
    return lift(qtilde(system.spin, perm), site, system)


# --- Lie closure ------------------------------------------------------------

@dataclass
class LieClosureReport:
    generator_count: int
    closure_dimension: int
    stabilization_depth: int
    stabilized: bool
    level_dims: list
    basis: list = field(repr=False)
    words: list = field(repr=False)

    def as_dict(self):
        return {
            "generator_count": self.generator_count,
            "closure_dimension": self.closure_dimension,
            "stabilization_depth": self.stabilization_depth,
            "stabilized": self.stabilized,
            "level_dims": list(self.level_dims),
            "words": [word_string(w) for w in self.words],
        }


def evaluate_word(word, generators):
    """A word is a generator index or ``(g, subword)`` meaning ``[G_g, subword]``."""
    if isinstance(word, int):
        return np.asarray(generators[word])
    g, sub = word
    return commutator(generators[g], evaluate_word(sub, generators))


def word_string(word):
    if isinstance(word, int):
        return f"g{word + 1}"
    g, sub = word
    return f"[g{g + 1},{word_string(sub)}]"


class _Span:
    """Incremental Frobenius-orthonormal basis for independence tests."""

    def __init__(self, rtol=CLOSURE_RTOL):
        self.rtol = rtol
        self.q = []

    def try_add(self, M, scale):
        v = np.asarray(M, dtype=complex).ravel()
        for u in self.q:
            v = v - np.vdot(u, v) * u
        for u in self.q:  # second pass for stability
            v = v - np.vdot(u, v) * u
        r = np.linalg.norm(v)
        if r <= self.rtol * scale:
            return False
        self.q.append(v / r)
        return True

    def __len__(self):
        return len(self.q)


def matrix_rank(mats, rtol=CLOSURE_RTOL):
    span = _Span(rtol)
    for M in mats:
        span.try_add(M, max(fro(M), 1e-300))
    return len(span)


def lie_closure(generators, max_depth=10, rtol=CLOSURE_RTOL):
    """Span of all nested commutators of the generators.

    Level 1 is the generators; level k adds ``[g, w]`` for w new at level k-1.
    ``stabilization_depth`` is the first level that adds nothing.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    shape = gens[0].shape
    if any(g.shape != shape for g in gens):
        raise ValueError("generators must share one dimension")
    norms = [fro(g) for g in gens]
    span = _Span(rtol)
    basis, words, frontier = [], [], []
    for k, g in enumerate(gens):
        if norms[k] > 0 and span.try_add(g, norms[k]):
            basis.append(g)
            words.append(k)
            frontier.append(len(basis) - 1)
    level_dims = [len(basis)]
    depth, stabilized = max_depth, False
    for level in range(2, max_depth + 1):
        new = []
        for gi, g in enumerate(gens):
            for idx in frontier:
                m = commutator(g, basis[idx])
                scale = max(fro(m), norms[gi] * fro(basis[idx]))
                if scale > 0 and span.try_add(m, scale):
                    basis.append(m)
                    words.append((gi, words[idx]))
                    new.append(len(basis) - 1)
        level_dims.append(len(basis))
        if not new:
            depth, stabilized = level, True
            break
        frontier = new
    return LieClosureReport(len(gens), len(basis), depth, stabilized, level_dims, basis, words)


def structure_constants(basis):
    """``c[a, b, :]`` with ``[B_a, B_b] = sum_c c[a, b, c] B_c``; also the worst fit residual."""
    n = len(basis)
    A = np.stack([np.asarray(B, dtype=complex).ravel() for B in basis], axis=1)
    out = np.zeros((n, n, n), dtype=complex)
    worst = 0.0
    for a in range(n):
        for b in range(n):
            target = commutator(basis[a], basis[b]).ravel()
            c, *_ = np.linalg.lstsq(A, target, rcond=None)
            out[a, b] = c
            worst = max(worst, float(np.linalg.norm(target - A @ c)))
    return out, worst


def compare_lifted_closure(parent_generators, lifted_generators, max_depth=10):
    """Compare commutator tables of a parent algebra and its lift.

    The parent closure fixes a word basis (same insertion order); the same
    words are evaluated on the lifted generators, and structure constants
    are solved in each word basis.
    """
    parent = lie_closure(parent_generators, max_depth)
    lifted = lie_closure(lifted_generators, max_depth)
    lifted_words = [evaluate_word(w, lifted_generators) for w in parent.words]
    words_independent = matrix_rank(lifted_words) == len(parent.words)
    c_parent, r_parent = structure_constants(parent.basis)
    c_lifted, r_lifted = structure_constants(lifted_words)
    diff = float(np.max(np.abs(c_parent - c_lifted))) if c_parent.size else 0.0
    return {
        "parent": parent.as_dict(),
        "lifted": lifted.as_dict(),
        "words_independent_in_lift": words_independent,
        "parent_fit_residual": r_parent,
        "lifted_fit_residual": r_lifted,
        "max_constant_difference": diff,
        "match": bool(words_independent and parent.closure_dimension == lifted.closure_dimension and diff <= 1e-10),
    }


def s3_labels():
    """Transpositions and 3-cycles of S(3) in the order 12, 13, 23, 123, 132."""
    t = Permutation.transposition
    t12, t13, t23 = t(3, 1, 2), t(3, 1, 3), t(3, 2, 3)
    from .permutations import compose

    return {
        "12": t12,
        "13": t13,
        "23": t23,
        "123": compose(t12, t23),
        "132": compose(t12, t13),
    }


def _require_three_states(system):
    if system.local_dim != 3:
        raise ConstructionError(f"construction needs local dimension 3, got {system.local_dim}")


# --- J operators -----------------------------------------------------------

READINGS = ("class_sum", "signed")


class JOps(NamedTuple):
    j1: np.ndarray
    j2: np.ndarray
    j3: np.ndarray
    commutator_residual: float


def j_class_ops(system, reading="class_sum"):
    """J1, J2 = I, J3 = 2[Q12, [Q13, Q23]] on spin-1 sites.

    ``reading="class_sum"``: J1 = Q12 + Q13 + Q23 (class sum of transpositions).
    ``reading="signed"``:    J1 = Q12 + Q13 + Q23 - Q123 - Q132.
    """
    _require_three_states(system)
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    Q = {k: q_lift(system, p) for k, p in s3_labels().items()}
    j1 = Q["12"] + Q["13"] + Q["23"]
    if reading == "signed":
        j1 = j1 - Q["123"] - Q["132"]
    j2 = np.eye(system.dim, dtype=complex)
    j3 = 2 * commutator(Q["12"], commutator(Q["13"], Q["23"]))
    return JOps(j1, j2, j3, fro(commutator(j1, j3)))


def parent_j3_comparison():
    """``2[Qt12, [Qt13, Qt23]]`` against ``2(Qt13 - Qt12)`` on C^3."""
    spin = SpinQuantum(2)
    Qt = {k: qtilde(spin, p) for k, p in s3_labels().items()}
    lhs = 2 * commutator(Qt["12"], commutator(Qt["13"], Qt["23"]))
    rhs = 2 * (Qt["13"] - Qt["12"])
    coeffs, res = span_residual(lhs, [Qt["12"], Qt["13"], Qt["23"]])
    return {
        "lhs": lhs,
        "rhs": rhs,
        "max_abs_difference": float(np.max(np.abs(lhs - rhs))),
        "transposition_coefficients": [complex(c) for c in coeffs],
        "transposition_fit_residual": res,
    }


# --- dual family -----------------------------------------------------------

def _sym_basis():
    out = []
    for i in range(3):
        for j in range(i, 3):
            E = np.zeros((3, 3))
            if i == j:
                E[i, i] = 1.0
            else:
                E[i, j] = E[j, i] = 1 / np.sqrt(2)
            out.append(E)
    return out


def _fix_sign(v):
    k = int(np.argmax(np.abs(v) > 1e-12))
    return -v if v[k] < 0 else v


def parent_duals(kernel_params=(0.0, 0.0)):
    """Real symmetric 3x3 duals of Qt12, Qt13, Qt23, sym(Qt123) plus the 2-dim kernel basis.

    Returns ``(duals, kernel, gram_rank)`` where ``duals`` maps labels
    ``12, 13, 23, 123`` to matrices with ``Tr(dual_a T_b) = delta_ab``.
    """
    spin = SpinQuantum(2)
    Qt = {k: qtilde(spin, p).real for k, p in s3_labels().items()}
    targets = [Qt["12"], Qt["13"], Qt["23"], (Qt["123"] + Qt["132"]) / 2]
    E = _sym_basis()
    A = np.array([[np.trace(e @ t) for e in E] for t in targets])
    gram = A @ A.T
    rank = int(np.linalg.matrix_rank(gram, tol=1e-10))
    if rank < 4:
        raise ConstructionError(f"target Gram matrix is singular (rank {rank} of 4)")
    X = A.T @ np.linalg.inv(gram)  # minimal-norm solution of A X = I
    _, _, vt = np.linalg.svd(A)
    kernel = [sum(c * e for c, e in zip(_fix_sign(v), E)) for v in vt[4:]]
    shift = kernel_params[0] * kernel[0] + kernel_params[1] * kernel[1]
    duals = {lab: sum(X[k, a] * E[k] for k in range(6)) + shift for a, lab in enumerate(("12", "13", "23", "123"))}
    return duals, kernel, rank


@dataclass
class DualFamilyReport:
    epsilon: float
    kernel_params: tuple
    reading: str
    duals: tuple = field(repr=False)
    k_ops: tuple = field(repr=False)
    k_norms: list
    pairing_matrix: np.ndarray
    change_of_basis: np.ndarray
    orthogonality_residual: float
    dual_closure: LieClosureReport
    joint_closure: LieClosureReport
    dual_span_rank: int
    joint_span_rank: int
    spectra: list
    combined_spectra: list

    @property
    def duals_close(self):
        return self.dual_closure.closure_dimension == self.dual_span_rank

    @property
    def joint_closes(self):
        return self.joint_closure.closure_dimension == self.joint_span_rank

    def as_dict(self):
        return {
            "epsilon": self.epsilon,
            "kernel_params": list(self.kernel_params),
            "reading": self.reading,
            "k_norms": self.k_norms,
            "pairing_matrix": np.real_if_close(self.pairing_matrix).real.tolist(),
            "change_of_basis": np.real_if_close(self.change_of_basis).real.tolist(),
            "orthogonality_residual": self.orthogonality_residual,
            "dual_span_rank": self.dual_span_rank,
            "dual_closure": self.dual_closure.as_dict(),
            "duals_close": self.duals_close,
            "joint_span_rank": self.joint_span_rank,
            "joint_closure": self.joint_closure.as_dict(),
            "joint_closes": self.joint_closes,
            "spectra": [None if s is None else s.as_dict() for s in self.spectra],
            "combined_spectra": self.combined_spectra,
        }


def dual_family(system, epsilon=-1, kernel_params=(0.0, 0.0), reading="class_sum",
                grid=(-1.0, 1.0, 2.0)):
    """Lifted dual class operators j1, j2, j3 paired against J1, J2, J3.

    k1 = q12 + q13 + q23 + eps (q123 + q132), k2 = sum_{a<b} w_a w_b [q_a, q_b],
    k3 = 2[q12, [q13, q23]]; the k -> j change of basis is the least-squares
    solution of ``Tr(j_a J_b) = delta_ab``.
    """
    _require_three_states(system)
    if epsilon not in (-1, 0):
        raise ValueError("epsilon must be -1 or 0")
    parent, _, _ = parent_duals(kernel_params)
    n = system.sites
    q = {lab: kron_all([parent[lab].astype(complex)] * n) for lab in ("12", "13", "23", "123")}
    q["132"] = q["123"]
    labels = ("12", "13", "23", "123", "132")
    w = {"12": 1, "13": 1, "23": 1, "123": epsilon, "132": epsilon}
    k1 = sum(w[a] * q[a] for a in labels)
    k2 = sum(w[a] * w[b] * commutator(q[a], q[b]) for a, b in combinations(labels, 2))
    k3 = 2 * commutator(q["12"], commutator(q["13"], q["23"]))
    ks = (k1, k2, k3)
    J = j_class_ops(system, reading)[:3]
    M = np.array([[np.trace(k @ Jb) for Jb in J] for k in ks])
    B = np.linalg.pinv(M)
    js = tuple(sum(B[a, g] * ks[g] for g in range(3)) for a in range(3))
    pairing = np.array([[np.trace(ja @ Jb) for Jb in J] for ja in js])
    ortho = float(np.max(np.abs(pairing - np.eye(3))))
    spectra = []
    for ja in js:
        spectra.append(_safe_spectrum(ja))
    combined = []
    for c in grid:
        for dcoef in grid:
            s = _safe_spectrum(c * J[0] + dcoef * js[0])
            combined.append({
                "c": c,
                "d": dcoef,
                "integer_valued": bool(s is not None and all(k.snap_kind == "integer" for k in s.classes)),
                "spectrum": None if s is None else [[k.exact if k.exact else k.value, k.multiplicity] for k in s.classes],
            })
    return DualFamilyReport(
        epsilon=epsilon,
        kernel_params=tuple(float(x) for x in kernel_params),
        reading=reading,
        duals=js,
        k_ops=ks,
        k_norms=[fro(k) for k in ks],
        pairing_matrix=pairing,
        change_of_basis=B,
        orthogonality_residual=ortho,
        dual_closure=lie_closure(js),
        joint_closure=lie_closure(list(J) + list(js)),
        dual_span_rank=matrix_rank(js),
        joint_span_rank=matrix_rank(list(J) + list(js)),
        spectra=spectra,
        combined_spectra=combined,
    )


def _safe_spectrum(A):
    if fro(A) == 0 or not is_hermitian(A, 1e-10):
        return None
    A = (A + A.conj().T) / 2
    values, _ = hermitian_eigs(A)
    return snap_spectrum(values)


# --- span membership -------------------------------------------------------

FAMILIES = ("q_lift", "o_lift", "j_and_dual")


def operator_family(system, family, perm=None, epsilon=-1, reading="class_sum"):
    """``(labels, matrices)`` for a named operator family."""
    if family == "q_lift":
        perms = all_permutations(system.local_dim)
        return [str(p) for p in perms], [q_lift(system, p) for p in perms]
    if family == "o_lift":
        if perm is None:
            perm = Permutation.transposition(system.local_dim, 1, 2)
        labels, mats = [], []
        ops = {i: o_lift(system, i, perm) for i in range(1, system.sites + 1)}
        for k in range(system.sites + 1):
            for subset in combinations(range(1, system.sites + 1), k):
                M = np.eye(system.dim, dtype=complex)
                for i in subset:
                    M = M @ ops[i]
                labels.append("".join(f"O{i}" for i in subset) or "I")
                mats.append(M)
        return labels, mats
    if family == "j_and_dual":
        J = j_class_ops(system, reading)[:3]
        rep = dual_family(system, epsilon, reading=reading)
        return ["J1", "J2", "J3", "j1", "j2", "j3"], list(J) + list(rep.duals)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def q_span_membership(H, system, family, **kwargs):
    """Least-squares fit of H in the span of a named family: ``(coefficients, residual)``."""
    _, mats = operator_family(system, family, **kwargs)
    return span_residual(H, mats)
