"""Machine checks of the commutation, Casimir, O-rep and J-operator claims.

Each sub-claim yields exactly one :class:`ClaimReport`.  Claims marked
``asserted`` are expected to hold and FAIL otherwise; the rest are
measurements whose mismatch is recorded as ``DISCREPANCY_WITH_PAPER``.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .exchange import exchange_op
from .linalg import commutator, fro, hermitian_eigs, span_residual
from .permutations import Permutation, all_permutations
from .qrep import (
    compare_lifted_closure,
    dual_family,
    j_class_ops,
    lie_closure,
    o_lift,
    parent_j3_comparison,
    q_lift,
    qtilde,
    s3_labels,
)
from .rotations import (
    RotationSpec,
    apply_rotation,
    casimir_check,
    judge,
    random_axes_angles,
    relative_commutator,
    site_rotation,
    wigner,
)
from .spins import SiteSystem, SpinQuantum, heisenberg, site_spin, total_ops

SUITES = ("prop5", "prop6", "prop7", "orep", "qsect6")


def _pairs(system):
    return list(combinations(range(1, system.sites + 1), 2))


def _pair_square(system, i, j, sign):
    si, sj = site_spin(system, i), site_spin(system, j)
    return sum((a + sign * b) @ (a + sign * b) for a, b in zip(si, sj))


def _coupled_basis(system):
    t = total_ops(system)
    return [np.eye(system.dim, dtype=complex), *t.site_casimirs, t.j2, t.jz]


def _relative_span_residual(H, basis):
    _, res = span_residual(H, basis)
    return res / fro(H)


def _spectrum_distance(A, expected):
    values, _ = hermitian_eigs(A)
    expected = np.sort(np.asarray(expected, dtype=float))
    return float(np.max(np.abs(np.sort(values) - expected))), values


def _multiset(pairs):
    out = []
    for v, m in pairs:
        out.extend([v] * m)
    return out


def _rounded_pairs(values, digits=8):
    vals, counts = np.unique(np.round(values, digits) + 0.0, return_counts=True)
    return [[float(v), int(c)] for v, c in zip(vals, counts)]


# --- commutation with the coupled basis and global rotations ----------------

def suite_prop5(system, samples, seed, tol):
    t = total_ops(system)
    P = {p: exchange_op(system, *p) for p in _pairs(system)}
    reports = []
    for key, op, quote in (
        ("j2", t.j2, "[P_S(S_i.S_j), J^2] = 0"),
        ("jz", t.jz, "[P_S(S_i.S_j), J^z] = 0"),
    ):
        worst = max(relative_commutator(H, op) for H in P.values())
        reports.append(judge(f"prop5.1.{key}", quote, worst, tol, details={"pairs": len(P)}))
    worst = max(relative_commutator(H, c) for H in P.values() for c in t.site_casimirs)
    reports.append(judge("prop5.1.sk2", "[P_S(S_i.S_j), S_k^2] = 0", worst, tol))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for axis, angle in random_axes_angles(rng, samples):
        U = apply_rotation(system, RotationSpec(axis, angle, "global"))
        worst = max(worst, max(relative_commutator(H, U) for H in P.values()))
    reports.append(judge("prop5.2.global", "[P_S(S_i.S_j), A(x)...(x)A] = 0", worst, tol,
                         samples=samples, seed=seed))
    return reports


# --- partial rotations ------------------------------------------------------

def suite_prop6(system, samples, seed, tol):
    P = {p: exchange_op(system, *p) for p in _pairs(system)}
    disjoint, overlap = 0.0, 0.0
    n_disjoint = 0
    rng = np.random.default_rng(seed)
    for axis, angle in random_axes_angles(rng, samples):
        for k in range(1, system.sites + 1):
            U = apply_rotation(system, RotationSpec(axis, angle, "parot", (k,)))
            for (i, j), H in P.items():
                r = relative_commutator(H, U)
                if k in (i, j):
                    overlap = max(overlap, r)
                else:
                    disjoint = max(disjoint, r)
                    n_disjoint += 1
    reports = [
        judge("prop6.1.k_disjoint", "[P_S(S_i.S_j), Parot(k)] = 0, k not in {i,j}", disjoint, tol,
              samples=samples, seed=seed, details={"vacuous": n_disjoint == 0}),
        judge("prop6.1.k_overlap", "[P_S(S_i.S_j), Parot(k)] = 0, k in {i,j}", overlap, tol,
              asserted=False, samples=samples, seed=seed),
    ]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for axis, angle in random_axes_angles(rng, samples):
        for (i, j), H in P.items():
            U = apply_rotation(system, RotationSpec(axis, angle, "biparot", (i, j)))
            worst = max(worst, relative_commutator(H, U))
    reports.append(judge("prop6.2.biparot", "[P_S(S_i.S_j), BiParot(ij)] = 0", worst, tol,
                         samples=samples, seed=seed))
    return reports


# --- normal subgroups and Casimirs ---------------------------------------------

def suite_prop7(system, samples, seed, tol):
    spin = system.spin
    reports = []

    # conjugating a one-site rotation by any product rotation stays one-site
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        per_site = {k: wigner(spin, *random_axes_angles(rng, 1)[0]) for k in range(1, system.sites + 1)}
        g = site_rotation(system, per_site)
        (axis, angle), = random_axes_angles(rng, 1)
        k = int(rng.integers(1, system.sites + 1))
        B = wigner(spin, axis, angle)
        lhs = g @ site_rotation(system, {k: B}) @ g.conj().T
        rhs = site_rotation(system, {k: per_site[k] @ B @ per_site[k].conj().T})
        worst = max(worst, fro(lhs - rhs))
    reports.append(judge("prop7.1.parot_normal", "g Parot(k) g^-1 in Parot(k), g in SU(2)^N", worst, tol,
                         asserted=False, samples=samples, seed=seed))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for (axis, angle), (axis2, angle2) in zip(random_axes_angles(rng, samples), random_axes_angles(rng, samples)):
        A = wigner(spin, axis, angle)
        B = wigner(spin, axis2, angle2)
        g = site_rotation(system, {k: A for k in range(1, system.sites + 1)})
        for i, j in _pairs(system):
            lhs = g @ site_rotation(system, {i: B, j: B}) @ g.conj().T
            C = A @ B @ A.conj().T
            worst = max(worst, fro(lhs - site_rotation(system, {i: C, j: C})))
    reports.append(judge("prop7.2.biparot_normal", "g BiParot(ij) g^-1 in BiParot(ij), g global", worst, tol,
                         asserted=False, samples=samples, seed=seed))

    basis = _coupled_basis(system)
    t = total_ops(system)
    worst = max(
        casimir_check(system, t.site_casimirs[k - 1], "parot", (k,), samples, seed, tol).max_residual
        for k in range(1, system.sites + 1)
    )
    reports.append(judge("prop7.3.parot_casimir", "S_k^2 commutes with Parot(k)", worst, tol, asserted=False,
                         samples=samples, seed=seed))
    worst = max(_relative_span_residual(c, basis) for c in t.site_casimirs)
    reports.append(judge("prop7.3.in_span_b", "S_k^2 in Span{b}", worst, tol, asserted=False))

    for sign, scope_key, tag in ((+1, "biparot", "4"), (-1, None, "5")):
        cands = {p: _pair_square(system, *p, sign) for p in _pairs(system)}
        label = "(S_i+S_j)^2" if sign > 0 else "(S_i-S_j)^2"
        scopes = [("biparot", "biparot_casimir")] if scope_key else [
            ("gear_inverse", "gear_inverse_casimir"), ("gear_conjugate", "gear_conjugate_casimir")]
        for scope, name in scopes:
            worst = max(
                casimir_check(system, H, scope, p, samples, seed, tol).max_residual for p, H in cands.items()
            )
            reports.append(judge(f"prop7.{tag}.{name}", f"{label} commutes with {scope}(ij)", worst, tol,
                                 asserted=False, samples=samples, seed=seed))
        res = min(_relative_span_residual(H, basis) for H in cands.values())
        reports.append(judge(f"prop7.{tag}.not_in_span_b", f"{label} not in Span{{b}}", res, tol,
                             expect="nonzero", asserted=False,
                             details={"basis": "I, S_k^2, J^2, J^z", "min_over_pairs": True}))
    return reports


# --- state-permutation and single-site lifts ----------------------------------

def _half(n):
    return SiteSystem(n, SpinQuantum(1))


def suite_orep(tol):
    reports = []
    s2 = _half(2)
    t12 = Permutation.transposition(2, 1, 2)
    P12 = exchange_op(s2, 1, 2)
    Q12 = q_lift(s2, t12)
    coeffs, res = span_residual(P12, [np.eye(4), Q12])
    reports.append(judge("orep.q_inequivalence", "P(12) != c0 + c1 Q(12)", res, tol, expect="nonzero",
                         asserted=False, details={"coefficients": [complex(c).real for c in coeffs]}))

    O1, O2 = o_lift(s2, 1, t12), o_lift(s2, 2, t12)
    reports.append(judge("orep.o_commute", "[O_1, O_2] = 0", fro(commutator(O1, O2)), tol, asserted=False))
    eye = np.eye(4)
    reports.append(judge("orep.o_involution", "O_1^2 = O_2^2 = 1",
                         max(fro(O1 @ O1 - eye), fro(O2 @ O2 - eye)), tol, asserted=False))

    for n, claim, quote in (
        (2, "orep.h0_half_2", "H_0(1/2,2) = (1 - O_1 - O_2 + O_1 O_2)/2"),
        (3, "orep.h0_half_3", "H_0(1/2,3) = 3/2 (1 - O_1 O_2 O_3)"),
    ):
        s = _half(n)
        H0 = heisenberg(s, "exchange_match")
        ones = np.eye(s.dim)
        Os = [o_lift(s, i, t12) for i in range(1, n + 1)]
        if n == 2:
            rhs = (ones - Os[0] - Os[1] + Os[0] @ Os[1]) / 2
        else:
            rhs = 1.5 * (ones - Os[0] @ Os[1] @ Os[2])
        scan = {}
        for sigma in all_permutations(2):
            ops = [o_lift(s, i, sigma) for i in range(1, n + 1)]
            fam = []
            for k in range(n + 1):
                for sub in combinations(range(n), k):
                    M = ones.astype(complex)
                    for i in sub:
                        M = M @ ops[i]
                    fam.append(M)
            c, r = span_residual(H0, fam)
            scan[str(sigma)] = {"coefficients": [round(complex(x).real, 12) for x in c], "residual": r}
        reports.append(judge(claim, quote, fro(H0 - rhs), tol, asserted=False, details={
            "convention": "exchange_match",
            "lhs_spectrum": _rounded_pairs(hermitian_eigs(H0)[0]),
            "rhs_spectrum": _rounded_pairs(hermitian_eigs(rhs)[0]),
            "least_squares_by_sigma": scan,
        }))

    # parent algebra of state transpositions and its lift
    labels = s3_labels()
    spin1 = SpinQuantum(2)
    parent = [qtilde(spin1, labels[k]) for k in ("12", "13", "23")]
    rep = lie_closure(parent)
    reports.append(judge("qrep.closure_depth", "nested commutators stabilize at order 3",
                         abs(rep.stabilization_depth - 3), 0.5, asserted=False, details=rep.as_dict()))
    s13 = SiteSystem(3, spin1)
    cmp = compare_lifted_closure(parent, [q_lift(s13, labels[k]) for k in ("12", "13", "23")])
    residual = cmp["max_constant_difference"] if cmp["match"] else max(1.0, cmp["max_constant_difference"])
    reports.append(judge("qrep.cayley_table", "[Q(a),Q(b)] table equals [Qt(a),Qt(b)] table", residual, tol,
                         asserted=False, details=cmp))
    return reports


# --- J operators and their duals ----------------------------------------------

def suite_qsect6(tol):
    s = SiteSystem(3, SpinQuantum(2))
    reports = []
    ops = {r: j_class_ops(s, r) for r in ("class_sum", "signed")}
    worst = max(o.commutator_residual for o in ops.values())
    reports.append(judge("qsect6.j1j3_commute", "[J_1, J_3] = 0", worst, tol, asserted=False,
                         details={r: o.commutator_residual for r, o in ops.items()}))

    expected_j1 = _multiset([(-3, 4), (3, 5), (0, 18)])
    for reading in ("class_sum", "signed"):
        dist, vals = _spectrum_distance(ops[reading].j1, expected_j1)
        reports.append(judge(f"qsect6.j1_spectrum.{reading}", "eig(c_1 J_1) = {-3c_1 [4], 3c_1 [5]}", dist,
                             1e-8, asserted=False, details={"measured": _rounded_pairs(vals)}))

    labels = s3_labels()
    Qt = {k: qtilde(s.spin, p) for k, p in labels.items()}
    jt1 = Qt["12"] + Qt["13"] + Qt["23"] - Qt["123"] - Qt["132"]
    reports.append(judge("qsect6.j1_parent_identity.signed", "Jt_1 = Id on C^3", fro(jt1 - np.eye(3)), tol,
                         asserted=False,
                         details={"class_sum_parent_deviation": fro(Qt["12"] + Qt["13"] + Qt["23"] - np.eye(3))}))

    r3 = 4 * np.sqrt(3)
    dist, vals = _spectrum_distance(ops["class_sum"].j3, _multiset([(-r3, 9), (0, 9), (r3, 9)]))
    reports.append(judge("qsect6.j3_spectrum", "eig(c_3 J_3) = {-4 sqrt3 c_3 [9], 4 sqrt3 c_3 [9]}", dist, 1e-8,
                         asserted=False, details={"measured": _rounded_pairs(vals)}))

    cmp = parent_j3_comparison()
    reports.append(judge("qsect6.jt3_identity", "Jt_3 = 2[Qt12,[Qt13,Qt23]] = 2(Qt13 - Qt12)",
                         cmp["max_abs_difference"], tol, asserted=False, details={
                             "lhs": np.real(cmp["lhs"]).tolist(),
                             "rhs": np.real(cmp["rhs"]).tolist(),
                             "lhs_in_transpositions": [c.real for c in cmp["transposition_coefficients"]],
                         }))

    for eps in (-1, 0):
        rep = dual_family(s, eps)
        reports.append(judge(f"qsect6.dual_orthogonality.eps{eps}", "Tr(j_a J_b) = delta_ab",
                             rep.orthogonality_residual, tol, asserted=False, details={
                                 "pairing_matrix": np.real(rep.pairing_matrix).tolist(),
                                 "k_norms": rep.k_norms,
                                 "duals_close": rep.duals_close,
                                 "joint_closes": rep.joint_closes,
                             }))
    return reports


def proposition_ledger(system, suite="all", samples=100, seed=42, tol=1e-10):
    """Run one suite (or ``"all"``) and return ClaimReports ordered by claim_id."""
    if suite not in SUITES + ("all",):
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    chosen = SUITES if suite == "all" else (suite,)
    reports = []
    for name in chosen:
        if name == "prop5":
            reports += suite_prop5(system, samples, seed, tol)
        elif name == "prop6":
            reports += suite_prop6(system, samples, seed, tol)
        elif name == "prop7":
            reports += suite_prop7(system, samples, seed, tol)
        elif name == "orep":
            reports += suite_orep(tol)
        elif name == "qsect6":
            reports += suite_qsect6(tol)
    return sorted(reports, key=lambda r: r.claim_id)


def exit_status(reports):
    return 1 if any(r.status == "FAIL" for r in reports) else 0
