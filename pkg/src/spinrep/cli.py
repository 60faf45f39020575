"""Command-line entry point: build operators, spectra, multiplets, claim suites, Q-rep reports."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from itertools import combinations

import numpy as np

from . import __version__, _kernels
from .config import max_dim
from .errors import CapacityError, SpinrepError
from .exchange import schroedinger_hamiltonian, swap_oracle, transposition_class_decomposition
from .ledger import SUITES, exit_status, proposition_ledger
from .linalg import SURD_BOUND, RationalMatrix, dump_matrix, hermitian_eigs, snap_spectrum
from .multiplets import h0_spectrum_multiplet, multiplicities
from .permutations import Permutation
from .qrep import READINGS, compare_lifted_closure, dual_family, j_class_ops, lie_closure, q_lift, qtilde
from .schema import SCHEMA_VERSION
from .spins import CONVENTIONS, SiteSystem, SpinQuantum, heisenberg

COMMANDS = ("build", "spectrum", "multiplets", "verify", "qrep", "schema")
HAMILTONIANS = ("heisenberg", "schroedinger")
QREP_ACTIONS = ("closure", "jops", "dual")
FORMATS = ("json", "csv-table")

# exact kernel checks run Bareiss over Python integers; beyond this they get slow
EXACT_MAX_DIM = 128

EXIT_OK, EXIT_CLAIM_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(SpinrepError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spin: str
    sites: int
    hamiltonian: str = "heisenberg"
    convention: str = "casimir_sum"
    graph: str = "complete"
    tol: float = 1e-10
    samples: int = 100
    seed: int = 42
    output: str | None = None
    format: str = "json"
    suite: str = "all"
    action: str | None = None
    epsilon: int = -1
    kernel: tuple = (0.0, 0.0)
    reading: str = "class_sum"
    timestamp: bool = True

    def echo(self):
        out = asdict(self)
        out["kernel"] = list(self.kernel)
        out.pop("timestamp")
        return out


def parse_graph(text, sites):
    """``"complete"`` or ``"1-2,2-3"`` into a tuple of 1-based edges."""
    if text == "complete":
        return None
    edges = []
    for chunk in text.split(","):
        parts = chunk.strip().split("-")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise UsageError(f"bad edge {chunk!r}; expected i-j")
        i, j = (int(p) for p in parts)
        if i == j or not (1 <= i <= sites and 1 <= j <= sites):
            raise UsageError(f"edge {i}-{j} invalid for {sites} sites")
        edges.append((i, j))
    if not edges:
        raise UsageError("empty graph")
    return tuple(edges)


def validate(cfg):
    """Check every numeric parameter and return the SiteSystem; nothing heavy runs before this."""
    try:
        spin = SpinQuantum.parse(cfg.spin)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--spin: {exc}") from None
    if spin.twice_spin < 1:
        raise UsageError("--spin must be at least 1/2")
    if cfg.sites < 1:
        raise UsageError("--sites must be >= 1")
    if not (math.isfinite(cfg.tol) and cfg.tol > 0):
        raise UsageError("--tol must be a positive finite number")
    if cfg.samples < 1:
        raise UsageError("--samples must be >= 1")
    if cfg.seed < 0:
        raise UsageError("--seed must be >= 0")
    if cfg.epsilon not in (-1, 0):
        raise UsageError("--epsilon must be -1 or 0")
    if not all(math.isfinite(x) for x in cfg.kernel):
        raise UsageError("--kernel entries must be finite")
    graph = parse_graph(cfg.graph, cfg.sites)
    if cfg.format == "csv-table" and cfg.command not in ("spectrum", "multiplets", "verify"):
        raise UsageError(f"csv-table output is not available for {cfg.command}")
    if cfg.command == "qrep" and cfg.action in ("jops", "dual") and spin.twice_spin != 2:
        raise UsageError(f"qrep {cfg.action} needs --spin 1 (three single-particle states)")
    if cfg.command == "spectrum" and cfg.hamiltonian == "heisenberg" and cfg.convention == "exchange_match" \
            and spin.twice_spin != 1:
        raise UsageError("exchange_match convention is defined for spin 1/2 only")
    return SiteSystem(cfg.sites, spin, graph)


# --- operator construction ---------------------------------------------------------

def build_operator(system, cfg):
    """``(matrix, RationalMatrix or None, provenance)`` for the selected Hamiltonian."""
    if cfg.hamiltonian == "schroedinger":
        H = schroedinger_hamiltonian(system)
        exact, how = None, "skipped: dimension above exact limit"
        if system.dim <= EXACT_MAX_DIM:
            oracle = sum(swap_oracle(system, Permutation.transposition(system.sites, i, j)) for i, j in system.graph)
            exact, how = RationalMatrix.from_complex(oracle), "sum of exact site-swap matrices over the graph"
        return H, exact, how
    H = heisenberg(system, cfg.convention)
    exact, how = None, "skipped: dimension above exact limit"
    if system.dim <= EXACT_MAX_DIM:
        exact = RationalMatrix.nearest(H)
        how = "entrywise rational reading (denominator <= 64, atol 1e-12)" if exact is not None \
            else "skipped: operator has irrational entries"
    return H, exact, how


def snap_provenance(tol_abs, exact_how):
    return {
        "targets": f"integer, half-integer, quarter-integer, a+b*sqrt(3) with |a|,|b| <= {SURD_BOUND}",
        "tolerance": tol_abs,
        "exact_verification": exact_how,
    }


def _spectrum_of(H, exact, tol):
    values, _ = hermitian_eigs(H)
    tol_abs = tol * max(1.0, float(np.max(np.abs(values))))
    report = snap_spectrum(values, tol=tol_abs, exact_source=exact)
    report.trace = float(np.real(np.trace(H)))
    return report, tol_abs


def _json_ready(x):
    if isinstance(x, dict):
        return {str(k): _json_ready(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_ready(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return _json_ready(x.tolist())
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


# --- commands ----------------------------------------------------------------------

def cmd_build(system, cfg):
    H, exact, how = build_operator(system, cfg)
    doc = dump_matrix(H, system, exact, meta={"hamiltonian": cfg.hamiltonian, "convention": cfg.convention,
                                              "graph": [list(e) for e in system.graph]})
    return doc, {"exact_reading": how}, EXIT_OK


def cmd_spectrum(system, cfg):
    H, exact, how = build_operator(system, cfg)
    report, tol_abs = _spectrum_of(H, exact, cfg.tol)
    result = {"spectrum": report.as_dict()}
    if cfg.hamiltonian == "schroedinger" and system.is_complete:
        rows = transposition_class_decomposition(report, system.sites)
        result["decomposition"] = [
            {**r, "value": str(r["value"]), "partition": None if r["partition"] is None else list(r["partition"])}
            for r in rows
        ]
    if cfg.hamiltonian == "heisenberg" and system.is_complete:
        oracle = h0_spectrum_multiplet(system, cfg.convention)
        dense = [(c.exact, c.multiplicity) for c in report.classes]
        expected = [(c.exact, c.multiplicity) for c in oracle.classes]
        result["multiplet_check"] = {"match": dense == expected, "expected": [list(p) for p in expected]}
    return result, {"snapping": snap_provenance(tol_abs, how)}, EXIT_OK


def cmd_multiplets(system, cfg):
    table = multiplicities(system.spin, system.sites)
    levels = h0_spectrum_multiplet(SiteSystem(system.sites, system.spin), cfg.convention)
    return {"table": table.as_dict(), "h0_levels": levels.as_dict()}, \
        {"snapping": "exact from Clebsch-Gordan multiplicities"}, EXIT_OK


def cmd_verify(system, cfg):
    claims = proposition_ledger(system, cfg.suite, cfg.samples, cfg.seed, cfg.tol)
    summary = {s: sum(c.status == s for c in claims) for s in ("PASS", "FAIL", "DISCREPANCY_WITH_PAPER")}
    result = {"suite": cfg.suite, "claims": [c.as_dict() for c in claims], "summary": summary}
    return result, {"sampling": "axes from normalized Gaussians, angles uniform on [0, 2pi), "
                                "numpy default_rng(seed) per claim"}, exit_status(claims)


def _transposition_gens(spin, system):
    d = system.local_dim
    perms = [Permutation.transposition(d, a, b) for a, b in combinations(range(1, d + 1), 2)]
    return [qtilde(spin, p) for p in perms], [q_lift(system, p) for p in perms]


def cmd_qrep(system, cfg):
    prov = {"closure_rule": "Gram-Schmidt under the Frobenius product, relative tolerance 1e-10"}
    if cfg.action == "closure":
        parent, lifted = _transposition_gens(system.spin, system)
        cmp = compare_lifted_closure(parent, lifted)
        return {
            "action": "closure",
            "parent_closure": lie_closure(parent).as_dict(),
            "lifted_closure": lie_closure(lifted).as_dict(),
            "comparison": cmp,
        }, prov, EXIT_OK
    if cfg.action == "jops":
        ops = j_class_ops(system, cfg.reading)
        spectra = {}
        for name, M in (("J1", ops.j1), ("J2", ops.j2), ("J3", ops.j3)):
            herm = np.allclose(M, M.conj().T, atol=1e-12)
            spectra[name] = _spectrum_of((M + M.conj().T) / 2, None, cfg.tol)[0].as_dict() if herm else None
        return {"action": "jops", "reading": cfg.reading, "spectra": spectra,
                "commutator_residual_j1_j3": ops.commutator_residual}, prov, EXIT_OK
    rep = dual_family(system, cfg.epsilon, cfg.kernel, cfg.reading)
    return {"action": "dual", **rep.as_dict()}, prov, EXIT_OK


HANDLERS = {"build": cmd_build, "spectrum": cmd_spectrum, "multiplets": cmd_multiplets, "verify": cmd_verify,
            "qrep": cmd_qrep}


# --- output ------------------------------------------------------------------------

def envelope(cfg, result, provenance):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": "spinrep",
        "version": __version__,
        "command": cfg.command,
        "config": cfg.echo(),
        "provenance": {**provenance, "kernels": "numba" if _kernels.USE_NUMBA else "numpy", "max_dim": max_dim()},
        "result": result,
    }
    if cfg.timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return _json_ready(doc)


def render_csv(doc):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    result = doc["result"]
    if doc["command"] == "spectrum":
        w.writerow(["value", "multiplicity", "residual", "exact_verified"])
        for c in result["spectrum"]["classes"]:
            w.writerow([c["exact"] if c["exact"] is not None else repr(c["value"]), c["multiplicity"],
                        repr(c["residual"]), c["exact_verified"]])
    elif doc["command"] == "multiplets":
        w.writerow(["total_spin", "multiplicity", "states"])
        for r in result["table"]["rows"]:
            w.writerow([r["total_spin"], r["multiplicity"], r["states"]])
    else:
        w.writerow(["claim_id", "status", "max_residual", "tolerance"])
        for c in result["claims"]:
            w.writerow([c["claim_id"], c["status"], repr(c["max_residual"]), repr(c["tolerance"])])
    return buf.getvalue()


def render(doc, fmt):
    if fmt == "csv-table":
        return render_csv(doc)
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


# --- argument parsing -----------------------------------------------------------------

def _kernel(text):
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}") from None
    return (a, b)


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spin", default="1/2", help="single-particle spin, e.g. 1/2, 1, 3/2")
    common.add_argument("--sites", type=int, default=2)
    common.add_argument("--graph", default="complete", help='"complete" or edges like 1-2,2-3')
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for byte-stable output")

    ham = argparse.ArgumentParser(add_help=False)
    ham.add_argument("--hamiltonian", choices=HAMILTONIANS, default="heisenberg")
    ham.add_argument("--convention", choices=CONVENTIONS, default="casimir_sum")

    parser = argparse.ArgumentParser(prog="spinrep", description=__doc__)
    parser.add_argument("--version", action="version", version=f"spinrep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common, ham], help="serialize an operator")
    sub.add_parser("spectrum", parents=[common, ham], help="snapped spectrum report")
    m = sub.add_parser("multiplets", parents=[common], help="Clebsch-Gordan multiplet table")
    m.add_argument("--convention", choices=CONVENTIONS, default="casimir_sum")
    v = sub.add_parser("verify", parents=[common], help="run claim suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    q = sub.add_parser("qrep", parents=[common], help="state-permutation reports")
    q.add_argument("action", choices=QREP_ACTIONS)
    q.add_argument("--epsilon", type=int, default=-1)
    q.add_argument("--kernel", type=_kernel, default=(0.0, 0.0), help="two kernel coordinates, e.g. 0,0")
    q.add_argument("--reading", choices=READINGS, default="class_sum")
    sub.add_parser("schema", help="print the report JSON schema")
    return parser


def config_from_args(ns):
    return RunConfig(
        command=ns.command,
        spin=ns.spin,
        sites=ns.sites,
        hamiltonian=getattr(ns, "hamiltonian", "heisenberg"),
        convention=getattr(ns, "convention", "casimir_sum"),
        graph=ns.graph,
        tol=ns.tol,
        samples=ns.samples,
        seed=ns.seed,
        output=ns.output,
        format=ns.format,
        suite=getattr(ns, "suite", "all"),
        action=getattr(ns, "action", None),
        epsilon=getattr(ns, "epsilon", -1),
        kernel=tuple(getattr(ns, "kernel", (0.0, 0.0))),
        reading=getattr(ns, "reading", "class_sum"),
        timestamp=not ns.no_timestamp,
    )


def run(cfg):
    """Validate, execute and return ``(exit status, report document)``."""
    system = validate(cfg)
    result, provenance, status = HANDLERS[cfg.command](system, cfg)
    return status, envelope(cfg, result, provenance)


def main(argv=None):
    parser = make_parser()
    ns = parser.parse_args(argv)
    if ns.command == "schema":
        from .schema import REPORT_SCHEMA

        sys.stdout.write(json.dumps(REPORT_SCHEMA, sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    cfg = config_from_args(ns)
    try:
        status, doc = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spinrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"spinrep: capacity error: {exc} (cap set by SPINREP_MAX_DIM, currently {max_dim()})",
              file=sys.stderr)
        return EXIT_CAPACITY
    except (SpinrepError, ValueError) as exc:
        print(f"spinrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(doc, cfg.format)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
