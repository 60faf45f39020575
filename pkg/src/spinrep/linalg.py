"""Dense complex and exact-rational matrix kernels.

Matrices are plain ``numpy.ndarray`` (complex128).  Exact work goes through
:class:`RationalMatrix`, whose rank is computed by fraction-free elimination
over Python integers.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from . import _kernels
from .config import max_dim
from .errors import AmbiguityError, CapacityError, ContractError, RecognitionError

SQRT3 = math.sqrt(3.0)
SURD_BOUND = 32

MATRIX_FORMAT = "spinrep-matrix"
MATRIX_FORMAT_VERSION = 1


def _check_square(A, name="matrix"):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    return A


def _check_dim(dim):
    if dim > max_dim():
        raise CapacityError(f"dimension {dim} exceeds the configured cap {max_dim()}")


def fro(A):
    return float(np.linalg.norm(A))


def kron(A, B):
    """Kronecker product with block (i, j) equal to ``A[i, j] * B``."""
    A = _check_square(A, "A")
    B = _check_square(B, "B")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
        raise ValueError("kron operands must have finite entries")
    _check_dim(A.shape[0] * B.shape[0])
    return np.kron(A, B)


def kron_all(mats):
    return reduce(kron, mats)


def lift(A, site, system):
    """Embed a one-site operator at ``site`` (1-based): I^(i-1) (x) A (x) I^(N-i)."""
    A = _check_square(A)
    n, d = system.sites, system.local_dim
    if not 1 <= site <= n:
        raise IndexError(f"site {site} out of range 1..{n}")
    if A.shape[0] != d:
        raise ValueError(f"operator has dim {A.shape[0]}, local dimension is {d}")
    _check_dim(d ** n)
    left = np.eye(d ** (site - 1))
    right = np.eye(d ** (n - site))
    return np.kron(np.kron(left, A), right)


def commutator(A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch {A.shape} vs {B.shape}")
    return A @ B - B @ A


def hermiticity_defect(A):
    A = np.asarray(A)
    return float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0


def is_hermitian(A, rtol=1e-12):
    return hermiticity_defect(A) <= rtol * max(1.0, fro(A))


def hermitian_eigs(A, rtol=1e-12):
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix.

    Raises ContractError when ``max|A - A^H|`` exceeds ``rtol * ||A||``.
    """
    A = _check_square(A)
    scale = max(1.0, fro(A))
    defect = hermiticity_defect(A)
    if defect > rtol * scale:
        raise ContractError(
            f"matrix is not Hermitian: max|A - A^H| = {defect:.3e} > {rtol:g}*||A|| = {rtol * scale:.3e}"
        )
    values, vectors = np.linalg.eigh(A)
    res = np.linalg.norm(A @ vectors - vectors * values, axis=0)
    if res.size and res.max() > 1e-10 * scale:
        raise ContractError(f"eigenpair residual {res.max():.3e} above 1e-10*||A||")
    return values, vectors


# --- exact rationals -------------------------------------------------------

def _recognize(x, max_den):
    f = Fraction(x).limit_denominator(max_den)
    if float(f) != x:
        return None
    return f


class RationalMatrix:
    """Square matrix of exact rationals."""

    def __init__(self, entries):
        arr = np.array(entries, dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("RationalMatrix must be square")
        self.entries = np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr

    @property
    def dim(self):
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim):
        return cls([[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)])

    @classmethod
    def from_complex(cls, M, max_den=1 << 20):
        """Exact reading of a float matrix; fails unless every entry is a real rational bit-for-bit."""
        M = _check_square(M)
        if np.iscomplexobj(M) and np.any(M.imag != 0):
            raise RecognitionError("matrix has nonzero imaginary parts")
        real = np.real(M)
        if not np.all(np.isfinite(real)):
            raise RecognitionError("matrix has non-finite entries")
        out = np.empty(real.shape, dtype=object)
        for idx, x in np.ndenumerate(real):
            f = _recognize(float(x), max_den)
            if f is None:
                raise RecognitionError(f"entry {idx} = {x!r} has no rational reading with denominator <= {max_den}")
            out[idx] = f
        return cls(out)

    @classmethod
    def nearest(cls, M, max_den=64, atol=1e-12):
        """Nearest rational reading with small denominators, or None if some entry is farther than ``atol``."""
        M = _check_square(M)
        if np.max(np.abs(np.imag(M)), initial=0.0) > atol:
            return None
        out = np.empty(M.shape, dtype=object)
        for idx, x in np.ndenumerate(np.real(M)):
            f = Fraction(float(x)).limit_denominator(max_den)
            if abs(float(f) - x) > atol:
                return None
            out[idx] = f
        return cls(out)

    def to_complex(self):
        return np.array([[complex(float(x)) for x in row] for row in self.entries], dtype=complex).reshape(
            self.entries.shape
        )

    def shifted(self, value):
        """Return ``self - value * I``."""
        out = self.entries.copy()
        v = Fraction(value)
        for i in range(self.dim):
            out[i, i] = out[i, i] - v
        return RationalMatrix(out)

    def rank(self):
        return exact_rank(self.entries)

    def kernel_dim(self, value):
        return self.dim - self.shifted(value).rank()

    def __matmul__(self, other):
        return RationalMatrix(self.entries.dot(other.entries))

    def __add__(self, other):
        return RationalMatrix(self.entries + other.entries)

    def __sub__(self, other):
        return RationalMatrix(self.entries - other.entries)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.all(self.entries == other.entries))

    def __repr__(self):
        return f"RationalMatrix(dim={self.dim})"


def exact_rank(entries):
    """Rank over Q by fraction-free (Bareiss) elimination on integer rows."""
    rows = []
    for row in np.asarray(entries, dtype=object):
        fr = [Fraction(x) for x in row]
        den = reduce(math.lcm, (x.denominator for x in fr), 1)
        rows.append([int(x * den) for x in fr])
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    a = rows
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, m):
            arc = a[r][col]
            row_r, row_p = a[r], a[rank]
            a[r] = [(p * row_r[c] - arc * row_p[c]) // prev for c in range(n)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


# --- spectra ---------------------------------------------------------------

@dataclass
class SpectrumClass:
    value: float
    multiplicity: int
    residual: float
    snapped: bool = False
    snap_kind: str | None = None
    exact: str | None = None
    rational: Fraction | None = None
    exact_verified: bool = False

    def as_dict(self):
        return {
            "value": self.value,
            "multiplicity": self.multiplicity,
            "residual": self.residual,
            "snapped": self.snapped,
            "snap_kind": self.snap_kind,
            "exact": self.exact,
            "exact_verified": self.exact_verified,
        }


@dataclass
class SpectrumReport:
    classes: list
    trace: float
    dim: int
    tol: float
    meta: dict = field(default_factory=dict)

    def pairs(self):
        """``[(exact-or-float value, multiplicity), ...]`` in ascending order."""
        return [(c.rational if c.rational is not None else (c.exact or c.value), c.multiplicity)
                for c in self.classes]

    def multiplicities(self):
        return {c.exact if c.exact is not None else c.value: c.multiplicity for c in self.classes}

    @property
    def all_exact_verified(self):
        return all(c.exact_verified for c in self.classes)

    def as_dict(self):
        return {
            "dim": self.dim,
            "trace": self.trace,
            "tol": self.tol,
            "classes": [c.as_dict() for c in self.classes],
            **({"meta": self.meta} if self.meta else {}),
        }


def _format_surd(a, b):
    tail = f"{abs(b)}*sqrt(3)" if abs(b) != 1 else "sqrt(3)"
    if a == 0:
        return ("-" if b < 0 else "") + tail
    return f"{a}{'-' if b < 0 else '+'}{tail}"


def _snap_auto(x, tol):
    for den, kind in ((1, "integer"), (2, "half"), (4, "quarter")):
        r = round(x * den)
        if abs(x - r / den) <= tol:
            f = Fraction(r, den)
            return float(f), kind, str(f), f
    hits = []
    for b in range(-SURD_BOUND, SURD_BOUND + 1):
        if b == 0:
            continue
        a = round(x - b * SQRT3)
        if abs(a) <= SURD_BOUND and abs(x - (a + b * SQRT3)) <= tol:
            hits.append((a, b))
    if len(hits) > 1:
        raise AmbiguityError(f"value {x!r} within {tol:g} of " + ", ".join(_format_surd(a, b) for a, b in hits))
    if hits:
        a, b = hits[0]
        return a + b * SQRT3, "sqrt3", _format_surd(a, b), None
    return None


def _snap_candidates(x, candidates, tol):
    hits = [c for c in candidates if abs(x - complex(c)) <= tol]
    if len(hits) > 1:
        raise AmbiguityError(f"value {x!r} within {tol:g} of candidates {hits[0]!r} and {hits[1]!r}")
    if not hits:
        return None
    c = hits[0]
    if isinstance(c, (int, Fraction)):
        rational = Fraction(c)
    elif isinstance(c, float):
        rational = _recognize(c, 64)
    else:
        rational = None
    exact = str(rational) if rational is not None else None
    return float(np.real(complex(c))), "candidate", exact, rational


def snap_spectrum(values, candidates=None, tol=None, exact_source=None):
    """Cluster sorted eigenvalues and snap each cluster to an exact target.

    Targets are ``candidates`` when given, otherwise integers, halves,
    quarters and ``a + b*sqrt(3)`` (``|a|, |b| <= 32``).  With
    ``exact_source`` every rational snapped value is checked against the
    exact kernel dimension of ``exact_source - value*I``.
    """
    values = np.asarray(values, dtype=float)
    if values.size > 1 and np.any(np.diff(values) < 0):
        raise ValueError("raw eigenvalues must be sorted ascending")
    if tol is None:
        tol = 1e-8 * max(1.0, float(np.max(np.abs(values))) if values.size else 1.0)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if exact_source is not None and exact_source.dim != values.size:
        raise ValueError("exact_source dimension does not match the number of eigenvalues")
    labels = _kernels.cluster_labels(values, tol)
    classes = []
    for lab in range(int(labels[-1]) + 1 if values.size else 0):
        group = values[labels == lab]
        mean = float(group.mean())
        snap = _snap_candidates(mean, candidates, tol) if candidates is not None else _snap_auto(mean, tol)
        if snap is None:
            cls = SpectrumClass(mean, int(group.size), float(np.max(np.abs(group - mean))))
        else:
            val, kind, exact, rational = snap
            cls = SpectrumClass(val, int(group.size), float(np.max(np.abs(group - val))), True, kind, exact, rational)
            if exact_source is not None and rational is not None:
                cls.exact_verified = exact_source.kernel_dim(rational) == cls.multiplicity
        classes.append(cls)
    return SpectrumReport(classes, float(values.sum()), int(values.size), float(tol))


def spectrum(A, candidates=None, tol=None, exact_source=None):
    """Snapped spectrum of a Hermitian matrix."""
    values, _ = hermitian_eigs(A)
    if tol is None:
        tol = 1e-8 * max(1.0, float(np.max(np.abs(values))) if values.size else 1.0)
    report = snap_spectrum(values, candidates, tol, exact_source)
    report.trace = float(np.real(np.trace(A)))
    return report


def span_residual(H, basis):
    """Least-squares coefficients of ``H`` in ``span(basis)`` under the Frobenius product.

    Returns ``(coefficients, residual)`` with ``residual = ||H - sum c_k B_k||_F``.
    """
    H = np.asarray(H)
    if not basis:
        raise ValueError("basis must be nonempty")
    for B in basis:
        if np.shape(B) != H.shape:
            raise ValueError(f"dimension mismatch {np.shape(B)} vs {H.shape}")
    A = np.stack([np.asarray(B, dtype=complex).ravel() for B in basis], axis=1)
    coeffs, *_ = np.linalg.lstsq(A, H.astype(complex).ravel(), rcond=None)
    residual = float(np.linalg.norm(H.ravel() - A @ coeffs))
    return coeffs, residual


# --- dump format -----------------------------------------------------------

def dump_matrix(M, system=None, rational=None, meta=None):
    """Structured document for a matrix: row-major ``[re, im]`` entries plus optional ``[num, den]`` view."""
    M = _check_square(M)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    doc = {
        "format": MATRIX_FORMAT,
        "version": MATRIX_FORMAT_VERSION,
        "dim": int(M.shape[0]),
        "system": None if system is None else {"sites": system.sites, "twice_spin": system.spin.twice_spin},
        "entries": [[float(z.real), float(z.imag)] for z in np.asarray(M, dtype=complex).ravel()],
    }
    if rational is not None:
        doc["rational"] = [[x.numerator, x.denominator] for x in rational.entries.ravel()]
    if meta:
        doc["meta"] = meta
    return doc


def load_matrix(doc):
    """Inverse of :func:`dump_matrix`: ``(matrix, system_dict, RationalMatrix or None)``."""
    if doc.get("format") != MATRIX_FORMAT:
        raise ValueError("not a spinrep matrix document")
    dim = doc["dim"]
    flat = np.array([complex(re, im) for re, im in doc["entries"]], dtype=complex)
    if flat.size != dim * dim:
        raise ValueError("entry count does not match dim")
    rational = None
    if "rational" in doc:
        vals = np.empty(dim * dim, dtype=object)
        for k, (num, den) in enumerate(doc["rational"]):
            vals[k] = Fraction(num, den)
        rational = RationalMatrix(vals.reshape(dim, dim))
    return flat.reshape(dim, dim), doc.get("system"), rational


def dumps_matrix(M, system=None, rational=None, meta=None):
    return json.dumps(dump_matrix(M, system, rational, meta), sort_keys=True)


def loads_matrix(text):
    return load_matrix(json.loads(text))
