"""Symmetric-group elements, cycle types and conjugacy classes.

Composition is right-to-left: ``compose(p, q)(x) == p(q(x))``.  Points are
stored 0-based; cycle strings and constructors use 1-based labels.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

from .errors import CapacityError

MAX_ENUMERATION = 8


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"{imgs} is not a permutation of 0..{len(imgs) - 1}")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self):
        return len(self.images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n, *cycles):
        """Build from 1-based cycles, e.g. ``from_cycles(3, (1, 2, 3))``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
                if a in seen:
                    raise ValueError(f"point {a} appears in two cycles")
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside 1..{n}")
                img[a - 1] = b - 1
                seen.add(a)
        return cls(tuple(img))

    @classmethod
    def transposition(cls, n, i, j):
        return cls.from_cycles(n, (i, j))

    @classmethod
    def parse(cls, text, n):
        """Parse cycle notation such as ``"(1 2 3)"``, ``"(12)(34)"`` or ``"()"``."""
        cycles = []
        for body in text.replace(" ", ",").split(")"):
            body = body.strip().lstrip("(").strip(",")
            if not body:
                continue
            if "," in body:
                pts = tuple(int(x) for x in body.split(",") if x)
            else:
                pts = tuple(int(ch) for ch in body)
            if len(pts) > 1:
                cycles.append(pts)
        return cls.from_cycles(n, *cycles)

    def __call__(self, x):
        return self.images[x]

    def inverse(self):
        inv = [0] * self.n
        for k, v in enumerate(self.images):
            inv[v] = k
        return Permutation(tuple(inv))

    def cycles(self, include_fixed=False):
        """Disjoint cycles (0-based), each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def sign(self):
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_identity(self):
        return self.images == tuple(range(self.n))

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self})"


def compose(p, q):
    """``p o q``: apply q first, then p."""
    if p.n != q.n:
        raise ValueError(f"size mismatch {p.n} vs {q.n}")
    return Permutation(tuple(p.images[q.images[x]] for x in range(p.n)))


def transpositions(p, method="bubble"):
    """Transpositions ``t_1, ..., t_m`` (1-based pairs) with ``p = t_1 o t_2 o ... o t_m``.

    ``"bubble"`` uses adjacent transpositions from a bubble sort of the
    one-line form; ``"cycles"`` splits each cycle ``(a1 ... ak)`` as
    ``(a1 ak) o ... o (a1 a2)``.
    """
    if method == "bubble":
        arr = list(p.images)
        swaps = []
        for end in range(len(arr) - 1, 0, -1):
            for k in range(end):
                if arr[k] > arr[k + 1]:
                    arr[k], arr[k + 1] = arr[k + 1], arr[k]
                    swaps.append((k + 1, k + 2))
        # p o s_1 o ... o s_m = id, so p = s_m o ... o s_1
        return swaps[::-1]
    if method == "cycles":
        out = []
        for cyc in p.cycles():
            a = cyc[0] + 1
            out.extend((a, b + 1) for b in reversed(cyc[1:]))
        return out
    raise ValueError(f"unknown decomposition method {method!r}")


def all_permutations(n):
    if n > MAX_ENUMERATION:
        raise CapacityError(f"S({n}) enumeration exceeds cap N <= {MAX_ENUMERATION}")
    return [Permutation(p) for p in itertools.permutations(range(n))]


def partitions(n, largest=None):
    """Partitions of n as descending tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def parse_cycle_type(text, n):
    """``"2+1"`` -> (2, 1); missing 1-parts are padded so ``"2"`` means (2, 1) in S(3)."""
    parts = sorted((int(x) for x in str(text).replace(",", "+").split("+") if x.strip()), reverse=True)
    total = sum(parts)
    if total > n or any(p < 1 for p in parts):
        raise ValueError(f"{text!r} is not a cycle type of S({n})")
    return tuple(parts) + (1,) * (n - total)


def cycle_type_string(ct):
    return "+".join(str(k) for k in ct)


def class_size(cycle_type):
    n = sum(cycle_type)
    denom = 1
    for c, m in Counter(cycle_type).items():
        denom *= math.factorial(m) * c ** m
    return math.factorial(n) // denom


@dataclass(frozen=True)
class ConjugacyClass:
    cycle_type: tuple
    size: int
    members: tuple

    @property
    def label(self):
        return cycle_type_string(self.cycle_type)


def conjugacy_classes(n, members=True):
    """Classes of S(n) in ascending lexicographic order of cycle type.

    With ``members=False`` only sizes are computed, and any n is allowed.
    """
    types = sorted(partitions(n))
    if not members:
        return [ConjugacyClass(ct, class_size(ct), ()) for ct in types]
    buckets = {ct: [] for ct in types}
    for p in all_permutations(n):
        buckets[p.cycle_type()].append(p)
    return [ConjugacyClass(ct, len(buckets[ct]), tuple(buckets[ct])) for ct in types]


def class_members(n, cycle_type):
    if isinstance(cycle_type, str):
        cycle_type = parse_cycle_type(cycle_type, n)
    cycle_type = tuple(sorted(cycle_type, reverse=True))
    return [p for p in all_permutations(n) if p.cycle_type() == cycle_type]


def content_sum(partition):
    """Sum of (column - row) over the boxes of a Young diagram."""
    return sum(c - r for r, row in enumerate(partition) for c in range(row))


def irrep_dimension(partition):
    """Hook-length formula."""
    n = sum(partition)
    conj = [sum(1 for row in partition if row > c) for c in range(partition[0])] if partition else []
    hooks = 1
    for r, row in enumerate(partition):
        for c in range(row):
            hooks *= (row - c - 1) + (conj[c] - r - 1) + 1
    return math.factorial(n) // hooks
