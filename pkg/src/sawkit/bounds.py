"""Certified lower bounds on the base graph's growth constant.

Two sources are implemented: exact bridge counts on Z^d (walks forced
strictly right on the first step and never beyond their endpoint's first
coordinate; their counts multiply under concatenation, so every n-th
root is a valid lower bound), and the degree bound sqrt(degree-1) for
simple transitive graphs.  A user-supplied exact constant (e.g. a known
growth constant) is the third, trivial, source.

Lower-bound sequences are kept non-decreasing by a running-maximum
transform — replacing an entry by an earlier, larger valid lower bound
is still a valid lower bound — because the certificate search assumes
monotonicity.  Entries are exact :class:`~sawkit.exact.Radical` values;
all comparisons here are integer-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Optional, Sequence

from .counting import _generic_prefixes, _run_split, resolve_workers
from .exact import Radical


class BoundError(Exception):
    """A requested bound is not valid for the given graph."""


# ---------------------------------------------------------------------------
# Bridge enumeration on Z^d
# ---------------------------------------------------------------------------

def _bridge_steps(d: int) -> tuple:
    steps = []
    for i in range(d):
        for s in (1, -1):
            steps.append(tuple(s if t == i else 0 for t in range(d)))
    return tuple(steps)


def _bridge_counts_from(steps, prefix, weight, n_total):
    """Bridge counts by depth from a partial walk.  The DFS explores SAWs
    whose first coordinate stays >= 1 after the origin and counts a depth
    whenever the current vertex attains the walk's running maximum (the
    endpoint-confinement condition, checked incrementally)."""
    base = len(prefix) - 1
    counts = [0] * (n_total - base + 1)
    visited = set(prefix)
    curmax = max(v[0] for v in prefix)
    if prefix[-1][0] == curmax:
        counts[0] = weight
    if base == n_total:
        return counts
    limit = n_total - base

    def rec(u, depth, curmax):
        for mv in steps:
            w = tuple(a + b for a, b in zip(u, mv))
            if w[0] >= 1 and w not in visited:
                nd = depth + 1
                nm = curmax if curmax >= w[0] else w[0]
                if w[0] == nm:
                    counts[nd] += weight
                if nd < limit:
                    visited.add(w)
                    rec(w, nd, nm)
                    visited.discard(w)

    rec(prefix[-1], 0, curmax)
    return counts


def _bridge_task(task, steps=None, n_total=0):
    prefix, weight = task
    return _bridge_counts_from(steps, prefix, weight, n_total)


def bridge_counts(d: int, n_max: int, workers: Optional[int] = None) -> list:
    """Exact bridge counts beta_0..beta_n_max on Z^d (beta_0 = 1).

    A bridge advances its first coordinate on step one and keeps every
    vertex's first coordinate within (0, x1(end)].  Counts multiply under
    concatenation, so beta_n**(1/n) never exceeds the growth constant.
    """
    if d < 1:
        raise BoundError("bridge counts need dimension >= 1")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    workers = resolve_workers(workers)
    steps = _bridge_steps(d)
    origin = (0,) * d

    if n_max == 0:
        return [1]

    # Prefix split mirrors the SAW engines; the bridge constraint is
    # baked into the neighbor expansion so prefixes stay consistent.
    def neigh(u):
        out = []
        for mv in steps:
            w = tuple(a + b for a, b in zip(u, mv))
            if w[0] >= 1:
                out.append((w, 1))
        return out

    pdepth = min(2, n_max)
    head, tasks = _generic_prefixes(neigh, origin, pdepth)
    # the split head counts *SAW prefixes*; bridges additionally require
    # the endpoint-maximum condition, so recount the short depths exactly
    head = [0] * pdepth
    fn = partial(_bridge_task, steps=steps, n_total=n_max)
    counts = _run_split((head, tasks), fn, n_max, pdepth, workers)
    # depths below pdepth were zeroed above; fill them by the one cheap
    # direct run (pdepth <= 2 so this is constant work)
    small = _bridge_counts_from(steps, (origin,), 1, pdepth)
    for i in range(pdepth):
        counts[i] = small[i]
    return counts


# ---------------------------------------------------------------------------
# Degree bound
# ---------------------------------------------------------------------------

def degree_bound(degree: int, simple: bool = True) -> Radical:
    """The constant lower bound sqrt(degree - 1), exact.

    Valid for infinite connected simple transitive graphs; refused for
    multigraphs, where the estimate does not apply.
    """
    if not simple:
        raise BoundError("degree bound requires a simple graph")
    if degree < 2:
        raise BoundError("degree bound needs degree >= 2")
    return Radical.nth_root(degree - 1, 2)


# ---------------------------------------------------------------------------
# Lower-bound sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LowerBoundSequence:
    """Non-decreasing exact lower bounds b_1 <= ... <= b_N on the growth
    constant, with a provenance tag per entry.

    ``value_at(n)`` for n beyond the stored range returns the last entry:
    each entry bounds the same constant, so earlier entries remain valid
    at any later index.
    """

    graph_id: str
    entries: tuple
    provenance: tuple

    def __post_init__(self):
        if not self.entries:
            raise BoundError("empty lower-bound sequence")
        if len(self.entries) != len(self.provenance):
            raise BoundError("one provenance tag per entry, please")
        for earlier, later in zip(self.entries, self.entries[1:]):
            if not earlier <= later:
                raise BoundError("entries must be non-decreasing; "
                                 "regularize first")

    def __len__(self) -> int:
        return len(self.entries)

    def value_at(self, n: int) -> Radical:
        if n < 1:
            raise ValueError("indices start at 1")
        return self.entries[min(n, len(self.entries)) - 1]

    def provenance_at(self, n: int) -> str:
        if n < 1:
            raise ValueError("indices start at 1")
        return self.provenance[min(n, len(self.provenance)) - 1]

    def rows(self) -> list:
        return [(n + 1, float(v), p)
                for n, (v, p) in enumerate(zip(self.entries, self.provenance))]

    @classmethod
    def from_constant(cls, value, graph_id: str,
                      provenance: str = "constant") -> "LowerBoundSequence":
        """Single-entry sequence from an exact rational or Radical value
        (covers the 'growth constant known exactly' override)."""
        if not isinstance(value, Radical):
            value = Radical.from_fraction(Fraction(value))
        return cls(graph_id, (value,), (provenance,))


def monotone_regularize(values: Sequence, provenance=None,
                        graph_id: str = "?") -> LowerBoundSequence:
    """Running-maximum transform of valid lower bounds.

    Each output entry is the max of the inputs up to its index — still a
    lower bound on the same constant — and carries the provenance of the
    entry that attained the maximum.
    """
    vals = [v if isinstance(v, Radical) else Radical.from_fraction(Fraction(v))
            for v in values]
    if provenance is None:
        provenance = ["constant"] * len(vals)
    provenance = list(provenance)
    if len(provenance) != len(vals):
        raise BoundError("one provenance tag per value, please")
    out_v, out_p = [], []
    for v, p in zip(vals, provenance):
        if out_v and v < out_v[-1]:
            v, p = out_v[-1], out_p[-1]
        out_v.append(v)
        out_p.append(p)
    return LowerBoundSequence(graph_id, tuple(out_v), tuple(out_p))


def bridge_bounds(d: int, n_max: int,
                  workers: Optional[int] = None) -> tuple:
    """(beta counts, regularized LowerBoundSequence) for Z^d up to n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1 for a bound sequence")
    betas = bridge_counts(d, n_max, workers=workers)
    vals = [Radical.nth_root(betas[n], n) for n in range(1, n_max + 1)]
    seq = monotone_regularize(vals, ["bridge"] * len(vals),
                              graph_id=f"zd({d})")
    return betas, seq


def bound_rows(betas: list, seq: LowerBoundSequence) -> list:
    """(n, beta_n, b_n, provenance) export rows for n >= 1."""
    return [(n, betas[n], float(seq.value_at(n)), seq.provenance_at(n))
            for n in range(1, len(betas))]
