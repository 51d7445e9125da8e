"""Pattern-event counting on directed quotient SAW enumerations.

A *cycle family* attaches to each orbit the vertex-orbit sets of the
shortest orbit-returning self-avoiding walks through it (their length is
the quotient's directed girth, i.e. the classification length).  While a
directed SAW runs, the pattern event with threshold k occurs at position
j whenever some family set attached to the position-j orbit has at least
k of its members visited by the walk — by the whole walk in the
unwindowed form, or by the positions within j±m in the windowed form
(windows truncate at the walk's ends).  The central quantity is the
exact number of n-step directed SAWs with at most r occurrences.

The zero-occurrence, unwindowed counts are the growth series the ratio
certificate consumes, so they get a dedicated pruned kernel: watched
family sets carry live intersection counters, and a branch dies the
moment any counter reaches k.  Counter growth is monotone along
extensions, which is what makes the pruning sound and lets one pass
produce the counts at every depth.  The general (windowed / r > 0)
counter evaluates occurrences per completed walk instead; it is meant
for profile grids at small n.

Event evaluation, and hence every count here, is single-pass
deterministic; worker settings cannot affect the results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exact import Radical
from .quotient import QuotientGraph, TypeReport, classify_type


class EventError(Exception):
    """Cycle-family construction failed an internal consistency check."""


class EventParameterError(ValueError):
    """Event parameters outside their defined range (e.g. k > cycle length)."""


# ---------------------------------------------------------------------------
# Cycle families
# ---------------------------------------------------------------------------

class CycleFamily:
    """Per-orbit families of orbit-key sets of shortest returning SAWs.

    ``sets_at(orbit)`` lists, for walks through that orbit, every set of
    orbits traced by a length-``length`` SAW of the base graph from the
    orbit's representative back to a different vertex of the same orbit.
    Every such set contains the orbit itself and has exactly ``length``
    members (a repeat inside one would yield a directed cycle shorter
    than the girth).  Sets are built from canonical representatives, so
    the family is constant along each orbit — the translation-closure
    property — and they are cached per orbit, which keeps infinite-orbit
    quotients affordable.

    This family contains *every* girth-length directed cycle through the
    orbit that lifts to a SAW.  That can be a superset of a single
    symmetry orbit of cycles; a larger family only makes the event occur
    more often, which only lowers the zero-occurrence counts and keeps
    everything downstream sound.
    """

    def __init__(self, q: QuotientGraph, length: int):
        if length < 1:
            raise EventParameterError("cycle length must be >= 1")
        self.quotient = q
        self.length = length
        self._cache: dict = {}

    def sets_at(self, orbit) -> tuple:
        got = self._cache.get(orbit)
        if got is None:
            got = self._build(orbit)
            self._cache[orbit] = got
        return got

    def _build(self, orbit) -> tuple:
        q, L = self.quotient, self.length
        g = q.base
        rep = q.rep_of(orbit)
        found = set()
        path = [rep]

        def rec():
            if len(path) - 1 == L:
                last = path[-1]
                if last != rep and q.orbit_of(last) == orbit:
                    found.add(frozenset(q.orbit_of(v) for v in path))
                return
            for w in g.expanded_neighbors(path[-1]):
                if w not in path:
                    path.append(w)
                    rec()
                    path.pop()

        rec()
        for s in found:
            if len(s) != L:
                raise EventError(
                    f"family set {sorted(s)!r} at {orbit!r} has "
                    f"{len(s)} orbits, expected {L}")
        return tuple(sorted(found, key=sorted))


def build_cycle_family(q: QuotientGraph, report: Optional[TypeReport] = None,
                       radius: Optional[int] = None) -> CycleFamily:
    """Cycle family at the quotient's classification length.

    ``report`` defaults to a fresh classification; ``radius``, when
    given, caps the accepted cycle length (a guard for callers that can
    only afford a bounded search).
    """
    if report is None:
        report = classify_type(q)
    if radius is not None and report.length > radius:
        raise EventParameterError(
            f"cycle length {report.length} exceeds the radius cap {radius}")
    return CycleFamily(q, report.length)


# ---------------------------------------------------------------------------
# Zero-occurrence series (pruned kernel)
# ---------------------------------------------------------------------------

def event_free_series(q: QuotientGraph, family: CycleFamily, k: int,
                      n_max: int, start=None) -> list:
    """Exact zero-occurrence counts for every depth 0..n_max in one pass.

    Walk state: ``watched`` maps each family set seen so far (anchored at
    any visited orbit) to its live intersection count with the walk;
    ``index`` lists the watched sets through each orbit so arrivals can
    bump exactly the counters they affect.  A node is counted, and its
    subtree explored, only while no counter has reached k.  All mutations
    are undone on departure, stack-fashion.
    """
    if k < 1 or k > family.length:
        raise EventParameterError(
            f"threshold k={k} outside 1..{family.length}")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    start = q.origin_orbit() if start is None else start
    counts = [0] * (n_max + 1)
    watched: dict = {}
    index: dict = {}
    visited: set = set()

    def arrive(o):
        visited.add(o)
        bumped = []
        added = []
        alive = True
        for s in index.get(o, ()):
            c = watched[s] + 1
            watched[s] = c
            bumped.append(s)
            if c >= k:
                alive = False
        for s in family.sets_at(o):
            if s not in watched:
                c = len(s & visited)
                watched[s] = c
                added.append(s)
                for t in s:
                    index.setdefault(t, []).append(s)
                if c >= k:
                    alive = False
        return alive, bumped, added

    def depart(o, bumped, added):
        for s in reversed(added):
            del watched[s]
            for t in s:
                index[t].pop()
        for s in bumped:
            watched[s] -= 1
        visited.discard(o)

    def rec(o, depth, wt):
        alive, bumped, added = arrive(o)
        if alive:
            counts[depth] += wt
            if depth < n_max:
                for t, m in q.drow(o):
                    if t not in visited:
                        rec(t, depth + 1, wt * m)
        depart(o, bumped, added)

    rec(start, 0, 1)
    return counts


# ---------------------------------------------------------------------------
# General windowed / bounded-occurrence counting
# ---------------------------------------------------------------------------

def _occurrences(seq: tuple, family: CycleFamily, k: int,
                 m: Optional[int], stop_after: int) -> int:
    """Occurrence count of the event along one orbit sequence, giving up
    (and returning stop_after + 1) once the count exceeds stop_after."""
    n = len(seq) - 1
    total = 0
    if m is None:
        vis = frozenset(seq)
        for o in seq:
            if any(len(s & vis) >= k for s in family.sets_at(o)):
                total += 1
                if total > stop_after:
                    return total
    else:
        for j, o in enumerate(seq):
            win = frozenset(seq[max(0, j - m): min(n, j + m) + 1])
            if any(len(s & win) >= k for s in family.sets_at(o)):
                total += 1
                if total > stop_after:
                    return total
    return total


def count_with_events(q: QuotientGraph, v0, n: int, family: CycleFamily,
                      k: int, m: Optional[int], r: int) -> int:
    """Exact number of n-step directed SAWs from v0 (an orbit key;
    ``None`` means the origin's orbit) with at most r event occurrences.

    ``m`` is the window half-width; ``m=None`` selects the unwindowed
    event, whose occurrences may involve vertices the walk only reaches
    later.  Occurrences are counted over all n+1 walk positions, so only
    ``r >= n+1`` is guaranteed unconstraining.
    """
    if k < 1 or k > family.length:
        raise EventParameterError(
            f"threshold k={k} outside 1..{family.length}")
    if m is not None and m < 0:
        raise EventParameterError("window half-width m must be >= 0")
    if r < 0:
        raise EventParameterError("occurrence allowance r must be >= 0")
    if n < 0:
        raise ValueError("n must be >= 0")
    start = q.origin_orbit() if v0 is None else v0
    if r == 0 and m is None:
        return event_free_series(q, family, k, n, start=start)[n]

    total = 0
    seq = [start]
    visited = {start}

    def rec(depth, wt):
        nonlocal total
        if depth == n:
            if _occurrences(tuple(seq), family, k, m, r) <= r:
                total += wt
            return
        for t, mult in q.drow(seq[-1]):
            if t not in visited:
                visited.add(t)
                seq.append(t)
                rec(depth + 1, wt * mult)
                seq.pop()
                visited.discard(t)

    rec(0, 1)
    return total


def lambda_upper(q: QuotientGraph, family: CycleFamily, k: int,
                 n: int) -> Radical:
    """Certified upper estimate for the event-avoiding growth rate: the
    exact n-th root of the n-step zero-occurrence count (unwindowed).
    Subadditivity of the log-counts makes every such root an upper bound
    on the limit rate."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = event_free_series(q, family, k, n)[n]
    return Radical.nth_root(c, n)


# ---------------------------------------------------------------------------
# Profile grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EventProfile:
    """Counts over a parameter grid plus derived growth estimates.

    ``grid`` holds ((n, k, m, r), count) entries sorted by key with
    m=None encoded as -1 for orderability; ``lambdas`` holds
    ((k, n), estimate) pairs for the unwindowed zero-occurrence roots.
    """

    quotient_id: str
    cycle_length: int
    n_max: int
    grid: tuple
    lambdas: tuple

    def count(self, n: int, k: int, m: Optional[int], r: int) -> int:
        key = (n, k, -1 if m is None else m, r)
        for kk, v in self.grid:
            if kk == key:
                return v
        raise KeyError(key)


def build_event_profile(q: QuotientGraph, family: CycleFamily, n_max: int,
                        ks=None, ms=(None,), rs=(0,), start=None) -> EventProfile:
    """Evaluate the event counts over a small parameter grid.

    Defaults probe every threshold up to the cycle length, the unwindowed
    event, and the zero-occurrence column, which is the certificate-facing
    slice; pass explicit ``ms``/``rs`` for wider grids.
    """
    ks = tuple(range(1, family.length + 1)) if ks is None else tuple(ks)
    entries = []
    for k in ks:
        for m in ms:
            for r in rs:
                if r == 0 and m is None:
                    series = event_free_series(q, family, k, n_max, start=start)
                    for n in range(n_max + 1):
                        entries.append(((n, k, -1, 0), series[n]))
                else:
                    for n in range(n_max + 1):
                        entries.append(
                            ((n, k, -1 if m is None else m, r),
                             count_with_events(q, start, n, family, k, m, r)))
    lambdas = []
    for k in ks:
        series = event_free_series(q, family, k, n_max, start=start)
        for n in range(1, n_max + 1):
            lambdas.append(((k, n), Radical.nth_root(series[n], n)))
    return EventProfile(q.quotient_id, family.length, n_max,
                        tuple(sorted(entries)), tuple(lambdas))
