"""Exact counting of self-avoiding walks, directed quotient SAWs, and walks.

All counts are exact Python integers.  The engines are:

* a packed-integer depth-first kernel for periodic lattices — vertices are
  encoded as single integers so the visited set is a set of ints and each
  step is one addition;
* a generic keyed kernel for any handle (trees, word graphs, derived
  graphs) and for directed quotient rows, with parallel-edge weights;
* closed forms for acyclic regular handles, where a SAW is exactly a
  non-backtracking walk: sigma_n = d(d-1)**(n-1);
* frontier dynamic programming for (not necessarily self-avoiding) walks.

Parallel runs partition the search by short prefixes and sum exact integer
subtree counts.  Integer addition is associative and commutative, so the
worker count and scheduling cannot change any output; the test-suite
compares 1-worker and 8-worker runs bit for bit.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional

from .exact import Radical
from .graphs import GraphHandle, PeriodicLattice
from .quotient import QuotientGraph


class BudgetExceeded(Exception):
    """Internal signal: node budget exhausted mid-depth."""


# ---------------------------------------------------------------------------
# Result container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkCounts:
    """Exact counts sigma_0..sigma_N from one start vertex.

    ``truncated`` marks a node-budget run that stopped early: ``counts``
    then holds only the depths that were fully enumerated.
    """

    graph_id: str
    start: object
    directed: bool
    counts: tuple
    truncated: bool = False

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def sigma(self, n: int) -> int:
        return self.counts[n]

    def a(self, n: int) -> Radical:
        """Exact upper estimate sigma_n**(1/n) (n >= 1)."""
        if n < 1:
            raise ValueError("a(n) wants n >= 1")
        return Radical.nth_root(self.counts[n], n)

    def a_float(self, n: int) -> float:
        return float(self.a(n))

    def rows(self) -> list:
        """(n, sigma_n, a_n) rows for n >= 1, ready for CSV/JSON export."""
        return [(n, self.counts[n], self.a_float(n))
                for n in range(1, len(self.counts))]


def resolve_workers(workers: Optional[int] = None) -> int:
    """Explicit argument, else the SAW_WORKERS environment variable, else 1."""
    if workers is None:
        env = os.environ.get("SAW_WORKERS", "").strip()
        workers = int(env) if env else 1
    workers = int(workers)
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    return workers


# ---------------------------------------------------------------------------
# Packed-integer lattice kernel
# ---------------------------------------------------------------------------
#
# A lattice vertex (cell, x) with |x_i| bounded by B is encoded as
#     cell + C * sum_i (x_i + B) * W**i        with W = 2B + 1,
# so a neighbor step is the addition of a precomputed integer and the
# visited set is a set of machine-sized ints.  B is derived from the walk
# length and the largest edge offset, which bounds every reachable
# coordinate.

def _lattice_codec(lat: PeriodicLattice, n_max: int):
    maxoff = max((abs(c) for _, _, off, _ in lat.edges for c in off), default=1)
    B = maxoff * max(n_max, 1) + 1
    W = 2 * B + 1
    C = lat.cells
    weights = [C]
    for _ in range(lat.dimension - 1):
        weights.append(weights[-1] * W)

    def encode(v):
        c, x = v
        return c + sum((xi + B) * w for xi, w in zip(x, weights))

    moves = []
    for cell in range(C):
        row = []
        for (tc, delta, m) in lat.slot_table()[cell]:
            add = (tc - cell) + sum(di * w for di, w in zip(delta, weights))
            row.append((add, m))
        moves.append(tuple(row))
    return tuple(moves), encode


def _packed_counts_from(moves, prefix, weight, n_total, simple):
    """Counts for depths len(prefix)-1 .. n_total, starting from an
    already-visited prefix of encoded vertices (the prefix's endpoint is
    counted here, earlier depths are not).

    The default-argument bindings below turn every hot name into a local;
    this loop dominates large lattice enumerations.
    """
    base = len(prefix) - 1
    counts = [0] * (n_total - base + 1)
    counts[0] = weight
    if base == n_total:
        return counts
    visited = set(prefix)
    limit = n_total - base
    ncells = len(moves)
    start = prefix[-1]

    if simple:
        smoves = tuple(tuple(add for add, _m in row) for row in moves)
        if ncells == 1:
            row0 = smoves[0]

            def rec(v, depth, row=row0, visited=visited, counts=counts,
                    limit=limit, vadd=visited.add, vrem=visited.remove):
                nd = depth + 1
                for add in row:
                    w = v + add
                    if w not in visited:
                        counts[nd] += 1
                        if nd < limit:
                            vadd(w)
                            rec(w, nd)
                            vrem(w)
        else:
            def rec(v, depth, smoves=smoves, ncells=ncells, visited=visited,
                    counts=counts, limit=limit, vadd=visited.add,
                    vrem=visited.remove):
                nd = depth + 1
                for add in smoves[v % ncells]:
                    w = v + add
                    if w not in visited:
                        counts[nd] += 1
                        if nd < limit:
                            vadd(w)
                            rec(w, nd)
                            vrem(w)

        rec(start, 0)
        if weight != 1:
            counts = [c * weight if i else c for i, c in enumerate(counts)]
    else:
        def rec(v, depth, wt, moves=moves, ncells=ncells, visited=visited,
                counts=counts, limit=limit, vadd=visited.add,
                vrem=visited.remove):
            nd = depth + 1
            for add, m in moves[v % ncells]:
                w = v + add
                if w not in visited:
                    counts[nd] += wt * m
                    if nd < limit:
                        vadd(w)
                        rec(w, nd, wt * m)
                        vrem(w)

        rec(start, 0, weight)
    return counts


def _packed_task(task, moves=None, n_total=0, simple=True):
    prefix, weight = task
    return _packed_counts_from(moves, prefix, weight, n_total, simple)


def _packed_prefixes(moves, start, pdepth, simple):
    """All SAW prefixes of length pdepth as (encoded-path, weight), plus
    the exact counts for depths 0..pdepth-1."""
    head = [0] * pdepth
    head[0] = 1
    tasks = []
    ncells = len(moves)

    def rec(path, weight, depth):
        v = path[-1]
        for add, m in moves[v % ncells]:
            w = v + add
            if w not in path:
                nw = weight * m
                if depth + 1 == pdepth:
                    tasks.append((path + (w,), nw))
                else:
                    head[depth + 1] += nw
                    rec(path + (w,), nw, depth + 1)

    rec((start,), 1, 0)
    return head, tasks


# ---------------------------------------------------------------------------
# Generic keyed kernels
# ---------------------------------------------------------------------------

def _generic_counts_from(neigh: Callable, prefix: tuple, weight: int,
                         n_total: int, node_cap: Optional[list] = None):
    """Weighted SAW DFS over hashable keys from an already-visited prefix.

    ``neigh(u)`` yields (key, multiplicity) pairs in deterministic order.
    ``node_cap`` is a one-element [remaining] list decremented per
    expanded node; hitting zero raises BudgetExceeded.
    """
    base = len(prefix) - 1
    counts = [0] * (n_total - base + 1)
    counts[0] = weight
    if base == n_total:
        return counts
    visited = set(prefix)
    limit = n_total - base

    def rec(u, depth, wt):
        if node_cap is not None:
            node_cap[0] -= 1
            if node_cap[0] < 0:
                raise BudgetExceeded
        nd = depth + 1
        for w, m in neigh(u):
            if w not in visited:
                counts[nd] += wt * m
                if nd < limit:
                    visited.add(w)
                    rec(w, nd, wt * m)
                    visited.remove(w)

    rec(prefix[-1], 0, weight)
    return counts


def _graph_neigh(g: GraphHandle):
    def neigh(u):
        return [(w, m) for (w, _lab, m) in g.neighbors(u)]
    return neigh


def _quotient_neigh(q: QuotientGraph):
    return q.drow


def _generic_prefixes(neigh, start, pdepth):
    head = [0] * pdepth
    head[0] = 1
    tasks = []

    def rec(path, weight, depth):
        for w, m in neigh(path[-1]):
            if w not in path:
                nw = weight * m
                if depth + 1 == pdepth:
                    tasks.append((path + (w,), nw))
                else:
                    head[depth + 1] += nw
                    rec(path + (w,), nw, depth + 1)

    rec((start,), 1, 0)
    return head, tasks


def _graph_task(task, g=None, n_total=0):
    prefix, weight = task
    return _generic_counts_from(_graph_neigh(g), prefix, weight, n_total)


def _quotient_task(task, q=None, n_total=0):
    prefix, weight = task
    return _generic_counts_from(q.drow, prefix, weight, n_total)


# ---------------------------------------------------------------------------
# Parallel driver
# ---------------------------------------------------------------------------

def _run_split(head_and_tasks, task_fn, n_max: int, pdepth: int, workers: int):
    head, tasks = head_and_tasks
    tail = [0] * (n_max - pdepth + 1)
    if tasks:
        if workers > 1 and len(tasks) > 1:
            chunk = max(1, len(tasks) // (4 * workers))
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(task_fn, tasks, chunksize=chunk))
        else:
            parts = [task_fn(t) for t in tasks]
        for p in parts:
            for i, v in enumerate(p):
                tail[i] += v
    return list(head) + tail


def _choose_pdepth(n_max: int, workers: int = 1) -> int:
    # Deeper prefixes give the pool more tasks to balance; single-worker
    # runs keep the split shallow (it is executed inline either way).
    if workers > 1 and n_max >= 8:
        return 4
    return min(3, n_max)


# ---------------------------------------------------------------------------
# Public counting operations
# ---------------------------------------------------------------------------

def count_saws(g: GraphHandle, v0=None, n_max: int = 0,
               workers: Optional[int] = None,
               max_nodes: Optional[int] = None) -> WalkCounts:
    """Exact sigma_0..sigma_n_max from v0 (default: the origin).

    Parallel edges count as distinct SAWs.  With ``max_nodes`` set, the
    enumeration runs depth by depth under a cumulative node budget and
    returns a truncated result (``truncated=True``) containing the depths
    that completed; without it the fastest kernel for the handle is used.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    v0 = g.origin() if v0 is None else v0
    g.validate_key(v0)
    workers = resolve_workers(workers)

    if max_nodes is not None:
        return _budgeted_saws(g, v0, n_max, max_nodes)

    if g.is_acyclic and n_max >= 1:
        # SAW == non-backtracking walk on a tree: d*(d-1)**(n-1) exactly.
        d = g.degree
        counts = [1] + [d * (d - 1) ** (n - 1) for n in range(1, n_max + 1)]
        return WalkCounts(g.graph_id, v0, False, tuple(counts))

    if isinstance(g, PeriodicLattice):
        moves, encode = _lattice_codec(g, n_max)
        simple = all(m == 1 for row in moves for _, m in row)
        pdepth = _choose_pdepth(n_max, workers)
        if pdepth == 0:
            return WalkCounts(g.graph_id, v0, False, (1,))
        split = _packed_prefixes(moves, encode(v0), pdepth, simple)
        fn = partial(_packed_task, moves=moves, n_total=n_max, simple=simple)
        counts = _run_split(split, fn, n_max, pdepth, workers)
        return WalkCounts(g.graph_id, v0, False, tuple(counts))

    neigh = _graph_neigh(g)
    pdepth = _choose_pdepth(n_max, workers)
    if pdepth == 0:
        return WalkCounts(g.graph_id, v0, False, (1,))
    split = _generic_prefixes(neigh, v0, pdepth)
    fn = partial(_graph_task, g=g, n_total=n_max)
    counts = _run_split(split, fn, n_max, pdepth, workers)
    return WalkCounts(g.graph_id, v0, False, tuple(counts))


def _budgeted_saws(g, v0, n_max, max_nodes) -> WalkCounts:
    # Depth-by-depth so a budget hit still leaves fully-correct shorter
    # depths.  The re-enumeration overhead is the documented price of
    # graceful truncation.
    neigh = _graph_neigh(g)
    done = [1]
    cap = [max_nodes]
    for n in range(1, n_max + 1):
        try:
            c = _generic_counts_from(neigh, (v0,), 1, n, node_cap=cap)
        except BudgetExceeded:
            return WalkCounts(g.graph_id, v0, False, tuple(done), truncated=True)
        done.append(c[n])
    return WalkCounts(g.graph_id, v0, False, tuple(done))


def count_directed_saws(q: QuotientGraph, n_max: int, start=None,
                        workers: Optional[int] = None) -> WalkCounts:
    """Exact directed SAW counts on a quotient from a start orbit
    (default: the origin's orbit).  Parallel directed edges are distinct;
    loops never appear in a SAW of length >= 1."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    start = q.origin_orbit() if start is None else start
    workers = resolve_workers(workers)
    pdepth = _choose_pdepth(n_max, workers)
    if pdepth == 0:
        return WalkCounts(q.quotient_id, start, True, (1,))
    split = _generic_prefixes(q.drow, start, pdepth)
    fn = partial(_quotient_task, q=q, n_total=n_max)
    counts = _run_split(split, fn, n_max, pdepth, workers)
    return WalkCounts(q.quotient_id, start, True, tuple(counts))


def count_walks(g: GraphHandle, v0=None, n_max: int = 0) -> list:
    """All n-step walks (repeats allowed), counting edge multiplicity, by
    frontier dynamic programming.  Used by the walk-correspondence checks."""
    v0 = g.origin() if v0 is None else v0
    g.validate_key(v0)
    counts = [1]
    frontier = {v0: 1}
    for _ in range(n_max):
        nxt: dict = {}
        for u, c in frontier.items():
            for (w, _lab, m) in g.neighbors(u):
                nxt[w] = nxt.get(w, 0) + c * m
        counts.append(sum(nxt.values()))
        frontier = nxt
    return counts


def count_directed_walks(q: QuotientGraph, n_max: int, start=None) -> list:
    """All directed n-step walks on the quotient (loops usable)."""
    start = q.origin_orbit() if start is None else start
    counts = [1]
    frontier = {start: 1}
    for _ in range(n_max):
        nxt: dict = {}
        for o, c in frontier.items():
            for t, m in q.drow(o):
                nxt[t] = nxt.get(t, 0) + c * m
        counts.append(sum(nxt.values()))
        frontier = nxt
    return counts
