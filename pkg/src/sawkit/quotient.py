"""Directed quotient multigraphs of vertex-transitive graphs.

A subgroup of the symmetry group partitions the vertices into orbits; the
quotient is the directed multigraph on orbits with as many edges from
orbit A to orbit B as any one vertex of A has neighbors in B (loops
allowed).  That count does not depend on the chosen vertex, which is
checked — not assumed — by :func:`check_representative_independence`.

Two kinds of actions are supported, covering every construction the
package catalogs:

* **Translation sublattices** on periodic lattices: an integer matrix
  whose rows generate a sublattice L of Z^d.  Orbit keys are canonical
  coset representatives computed by Hermite-normal-form reduction.  Full
  rank gives finitely many orbits; deficient rank gives infinitely many,
  supported lazily (orbit keys and adjacency rows on demand).
* **End-fixing tree actions** on :class:`~sawkit.graphs.TreeWithEnd`:
  ``child-swap`` collapses each horocyclic level to one orbit (infinitely
  many orbits, lazily), and ``child-swap+shift:k`` further identifies
  levels modulo k (finitely many).

Walks on the base graph correspond one-to-one with directed walks on the
quotient once edge slots are numbered consistently; :func:`lift` and
:func:`project` implement the two directions of that correspondence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import (GraphHandle, GraphError, PeriodicLattice, TreeWithEnd,
                     ball, ball_with_dist)


class QuotientError(GraphError):
    pass


class InvalidActionError(QuotientError):
    pass


class SymmetryRequiredError(QuotientError):
    pass


class InfiniteOrbitError(QuotientError):
    pass


class InvalidLabelError(QuotientError):
    pass


# ---------------------------------------------------------------------------
# Hermite normal form over Z (row style), exact integers
# ---------------------------------------------------------------------------

def hermite_rows(rows: tuple, d: int) -> tuple:
    """Row-style Hermite normal form of the lattice generated by ``rows``.

    Returns echelon rows with positive pivots in strictly increasing
    pivot columns; entries above each pivot are reduced into [0, pivot).
    Works for any rank, small dense integer matrices, no floats.
    """
    work = [list(r) for r in rows if any(r)]
    hnf: list = []
    for col in range(d):
        pivots = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not pivots:
            work = rest
            continue
        p = pivots[0]
        residuals = []
        for r in pivots[1:]:
            # Combine p and r so that r's entry in `col` becomes zero and
            # p's becomes gcd(p[col], r[col])  (Euclid on whole rows; the
            # names p and r may swap objects, so collect the zeroed row by
            # name, not by position in `pivots`).
            while r[col] != 0:
                if abs(p[col]) > abs(r[col]):
                    p, r = r, p
                q = r[col] // p[col]
                for t in range(d):
                    r[t] -= q * p[t]
            residuals.append(r)
        if p[col] < 0:
            p = [-x for x in p]
        hnf.append(p)
        work = [r for r in residuals if any(r)] + rest
    # Reduce entries above each pivot into [0, pivot).
    piv_cols = [next(c for c in range(d) if row[c]) for row in hnf]
    for j in range(len(hnf)):
        for i in range(j):
            q = hnf[i][piv_cols[j]] // hnf[j][piv_cols[j]]
            if q:
                hnf[i] = [a - q * b for a, b in zip(hnf[i], hnf[j])]
    return tuple(tuple(r) for r in hnf), tuple(piv_cols)


def reduce_mod_lattice(x: tuple, hnf: tuple, piv_cols: tuple) -> tuple:
    """Canonical representative of x modulo the HNF lattice: after
    reduction 0 <= x[pivot_j] < pivot_j's value for every row, which picks
    one point per coset (pivot columns are processed in increasing order,
    so earlier pivots stay reduced)."""
    x = list(x)
    for row, pc in zip(hnf, piv_cols):
        q = x[pc] // row[pc]
        if q:
            for t in range(len(x)):
                x[t] -= q * row[t]
    return tuple(x)


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupAction:
    """A sublattice of translations or a named tree action.

    ``kind`` is "sublattice" (with ``rows``) or "catalog" (with ``name``,
    one of ``child-swap`` / ``child-swap+shift:k``).  Use the
    :func:`sublattice_action` / :func:`tree_action` constructors.
    """

    kind: str
    rows: tuple = ()
    name: str = ""

    def action_id(self) -> str:
        if self.kind == "sublattice":
            return "[" + ";".join(" ".join(str(x) for x in r)
                                  for r in self.rows) + "]"
        return self.name


def sublattice_action(rows) -> SubgroupAction:
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if not rows or all(not any(r) for r in rows):
        raise InvalidActionError("sublattice action is trivial (no nonzero row)")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise InvalidActionError("sublattice rows have unequal lengths")
    return SubgroupAction(kind="sublattice", rows=rows)


def tree_action(name: str) -> SubgroupAction:
    name = name.strip()
    if name == "child-swap":
        return SubgroupAction(kind="catalog", name=name)
    if name.startswith("child-swap+shift:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            k = 0
        if k >= 1:
            return SubgroupAction(kind="catalog", name=f"child-swap+shift:{k}")
    raise InvalidActionError(f"unknown tree action {name!r}")


# ---------------------------------------------------------------------------
# The quotient graph
# ---------------------------------------------------------------------------

class QuotientGraph:
    """Directed multigraph of orbits, built by :func:`build_quotient`.

    Orbit keys are canonical and hashable: reduced (cell, offset) pairs
    for sublattice actions, integers (levels, or levels mod k) for the
    tree actions.  ``finite`` tells whether the orbit set is finite; when
    it is, ``orbits`` lists all keys and ``orbit_count`` their number.
    Adjacency rows are cached on demand either way, so infinite-orbit
    quotients cost only what is actually probed.
    """

    def __init__(self, base: GraphHandle, action: SubgroupAction):
        self.base = base
        self.action = action
        self.quotient_id = f"{base.graph_id}/{action.action_id()}"

        if action.kind == "sublattice":
            if not isinstance(base, PeriodicLattice):
                raise InvalidActionError(
                    "sublattice actions require a periodic lattice")
            if any(len(r) != base.dimension for r in action.rows):
                raise InvalidActionError(
                    f"sublattice rows must have length {base.dimension}")
            self._hnf, self._piv = hermite_rows(action.rows, base.dimension)
            rank = len(self._hnf)
            self.finite = rank == base.dimension
            if self.finite:
                diag = [self._hnf[j][self._piv[j]] for j in range(rank)]
                self.orbit_count: Optional[int] = base.cells
                for v in diag:
                    self.orbit_count *= v
            else:
                self.orbit_count = None
            self._mode = "sublattice"
        else:
            if not isinstance(base, TreeWithEnd):
                raise InvalidActionError(
                    "catalog tree actions require a tree-with-end graph")
            if action.name == "child-swap":
                self.finite, self.orbit_count = False, None
                self._shift = 0
            else:
                self._shift = int(action.name.split(":", 1)[1])
                self.finite, self.orbit_count = True, self._shift
            self._mode = "tree"

        self._rows: dict = {}       # orbit -> tuple of (target_orbit, mult)
        self.orbits: Optional[tuple] = None
        if self.finite:
            self.orbits = self._enumerate_orbits()
            for o in self.orbits:       # populate rows + degree invariant
                row = self.drow(o)
                out = sum(m for _, m in row)
                if out != base.degree:
                    raise QuotientError(
                        f"orbit {o!r} has out-multiplicity {out} != degree")

    # -- orbit machinery -----------------------------------------------------

    def orbit_of(self, v):
        if self._mode == "sublattice":
            c, x = v
            return (c, reduce_mod_lattice(x, self._hnf, self._piv))
        lvl = self.base.level(v)
        return lvl % self._shift if self._shift else lvl

    def rep_of(self, o):
        """The canonical representative vertex of an orbit key."""
        if self._mode == "sublattice":
            return o
        return (o, ())

    def _enumerate_orbits(self) -> tuple:
        if self._mode == "tree":
            return tuple(range(self._shift))
        # Full-rank sublattice: canonical representatives form the box
        # prod_j [0, pivot_j) over the pivot columns (all columns at full
        # rank), one per coset.
        diag = [self._hnf[j][self._piv[j]] for j in range(len(self._hnf))]
        offsets = [()]
        for dv in diag:
            offsets = [o + (t,) for o in offsets for t in range(dv)]
        return tuple(sorted((c, off)
                            for c in range(self.base.cells)
                            for off in offsets))

    def drow(self, o) -> tuple:
        """Directed adjacency row: sorted tuple of (target_orbit, mult),
        loops included, computed from the canonical representative."""
        row = self._rows.get(o)
        if row is None:
            counts: dict = {}
            for w in self.base.expanded_neighbors(self.rep_of(o)):
                t = self.orbit_of(w)
                counts[t] = counts.get(t, 0) + 1
            row = tuple(sorted(counts.items()))
            self._rows[o] = row
        return row

    def dmult(self, o, t) -> int:
        """Number of directed edges o -> t, i.e. |neighbors of a vertex of
        o lying in t| (0 if none)."""
        for tgt, m in self.drow(o):
            if tgt == t:
                return m
        return 0

    def loops(self, o) -> int:
        return self.dmult(o, o)

    def origin_orbit(self):
        return self.orbit_of(self.base.origin())

    # -- serialization -------------------------------------------------------

    def to_text(self, probe_radius: int = 3) -> str:
        """Deterministic structured-text dump (orbit list, multiplicity
        rows, loop counts).  Infinite-orbit quotients dump the rows of the
        orbits within ``probe_radius`` of the origin orbit's representative."""
        if self.finite:
            orbits = self.orbits
            header = f"orbits {self.orbit_count}"
        else:
            probe = ball(self.base, self.base.origin(), probe_radius)
            orbits = tuple(sorted({self.orbit_of(v) for v in probe}))
            header = f"orbits infinite (showing radius-{probe_radius} probe)"
        lines = [f"quotient {self.quotient_id}", header]
        for o in orbits:
            row = " ".join(f"{t!r}:{m}" for t, m in self.drow(o))
            lines.append(f"  {o!r} -> {row}")
        lines.append("loops " + " ".join(
            f"{o!r}:{self.loops(o)}" for o in orbits if self.loops(o)))
        return "\n".join(lines)


def build_quotient(g: GraphHandle, action: SubgroupAction) -> QuotientGraph:
    """Validate the action against g and construct the quotient.

    Sublattice generators are checked to be symmetries on a radius-2 ball
    (they always are for periodic lattices — the check guards against
    mismatched graph kinds and malformed rows).
    """
    q = QuotientGraph(g, action)
    if action.kind == "sublattice":
        for t in action.rows:
            if not any(t):
                continue
            for u in ball(g, g.origin(), 2):
                c, x = u
                tu = (c, tuple(a + b for a, b in zip(x, t)))
                nb_t = sorted((tc, tuple(a + b for a, b in zip(xx, t)))
                              for tc, xx in g.expanded_neighbors(u))
                if nb_t != sorted(g.expanded_neighbors(tu)):
                    raise InvalidActionError(
                        f"generator {t} does not preserve edges at {u}")
    return q


# ---------------------------------------------------------------------------
# Soundness checks
# ---------------------------------------------------------------------------

def check_representative_independence(g: GraphHandle, action: SubgroupAction,
                                      q: QuotientGraph, radius: int) -> bool:
    """Does every vertex within ``radius`` of the origin see the same
    per-orbit neighbor multiplicities as its orbit's canonical
    representative?  True for genuine symmetry actions; False flags a
    corrupted adjacency table or a non-symmetry."""
    for u in ball(g, g.origin(), radius):
        counts: dict = {}
        for w in g.expanded_neighbors(u):
            t = q.orbit_of(w)
            counts[t] = counts.get(t, 0) + 1
        if tuple(sorted(counts.items())) != q.drow(q.orbit_of(u)):
            return False
    return True


def check_symmetry(q: QuotientGraph, probe_radius: int = 4) -> bool:
    """Is the directed multiplicity table symmetric (mult(a->b) ==
    mult(b->a) for all orbit pairs)?

    Finite quotients are checked exhaustively.  Infinite-orbit quotients
    are probed on the orbits within ``probe_radius`` of the origin — a
    relaxation: a False is definitive, a True is a radius-limited witness.
    """
    if q.finite:
        orbits = q.orbits
    else:
        probe = ball(q.base, q.base.origin(), probe_radius)
        orbits = tuple(sorted({q.orbit_of(v) for v in probe}))
    sample = set(orbits)
    for o in orbits:
        for t, m in q.drow(o):
            if t in sample and q.dmult(t, o) != m:
                return False
    return True


def directed_girth(q: QuotientGraph) -> int:
    """Length of the shortest directed cycle of the quotient, where a
    cycle must be the projection of a self-avoiding base-graph walk.

    A pair of mutually adjacent orbits always gives a raw directed
    2-cycle, but when its only lifts backtrack along the same base edge
    it says nothing about the walk structure; such cycles are excluded.
    Loops count as length 1.  Equals ``classify_type(q).length``.
    """
    return classify_type(q).length


# ---------------------------------------------------------------------------
# Type classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeReport:
    """Classification of the action by its shortest orbit-connecting walk.

    ``witness`` is a shortest self-avoiding walk in the base graph from
    the origin-orbit representative to a *different* vertex of the same
    orbit; ``length`` is its step count; ``type_`` is 1, 2 or 3 according
    to length 1, 2 or >= 3.  The length equals the shortest directed
    cycle length of the quotient.
    """

    type_: int
    witness: tuple
    length: int


_TYPE_SEARCH_CAP = 64


def classify_type(q: QuotientGraph) -> TypeReport:
    """Breadth-first search from the origin representative out to the
    nearest distinct vertex of the same orbit; a shortest path to it is
    automatically self-avoiding."""
    g = q.base
    v0 = q.rep_of(q.origin_orbit())
    o0 = q.orbit_of(v0)
    parent = {v0: None}
    frontier = [v0]
    for depth in range(1, _TYPE_SEARCH_CAP + 1):
        nxt = []
        for u in frontier:
            for w in set(g.expanded_neighbors(u)):
                if w in parent:
                    continue
                parent[w] = u
                if q.orbit_of(w) == o0:
                    path = [w]
                    cur = u
                    while cur is not None:
                        path.append(cur)
                        cur = parent[cur]
                    walk = tuple(reversed(path))
                    t = 1 if depth == 1 else (2 if depth == 2 else 3)
                    return TypeReport(type_=t, witness=walk, length=depth)
                nxt.append(w)
        frontier = nxt
    raise QuotientError(
        f"no orbit-connecting walk within {_TYPE_SEARCH_CAP} steps; "
        "is the action trivial?")


# ---------------------------------------------------------------------------
# Undirected derivations
# ---------------------------------------------------------------------------

class DerivedSimpleGraph(GraphHandle):
    """Simple undirected graph on orbit keys: one edge wherever any
    directed multiplicity is positive, loops dropped.

    Works lazily on infinite-orbit quotients: undirected adjacency of an
    orbit is exactly the set of orbits its representative's neighbors
    fall into (positivity of directed multiplicities is symmetric even
    when the counts are not).  Degrees may vary between orbits for wild
    quotients; ``degree`` reports the origin orbit's degree.
    """

    def __init__(self, q: QuotientGraph):
        self.quotient = q
        self.graph_id = f"{q.quotient_id}|simple"
        self.is_simple = True
        self.is_acyclic = False
        self.degree = len(self.expanded_neighbors(self.origin()))

    def origin(self):
        return self.quotient.origin_orbit()

    def validate_key(self, v) -> None:
        try:
            ok = self.quotient.orbit_of(self.quotient.rep_of(v)) == v
        except Exception:
            ok = False
        if not ok:
            raise GraphError(f"not an orbit key: {v!r}")

    def expanded_neighbors(self, v) -> tuple:
        return tuple(sorted(t for t, m in self.quotient.drow(v) if t != v))

    def key_str(self, v) -> str:
        return repr(v)


class DerivedMultigraph(GraphHandle):
    """Undirected multigraph on orbit keys retaining multiplicities.

    Defined only for finite quotients whose multiplicity table is
    symmetric (so "the" undirected multiplicity between two orbits is
    well defined).  Loop counts are retained as-is on each vertex; the
    degree equals the base graph's degree, counting loops once.
    """

    def __init__(self, q: QuotientGraph):
        if not q.finite:
            raise InfiniteOrbitError(
                "multiplicity-retaining derivation needs a finite quotient")
        if not check_symmetry(q):
            raise SymmetryRequiredError(
                "multiplicity-retaining derivation needs a symmetric quotient")
        self.quotient = q
        self.graph_id = f"{q.quotient_id}|multi"
        self.is_simple = all(m == 1 and t != o
                             for o in q.orbits for t, m in q.drow(o))
        self.is_acyclic = False
        self.degree = q.base.degree

    def origin(self):
        return self.quotient.origin_orbit()

    def validate_key(self, v) -> None:
        if v not in set(self.quotient.orbits):
            raise GraphError(f"not an orbit key: {v!r}")

    def expanded_neighbors(self, v) -> tuple:
        out = []
        for t, m in self.quotient.drow(v):
            out.extend([t] * m)
        return tuple(out)

    def key_str(self, v) -> str:
        return repr(v)


def derive_undirected(q: QuotientGraph, keep_multiplicity: bool) -> GraphHandle:
    """The undirected shadow of a quotient: simple, or with multiplicities
    retained (the latter requires a finite symmetric quotient)."""
    return DerivedMultigraph(q) if keep_multiplicity else DerivedSimpleGraph(q)


# ---------------------------------------------------------------------------
# Lift / project: the walk correspondence
# ---------------------------------------------------------------------------
#
# A walk on the base graph is (vertices, slots): vertices[0..n] and, for
# each step, the index of the edge used in the expanded neighbor list of
# the vertex it leaves.  A directed walk on the quotient is
# (start_orbit, steps) with steps = ((target_orbit, parallel_index), ...):
# parallel_index ranks the edge among the slots of the current vertex
# that land in target_orbit.  For a fixed base vertex these two
# numberings determine each other slot-by-slot, which is what makes the
# correspondence a bijection on n-step walks.

def project(q: QuotientGraph, vertices: tuple, slots: tuple) -> tuple:
    """Project a base-graph walk to a directed quotient walk."""
    if len(vertices) != len(slots) + 1:
        raise InvalidLabelError("walk wants len(vertices) == len(slots)+1")
    steps = []
    for u, s, w in zip(vertices, slots, vertices[1:]):
        exp = q.base.expanded_neighbors(u)
        if not (0 <= s < len(exp)) or exp[s] != w:
            raise InvalidLabelError(f"slot {s} at {u!r} does not reach {w!r}")
        t = q.orbit_of(w)
        rank = sum(1 for s2 in range(s) if q.orbit_of(exp[s2]) == t)
        steps.append((t, rank))
    return (q.orbit_of(vertices[0]), tuple(steps))


def lift(q: QuotientGraph, base_vertex, dwalk: tuple) -> tuple:
    """Lift a directed quotient walk to the base-graph walk from
    ``base_vertex`` using the same slot numbering; inverse of
    :func:`project` for walks from that vertex."""
    start_orbit, steps = dwalk
    if q.orbit_of(base_vertex) != start_orbit:
        raise InvalidLabelError(
            f"base vertex {base_vertex!r} is not in orbit {start_orbit!r}")
    vertices = [base_vertex]
    slots = []
    for (t, rank) in steps:
        u = vertices[-1]
        exp = q.base.expanded_neighbors(u)
        cands = [i for i, w in enumerate(exp) if q.orbit_of(w) == t]
        if rank >= len(cands):
            raise InvalidLabelError(
                f"parallel index {rank} out of range at {u!r} -> {t!r}")
        s = cands[rank]
        slots.append(s)
        vertices.append(exp[s])
    return tuple(vertices), tuple(slots)
