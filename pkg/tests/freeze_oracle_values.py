"""Run the oracles on the standard fixtures and print the constants that
the test files freeze.  Run from the repository root:

    PYTHONPATH=src python tests/freeze_oracle_values.py

This script is how the [frozen] dictionaries in the test files were
produced; keeping it next to the oracles makes the provenance of every
magic number reproducible.
"""

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
sys.path.insert(0, os.path.dirname(__file__))

from sawkit.graphs import catalog, augment
from sawkit.quotient import build_quotient, sublattice_action, tree_action
from oracles import (naive_saw_counts, naive_walk_counts,
                     naive_directed_saw_counts, naive_bridge_counts,
                     naive_family_sets, naive_event_count)


def show(label, values):
    print(f"{label} = {values}")


def main():
    z1 = catalog("zd(1)")
    z2 = catalog("zd(2)")
    lad = catalog("ladder")
    so = catalog("square-octagon")
    t3 = catalog("tree(3)")
    z2d = augment(z2, (z2.origin(), (0, (1, 1))))

    show("SAW_Z2_10", naive_saw_counts(z2, z2.origin(), 10))
    show("SAW_LADDER_10", naive_saw_counts(lad, lad.origin(), 10))
    show("SAW_SQOCT_10", naive_saw_counts(so, so.origin(), 10))
    show("SAW_Z2DIAG_8", naive_saw_counts(z2d, z2d.origin(), 8))
    show("SAW_TREE3_8", naive_saw_counts(t3, t3.origin(), 8))

    show("BRIDGE_Z1_8", naive_bridge_counts(1, 8))
    show("BRIDGE_Z2_10", naive_bridge_counts(2, 10))

    q3 = build_quotient(z1, sublattice_action([[3]]))
    show("DSAW_Z1MOD3_8", naive_directed_saw_counts(q3, 8))
    fam3 = {o: naive_family_sets(q3, 3, o) for o in q3.orbits}
    show("FAMILY_Z1MOD3", fam3)
    grid = {}
    for n in range(0, 5):
        for k in (1, 2, 3):
            for m in (None, 0, 1, 2, 3):
                for r in (0, 1, 2):
                    key = (n, k, "inf" if m is None else m, r)
                    grid[key] = naive_event_count(
                        q3, lambda o: fam3[o], n, k, m, r)
    show("EVENTS_Z1MOD3", grid)

    q22 = build_quotient(z2, sublattice_action([[2, 0], [0, 2]]))
    show("DSAW_Z2MOD22_8", naive_directed_saw_counts(q22, 8))
    fam22 = {o: naive_family_sets(q22, 2, o) for o in q22.orbits}
    show("FAMILY_Z2MOD22", fam22)
    show("EV22_0E2", [naive_event_count(q22, lambda o: fam22[o], n, 2, None, 0)
                      for n in range(0, 7)])

    te = catalog("tree-with-end(3)")
    qcs = build_quotient(te, tree_action("child-swap"))
    show("DSAW_TREEEND_10", naive_directed_saw_counts(qcs, 10))

    qso = build_quotient(so, sublattice_action([[1, -1]]))
    show("DSAW_SQOCT_LADDERQ_10", naive_directed_saw_counts(qso, 10))
    o0 = qso.origin_orbit()
    show("FAMILY_SQOCT_ORIGIN", naive_family_sets(qso, 4, o0))
    show("EVSQOCT_0E4_8",
         [naive_event_count(qso, lambda o: naive_family_sets(qso, 4, o),
                            n, 4, None, 0) for n in range(0, 9)])

    show("WALKS_Z2_6", naive_walk_counts(z2, z2.origin(), 6))


if __name__ == "__main__":
    main()
