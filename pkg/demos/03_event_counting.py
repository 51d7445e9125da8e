"""Pattern events: counting directed SAWs that avoid cycle patterns.

    python3 demos/03_event_counting.py

Covers: cycle families, windowed and unwindowed event counts, the
zero-occurrence series, and the certified growth estimates they yield.
"""

from sawkit import (build_cycle_family, build_event_profile, build_quotient,
                    catalog, count_with_events, event_free_series,
                    lambda_upper, sublattice_action)

# ---------------------------------------------------------------------------
# A cycle family lists, for each orbit, the orbit sets of the shortest
# walks that reconnect the orbit to itself.  An "event" at a walk
# position: some family set of that position's orbit has at least k of
# its members among the visited (or windowed) orbits.
# ---------------------------------------------------------------------------
z1 = catalog("zd(1)")
q3 = build_quotient(z1, sublattice_action([[3]]))
fam3 = build_cycle_family(q3)
print("=== the line modulo 3 ===")
print("cycle length:", fam3.length)
for o in q3.orbits:
    print(f"  family at {o}: {[sorted(s) for s in fam3.sets_at(o)]}")

print("\nzero-occurrence series by threshold k:")
for k in (1, 2, 3):
    print(f"  k={k}:", event_free_series(q3, fam3, k, 6))
print("k=1 dies immediately: every walk stands on its own family set.")

# ---------------------------------------------------------------------------
# Windows and allowances.  A half-width-m window only sees 2m+1
# positions; the unwindowed event (m=None) sees the whole walk and is
# therefore the easiest to trigger.  The allowance r tolerates up to r
# occurrences.
# ---------------------------------------------------------------------------
so = catalog("square-octagon")
qso = build_quotient(so, sublattice_action([[1, -1]]))
fam4 = build_cycle_family(qso)
print("\n=== square-octagon / diagonal quotient, k = 3, n = 6 ===")
print(f"{'window m':>10} {'r=0':>6} {'r=1':>6} {'r=2':>6}")
for m in (0, 1, 2, None):
    row = [count_with_events(qso, None, 6, fam4, 3, m, r) for r in (0, 1, 2)]
    label = "none" if m is None else str(m)
    print(f"{label:>10} {row[0]:>6} {row[1]:>6} {row[2]:>6}")
print("rows shrink downward (wider window), grow rightward (more slack)")

# ---------------------------------------------------------------------------
# The n-th root of an unwindowed zero-occurrence count is a certified
# upper estimate for the event-avoiding growth rate, by subadditivity.
# ---------------------------------------------------------------------------
print("\n=== certified event-avoiding growth estimates ===")
series = event_free_series(qso, fam4, 4, 12)
print("k=4 zero-occurrence series:", series)
for n in (4, 8, 12):
    lam = lambda_upper(qso, fam4, 4, n)
    print(f"  lambda upper bound at n={n}: {float(lam):.6f}")

# The profile grid bundles the whole (n, k, m, r) table for export.
prof = build_event_profile(q3, fam3, n_max=4)
print("\nprofile grid entries for the line modulo 3:",
      len(prof.grid), "counts,", len(prof.lambdas), "growth estimates")
