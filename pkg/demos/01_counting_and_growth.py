"""Exact SAW counting and growth-rate estimates, end to end.

Run from the repository root after installing the package:

    python3 demos/01_counting_and_growth.py

Covers: the graph catalog, exact series with their n-th-root growth
estimates, budgeted (truncated) runs, and edge augmentation.
"""

from sawkit import CATALOG_NAMES, augment, catalog, count_saws

PHI = (1 + 5 ** 0.5) / 2

print("=== built-in graphs ===")
for name in CATALOG_NAMES:
    g = catalog(name)
    print(f"  {name:<18} degree {g.degree}  "
          f"{'simple' if g.is_simple else 'multigraph'}")

# ---------------------------------------------------------------------------
# The ladder: a graph whose growth constant is the golden ratio.  The
# estimates a_n = sigma_n**(1/n) are upper bounds for every n and sink
# toward phi from above.
# ---------------------------------------------------------------------------
print("\n=== ladder SAW series (growth constant = golden ratio) ===")
ladder = catalog("ladder")
wc = count_saws(ladder, n_max=20)
print(f"{'n':>3} {'sigma_n':>10} {'a_n':>10}")
for n in (1, 2, 4, 8, 12, 16, 20):
    print(f"{n:>3} {wc.sigma(n):>10} {wc.a_float(n):>10.6f}")
print(f"    a_20 - phi = {wc.a_float(20) - PHI:.6f}  (always >= 0)")

# ---------------------------------------------------------------------------
# Node budgets: a truncated run still returns exact counts for every
# depth that completed, and says so.
# ---------------------------------------------------------------------------
print("\n=== square lattice under a node budget ===")
z2 = catalog("zd(2)")
budgeted = count_saws(z2, n_max=14, max_nodes=50_000)
print(f"requested n_max=14, completed n_max={budgeted.n_max} "
      f"(truncated={budgeted.truncated})")
print("counts:", list(budgeted.counts))

# ---------------------------------------------------------------------------
# Augmentation: welding a diagonal chord orbit onto every square raises
# the count at every length - strictly, already at desk scale.
# ---------------------------------------------------------------------------
print("\n=== adding a diagonal to each square of the lattice ===")
z2diag = augment(z2, (z2.origin(), (0, (1, 1))))
print("augmented graph:", z2diag.graph_id, "degree", z2diag.degree)
plain = count_saws(z2, n_max=8)
rich = count_saws(z2diag, n_max=8)
print(f"{'n':>3} {'plain':>8} {'augmented':>10}")
for n in range(1, 9):
    marker = "<" if plain.sigma(n) < rich.sigma(n) else "!!"
    print(f"{n:>3} {plain.sigma(n):>8} {rich.sigma(n):>10}  {marker}")
print("strict at every length; the augmented growth estimate is",
      f"{rich.a_float(8):.4f} vs {plain.a_float(8):.4f}")
