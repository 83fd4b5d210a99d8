"""Geometry of a multiplet: rank, Euler number, grading and the pairing.

Run from the repository root:  python demos/01_geometry_and_pairing.py
"""

from orbifrob import Multiplet, build_geometry, classify, format_label

for orders in ("2,2,2", "2,3,4", "2,3,7", "2,2,5"):
    geom = build_geometry(orders)
    print(f"multiplet ({orders}):  rank mu = {geom.mu},  chi = {geom.chi},  "
          f"class = {classify(geom.multiplet).value}")

print()
geom = build_geometry("2,3,4")
print("canonical labels:", " ".join(format_label(lab) for lab in geom.labels))
print("degrees:         ", " ".join(str(geom.degree(lab)) for lab in geom.labels))

print()
print("pairing matrix (block anti-diagonal in each sector):")
width = 5
header = " ".join(f"{format_label(v):>{width}}" for v in geom.labels)
print(f"{'':>{width}} {header}")
for u in geom.labels:
    row = " ".join(f"{str(geom.pairing(u, v)):>{width}}" for v in geom.labels)
    print(f"{format_label(u):>{width}} {row}")

print()
print("the inverse pairing pairs each label with exactly one partner:")
for sigma, tau, w in geom.eta_inverse_pairs:
    print(f"  eta^({format_label(sigma)},{format_label(tau)}) = {w}")
